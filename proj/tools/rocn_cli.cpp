// Command-line front end: constructs ROCN matrices, certifies their
// self-testing properties, and verifies the canonical strategy.
//
// Exit codes: 0 success, 2 input error, 3 matrix fails ROCN validation,
// 4 strategy verification exceeded tolerance.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rocn/rocn.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitVerification = 4;

int construction_cap() {
  if (const char* env = std::getenv("ROCN_MAX_M")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 2) {
        return cap;
      }
    } catch (const std::exception&) {
      // fall through to the default
    }
    std::cerr << "warning: ignoring invalid ROCN_MAX_M value '" << env
              << "'\n";
  }
  return rocn::kConstructionCap;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw rocn::ParseError("cannot open output file '" + out_path + "'");
  }
  out << text;
}

int cmd_construct(int m, bool omit_identity, const std::string& out_path) {
  const rocn::RocnMatrix h =
      rocn::build_self_testing_matrix(m, !omit_identity, construction_cap());
  emit(rocn::matrix_to_json(h), out_path);
  return kExitOk;
}

int cmd_preset(const std::string& name, const std::string& out_path) {
  const rocn::RocnMatrix h = rocn::preset(name);
  emit(rocn::matrix_to_json(h), out_path);
  return kExitOk;
}

int cmd_certify(const std::string& matrix_path, double tolerance,
                const std::string& format, const std::string& out_path) {
  const rocn::RocnMatrix h = rocn::read_matrix_file(matrix_path);
  const rocn::CertificationReport report = rocn::certify(h, tolerance);
  if (format == "json") {
    emit(rocn::report_to_json(report).dump(2) + "\n", out_path);
  } else {
    emit(rocn::report_to_text(report), out_path);
  }
  // Self-testing verdicts are findings, not failures; only ROCN validity
  // drives the exit code.
  return report.rocn.valid ? kExitOk : kExitInvalid;
}

int cmd_verify(const std::string& matrix_path, double tolerance) {
  const rocn::RocnMatrix h = rocn::read_matrix_file(matrix_path);
  if (h.m() % 2 != 0) {
    std::cerr << "error: verify requires an even number of rows, got m = "
              << h.m() << "\n";
    return kExitInput;
  }
  // No separate ROCN validation here: a matrix violating the column
  // normalization shows up as an involution residual of Bob's observables
  // and fails through the tolerance gate below.
  const rocn::VerificationResult result = rocn::verify_strategy(h, tolerance);
  std::cout << std::setprecision(15);
  std::cout << "canonical_bell_value = " << result.bell << "\n";
  std::cout << "quantum_bound = " << rocn::quantum_bound(h) << "\n";
  std::cout << "bell_value_deviation = " << result.deviation << "\n";
  std::cout << "residual.anticommutation = " << result.residuals.anticommutation
            << "\n";
  std::cout << "residual.involution = " << result.residuals.involution << "\n";
  std::cout << "residual.hermiticity = " << result.residuals.hermiticity
            << "\n";
  std::cout << "residual.probability_normalization = "
            << result.residuals.probability_normalization << "\n";
  std::cout << "tolerance = " << tolerance << "\n";
  const bool ok = result.within(tolerance);
  std::cout << "verdict = " << (ok ? "pass" : "fail") << "\n";
  return ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ROCN Bell inequality construction and certification"};
  app.require_subcommand(1);

  int m = 0;
  bool omit_identity = false;
  double tolerance = rocn::kDefaultTolerance;
  std::string out_path;
  std::string format = "json";
  std::string matrix_path;
  std::string preset_name;

  CLI::App* construct =
      app.add_subcommand("construct", "Build the m x m(m+1) self-testing matrix");
  construct->add_option("--m", m, "Number of rows (even)")->required();
  construct->add_flag("--omit-identity-block", omit_identity,
                      "Drop the leading identity block (m x m^2 result)");
  construct->add_option("--out", out_path, "Output file (default: stdout)");

  CLI::App* preset_cmd = app.add_subcommand("preset", "Emit a named matrix");
  preset_cmd->add_option("name", preset_name, "chsh or elegant")->required();
  preset_cmd->add_option("--out", out_path, "Output file (default: stdout)");

  CLI::App* certify_cmd =
      app.add_subcommand("certify", "Full certification report for a matrix");
  certify_cmd->add_option("matrix", matrix_path, "Matrix JSON file")
      ->required();
  certify_cmd->add_option("--tolerance", tolerance, "Validation tolerance");
  certify_cmd->add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  certify_cmd->add_option("--out", out_path, "Output file (default: stdout)");

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Check canonical-strategy attainment of the quantum bound");
  verify_cmd->add_option("matrix", matrix_path, "Matrix JSON file")
      ->required();
  verify_cmd->add_option("--tolerance", tolerance, "Residual tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (construct->parsed()) {
      return cmd_construct(m, omit_identity, out_path);
    }
    if (preset_cmd->parsed()) {
      return cmd_preset(preset_name, out_path);
    }
    if (certify_cmd->parsed()) {
      return cmd_certify(matrix_path, tolerance, format, out_path);
    }
    if (verify_cmd->parsed()) {
      return cmd_verify(matrix_path, tolerance);
    }
  } catch (const rocn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

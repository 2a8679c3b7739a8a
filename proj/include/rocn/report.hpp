#pragma once

#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rocn/core.hpp"
#include "rocn/matrix.hpp"
#include "rocn/selftest.hpp"
#include "rocn/strategy.hpp"

namespace rocn {

/// Aggregated certification verdicts for one matrix. Fields that require
/// a valid ROCN matrix (bounds, criteria) or an even number of rows (the
/// rank criterion) stay empty when their precondition fails; the JSON
/// rendering keeps the keys and emits null so the schema is stable.
struct CertificationReport {
  std::string tool_version = kToolVersion;
  std::string matrix_label;
  int m = 0;
  int n = 0;
  ValidationOutcome rocn;
  std::optional<double> classical;
  std::optional<double> quantum;
  std::optional<double> violation_ratio;
  std::optional<SelfTestVerdict> rank_verdict;
  std::optional<bool> spanning;
  std::optional<double> canonical_bell_value;
  std::map<std::string, double> residuals;

  /// Fixed reading of the moment-matrix indices, recorded so reports are
  /// self-describing.
  static constexpr const char* kOrientationNote =
      "moment matrix rows index the n column settings; columns index "
      "unordered row pairs (i<k); full column rank m(m-1)/2 certifies "
      "self-testing";
};

/// Runs the whole certification pipeline on one matrix: ROCN validation,
/// classical/quantum bounds, both self-testing criteria, and the
/// canonical-strategy cross-check.
inline CertificationReport certify(const RocnMatrix& h,
                                   double tolerance = kDefaultTolerance,
                                   double rank_threshold = kRankCutoff,
                                   int enumeration_guard = kEnumerationGuard) {
  CertificationReport report;
  report.matrix_label = h.label;
  report.m = h.m();
  report.n = h.n();
  report.rocn = validate_rocn(h, tolerance);
  report.residuals["row_orthogonality"] = report.rocn.worst_row_pair_residual;
  report.residuals["column_normalization"] = report.rocn.worst_column_residual;

  if (!report.rocn.valid) {
    return report;
  }

  report.quantum = quantum_bound(h);
  if (h.m() <= enumeration_guard) {
    report.classical = classical_bound(h, enumeration_guard);
    if (*report.classical > 0.0) {
      report.violation_ratio = *report.quantum / *report.classical;
    }
  }
  report.spanning = spanning_criterion(h);
  if (h.m() % 2 == 0) {
    report.rank_verdict = rank_criterion(h, rank_threshold);
  }

  if (h.m() >= 2 && h.m() <= kObservableCap) {
    const QuantumStrategy strategy = canonical_strategy(h);
    const CorrelationTable table = correlations(strategy);
    report.canonical_bell_value = bell_value(h, table.joint, tolerance);
    const StrategyResiduals res = strategy_residuals(strategy, table);
    report.residuals["hermiticity"] = res.hermiticity;
    report.residuals["involution"] = res.involution;
    report.residuals["anticommutation"] = res.anticommutation;
    report.residuals["probability_normalization"] =
        res.probability_normalization;
    report.residuals["bell_value_deviation"] =
        std::abs(*report.canonical_bell_value - *report.quantum);
  }
  return report;
}

namespace detail {

inline nlohmann::json witness_to_json(const SymCoefficients& witness) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < witness.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < witness.dim(); ++k) {
      row.push_back({{"re", witness(i, k).real()},
                     {"im", witness(i, k).imag()}});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline nlohmann::json report_to_json(const CertificationReport& report) {
  nlohmann::json doc;
  doc["tool_version"] = report.tool_version;
  doc["matrix_label"] = report.matrix_label;
  doc["m"] = report.m;
  doc["n"] = report.n;
  doc["rocn"] = {
      {"valid", report.rocn.valid},
      {"worst_row_pair_residual", report.rocn.worst_row_pair_residual},
      {"worst_column_residual", report.rocn.worst_column_residual},
      {"zero_rows", report.rocn.zero_rows},
  };
  doc["classical_bound"] =
      report.classical ? nlohmann::json(*report.classical) : nullptr;
  doc["quantum_bound"] =
      report.quantum ? nlohmann::json(*report.quantum) : nullptr;
  doc["violation_ratio"] =
      report.violation_ratio ? nlohmann::json(*report.violation_ratio)
                             : nullptr;
  if (report.rank_verdict) {
    const SelfTestVerdict& v = *report.rank_verdict;
    doc["rank_verdict"] = {
        {"rank", v.rank},
        {"rank_required", v.rank_required},
        {"rank_passes", v.rank_passes},
        {"spanning_passes", v.spanning_passes},
        {"counting_ok", v.counting_ok},
        {"smallest_retained_singular_value",
         v.smallest_retained_singular_value},
        {"witness", v.witness ? detail::witness_to_json(*v.witness)
                              : nlohmann::json(nullptr)},
    };
  } else {
    doc["rank_verdict"] = nullptr;
  }
  doc["spanning"] = report.spanning ? nlohmann::json(*report.spanning) : nullptr;
  doc["canonical_bell_value"] =
      report.canonical_bell_value ? nlohmann::json(*report.canonical_bell_value)
                                  : nullptr;
  doc["residuals"] = report.residuals;
  doc["moment_matrix_orientation"] = CertificationReport::kOrientationNote;
  return doc;
}

inline std::string report_to_text(const CertificationReport& report) {
  std::ostringstream out;
  out << std::setprecision(15);
  auto line = [&out](const std::string& key, const auto& value) {
    out << key << " = " << value << "\n";
  };
  auto opt_line = [&out](const std::string& key, const auto& opt) {
    out << key << " = ";
    if (opt) {
      out << *opt;
    } else {
      out << "n/a";
    }
    out << "\n";
  };

  line("tool_version", report.tool_version);
  line("matrix_label", report.matrix_label);
  line("m", report.m);
  line("n", report.n);
  line("rocn.valid", report.rocn.valid ? "true" : "false");
  line("rocn.worst_row_pair_residual", report.rocn.worst_row_pair_residual);
  line("rocn.worst_column_residual", report.rocn.worst_column_residual);
  {
    std::ostringstream zeros;
    for (std::size_t t = 0; t < report.rocn.zero_rows.size(); ++t) {
      zeros << (t ? "," : "") << report.rocn.zero_rows[t];
    }
    line("rocn.zero_rows", "[" + zeros.str() + "]");
  }
  opt_line("classical_bound", report.classical);
  opt_line("quantum_bound", report.quantum);
  opt_line("violation_ratio", report.violation_ratio);
  if (report.rank_verdict) {
    const SelfTestVerdict& v = *report.rank_verdict;
    line("rank_verdict.rank", v.rank);
    line("rank_verdict.rank_required", v.rank_required);
    line("rank_verdict.rank_passes", v.rank_passes ? "true" : "false");
    line("rank_verdict.spanning_passes", v.spanning_passes ? "true" : "false");
    line("rank_verdict.counting_ok", v.counting_ok ? "true" : "false");
    line("rank_verdict.smallest_retained_singular_value",
         v.smallest_retained_singular_value);
    line("rank_verdict.witness", v.witness ? "present" : "none");
  } else {
    line("rank_verdict", "n/a");
  }
  out << "spanning = ";
  if (report.spanning) {
    out << (*report.spanning ? "true" : "false");
  } else {
    out << "n/a";
  }
  out << "\n";
  opt_line("canonical_bell_value", report.canonical_bell_value);
  for (const auto& [key, value] : report.residuals) {
    line("residuals." + key, value);
  }
  line("moment_matrix_orientation", CertificationReport::kOrientationNote);
  return out.str();
}

/// What the verify command checks: the canonical Bell value against n and
/// the per-invariant residuals of the synthesized strategy.
struct VerificationResult {
  double bell = 0.0;
  double deviation = 0.0;
  StrategyResiduals residuals;

  bool within(double tolerance) const {
    return deviation <= tolerance && residuals.worst() <= tolerance;
  }
};

inline VerificationResult verify_strategy(const RocnMatrix& h,
                                          double tolerance = kDefaultTolerance) {
  const QuantumStrategy strategy = canonical_strategy(h);
  const CorrelationTable table = correlations(strategy);
  VerificationResult result;
  result.bell = bell_value(h, table.joint, tolerance);
  result.deviation = std::abs(result.bell - quantum_bound(h));
  result.residuals = strategy_residuals(strategy, table);
  return result;
}

}  // namespace rocn

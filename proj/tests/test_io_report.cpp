#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <regex>
#include <string>

#include "rocn/construct.hpp"
#include "rocn/io.hpp"
#include "rocn/report.hpp"

#include "fixtures.hpp"

using rocn::RocnMatrix;

TEST_CASE("matrix JSON round-trips bit for bit", "[io]") {
  const RocnMatrix h = rocn::build_self_testing_matrix(4);
  const std::string text = rocn::matrix_to_json(h);
  const RocnMatrix back = rocn::matrix_from_json(text);
  CHECK(back.entries == h.entries);
  CHECK(back.label == h.label);
  // Entries are printed with enough digits to pin the double exactly.
  CHECK(text.find("0.70710678118654757") != std::string::npos);
}

TEST_CASE("matrix JSON rejects malformed input", "[io]") {
  CHECK_THROWS_AS(rocn::matrix_from_json("not json"), rocn::ParseError);
  CHECK_THROWS_AS(rocn::matrix_from_json("{\"m\": 1, \"n\": 1}"),
                  rocn::ParseError);
  CHECK_THROWS_AS(
      rocn::matrix_from_json(
          R"({"m": 2, "n": 1, "entries": [[1.0]], "label": ""})"),
      rocn::ParseError);
  CHECK_THROWS_AS(
      rocn::matrix_from_json(
          R"({"m": 1, "n": 2, "entries": [[1.0, NaN]], "label": ""})"),
      rocn::ParseError);
  CHECK_THROWS_AS(
      rocn::matrix_from_json(
          R"({"m": 1, "n": 2, "entries": [[1.0, "x"]], "label": ""})"),
      rocn::ParseError);
  CHECK_THROWS_AS(
      rocn::matrix_from_json(
          R"({"m": 0, "n": 0, "entries": [], "label": ""})"),
      rocn::ParseError);
}

TEST_CASE("certification report for CHSH", "[report]") {
  const auto report = rocn::certify(RocnMatrix(fixtures::chsh(), "chsh"));
  CHECK(report.matrix_label == "chsh");
  CHECK(report.m == 2);
  CHECK(report.n == 2);
  CHECK(report.rocn.valid);
  REQUIRE(report.classical);
  CHECK(*report.classical == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
  REQUIRE(report.quantum);
  CHECK(*report.quantum == 2.0);
  REQUIRE(report.violation_ratio);
  CHECK(*report.violation_ratio ==
        Catch::Approx(std::sqrt(2.0)).margin(1e-12));
  REQUIRE(report.rank_verdict);
  CHECK(report.rank_verdict->rank_passes);
  REQUIRE(report.spanning);
  CHECK_FALSE(*report.spanning);
  REQUIRE(report.canonical_bell_value);
  CHECK(*report.canonical_bell_value == Catch::Approx(2.0).margin(1e-9));
  CHECK(report.residuals.at("bell_value_deviation") <= 1e-12);
}

TEST_CASE("certification report for invalid and odd-m matrices", "[report]") {
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 0,
         1, 0;
  const auto invalid = rocn::certify(RocnMatrix(bad));
  CHECK_FALSE(invalid.rocn.valid);
  CHECK_FALSE(invalid.classical.has_value());
  CHECK_FALSE(invalid.rank_verdict.has_value());
  CHECK_FALSE(invalid.canonical_bell_value.has_value());

  const auto elegant = rocn::certify(rocn::preset("elegant"));
  CHECK(elegant.rocn.valid);
  CHECK_FALSE(elegant.rank_verdict.has_value());  // rank test needs even m
  REQUIRE(elegant.spanning);
  CHECK_FALSE(*elegant.spanning);
  REQUIRE(elegant.canonical_bell_value);
  CHECK(*elegant.canonical_bell_value == Catch::Approx(4.0).margin(1e-9));

  const auto eye = rocn::certify(RocnMatrix(Eigen::MatrixXd::Identity(2, 2)));
  REQUIRE(eye.rank_verdict);
  CHECK_FALSE(eye.rank_verdict->rank_passes);
  CHECK(eye.rank_verdict->witness.has_value());
  const auto doc = rocn::report_to_json(eye);
  CHECK_FALSE(doc["rank_verdict"]["witness"].is_null());
}

TEST_CASE("report JSON is schema-stable and deterministic", "[report]") {
  const auto report = rocn::certify(rocn::build_self_testing_matrix(2));
  const std::string a = rocn::report_to_json(report).dump(2);
  const std::string b =
      rocn::report_to_json(rocn::certify(rocn::build_self_testing_matrix(2)))
          .dump(2);
  CHECK(a == b);

  const auto doc = rocn::report_to_json(report);
  for (const char* key :
       {"tool_version", "matrix_label", "m", "n", "rocn", "classical_bound",
        "quantum_bound", "violation_ratio", "rank_verdict", "spanning",
        "canonical_bell_value", "residuals", "moment_matrix_orientation"}) {
    CHECK(doc.contains(key));
  }

  const auto invalid_doc = rocn::report_to_json(
      rocn::certify(RocnMatrix(Eigen::MatrixXd::Identity(2, 2) * 2.0)));
  CHECK(invalid_doc["classical_bound"].is_null());
  CHECK(invalid_doc["rank_verdict"].is_null());
}

TEST_CASE("text and JSON reports carry the same numbers", "[report]") {
  const auto report = rocn::certify(RocnMatrix(fixtures::chsh(), "chsh"));
  const auto doc = rocn::report_to_json(report);
  const std::string text = rocn::report_to_text(report);

  auto text_value = [&text](const std::string& key) {
    const std::regex pattern(key + std::string(" = ([-+0-9.eEn/a]+)"));
    std::smatch match;
    REQUIRE(std::regex_search(text, match, pattern));
    return std::stod(match[1]);
  };

  auto close12 = [](double x, double y) {
    const double scale = std::max({std::abs(x), std::abs(y), 1e-300});
    return std::abs(x - y) / scale <= 1e-12;
  };

  CHECK(close12(text_value("classical_bound"),
                doc["classical_bound"].get<double>()));
  CHECK(close12(text_value("quantum_bound"),
                doc["quantum_bound"].get<double>()));
  CHECK(close12(text_value("violation_ratio"),
                doc["violation_ratio"].get<double>()));
  CHECK(close12(text_value("canonical_bell_value"),
                doc["canonical_bell_value"].get<double>()));
}

TEST_CASE("observable and probability export schemas", "[io]") {
  const auto strategy =
      rocn::canonical_strategy(RocnMatrix(fixtures::chsh()));
  const auto obs = rocn::observables_to_json(strategy.alice);
  CHECK(obs["dim"] == 2);
  REQUIRE(obs["observables"].size() == 2);
  // First generator is X: entry (0,1) is 1 + 0i.
  CHECK(obs["observables"][0][0][1]["re"].get<double>() == 1.0);
  CHECK(obs["observables"][0][0][1]["im"].get<double>() == 0.0);
  // Second generator is Y: entry (0,1) is -i.
  CHECK(obs["observables"][1][0][1]["im"].get<double>() == -1.0);

  const auto tensor = rocn::probabilities(rocn::correlations(strategy));
  const auto prob = rocn::probabilities_to_json(tensor);
  REQUIRE(prob.size() == 2);
  REQUIRE(prob[0].size() == 2);
  REQUIRE(prob[0][0].size() == 2);
  REQUIRE(prob[0][0][0].size() == 2);
  CHECK(prob[0][0][0][0].get<double>() ==
        Catch::Approx(0.42677669529663687).margin(1e-12));
}

TEST_CASE("matrix files write and read through the filesystem", "[io]") {
  const std::string path = "rocn_io_test_matrix.json";
  const RocnMatrix h = rocn::preset("chsh");
  rocn::write_matrix_file(path, h);
  const RocnMatrix back = rocn::read_matrix_file(path);
  CHECK(back.entries == h.entries);
  std::remove(path.c_str());
  CHECK_THROWS_AS(rocn::read_matrix_file("does_not_exist.json"),
                  rocn::ParseError);
}

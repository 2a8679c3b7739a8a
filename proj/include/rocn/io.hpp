#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rocn/core.hpp"
#include "rocn/matrix.hpp"
#include "rocn/strategy.hpp"

namespace rocn {

namespace detail {

/// Formats a double with 17 significant digits, enough to round-trip any
/// IEEE binary64 value exactly.
inline std::string format_entry(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace detail

/// Serializes a matrix in the repo-wide JSON format:
/// {"m": int, "n": int, "entries": [[...], ...], "label": string},
/// row-major, every entry printed with 17 significant digits.
inline std::string matrix_to_json(const RocnMatrix& h) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"m\": " << h.m() << ",\n";
  out << "  \"n\": " << h.n() << ",\n";
  out << "  \"entries\": [\n";
  for (int i = 0; i < h.m(); ++i) {
    out << "    [";
    for (int j = 0; j < h.n(); ++j) {
      if (j > 0) {
        out << ", ";
      }
      out << detail::format_entry(h.entries(i, j));
    }
    out << (i + 1 < h.m() ? "],\n" : "]\n");
  }
  out << "  ],\n";
  out << "  \"label\": " << nlohmann::json(h.label).dump() << "\n";
  out << "}\n";
  return out.str();
}

inline RocnMatrix matrix_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix_from_json: ") + e.what());
  }

  if (!doc.is_object() || !doc.contains("m") || !doc.contains("n") ||
      !doc.contains("entries")) {
    throw ParseError("matrix_from_json: missing m/n/entries");
  }
  if (!doc["m"].is_number_integer() || !doc["n"].is_number_integer()) {
    throw ParseError("matrix_from_json: m and n must be integers");
  }
  const int m = doc["m"].get<int>();
  const int n = doc["n"].get<int>();
  if (m < 1 || n < 1) {
    throw ParseError("matrix_from_json: m and n must be positive");
  }
  const auto& rows = doc["entries"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != m) {
    throw ParseError("matrix_from_json: entries must hold m rows");
  }

  RocnMatrix h;
  h.entries.resize(m, n);
  for (int i = 0; i < m; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ParseError("matrix_from_json: row " + std::to_string(i) +
                       " must hold n entries");
    }
    for (int j = 0; j < n; ++j) {
      const auto& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number()) {
        throw ParseError("matrix_from_json: non-numeric entry");
      }
      const double value = cell.get<double>();
      if (!std::isfinite(value)) {
        throw ParseError("matrix_from_json: NaN/Inf entry rejected");
      }
      h.entries(i, j) = value;
    }
  }
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) {
      throw ParseError("matrix_from_json: label must be a string");
    }
    h.label = doc["label"].get<std::string>();
  }
  return h;
}

inline void write_matrix_file(const std::string& path, const RocnMatrix& h) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("write_matrix_file: cannot open '" + path + "'");
  }
  out << matrix_to_json(h);
  if (!out) {
    throw ParseError("write_matrix_file: write failed for '" + path + "'");
  }
}

inline RocnMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("read_matrix_file: cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return matrix_from_json(buffer.str());
}

/// Observables exported as a list of d x d matrices of {"re", "im"} pairs.
inline nlohmann::json observables_to_json(const ObservableSet& set) {
  nlohmann::json ops = nlohmann::json::array();
  for (const auto& op : set.ops) {
    nlohmann::json matrix = nlohmann::json::array();
    for (Eigen::Index r = 0; r < op.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < op.cols(); ++c) {
        row.push_back({{"re", op(r, c).real()}, {"im", op(r, c).imag()}});
      }
      matrix.push_back(std::move(row));
    }
    ops.push_back(std::move(matrix));
  }
  return nlohmann::json{{"dim", set.dim}, {"observables", std::move(ops)}};
}

/// Probability tensors export as nested arrays indexed [i][j][a][b], with
/// outcome index 0 encoding +1 and 1 encoding -1.
inline nlohmann::json probabilities_to_json(const ProbabilityTensor& tensor) {
  nlohmann::json settings_i = nlohmann::json::array();
  for (int i = 0; i < tensor.m; ++i) {
    nlohmann::json settings_j = nlohmann::json::array();
    for (int j = 0; j < tensor.n; ++j) {
      nlohmann::json outcomes_a = nlohmann::json::array();
      for (int a = 0; a < 2; ++a) {
        nlohmann::json outcomes_b = nlohmann::json::array();
        for (int b = 0; b < 2; ++b) {
          outcomes_b.push_back(tensor.at(i, j, a, b));
        }
        outcomes_a.push_back(std::move(outcomes_b));
      }
      settings_j.push_back(std::move(outcomes_a));
    }
    settings_i.push_back(std::move(settings_j));
  }
  return settings_i;
}

}  // namespace rocn

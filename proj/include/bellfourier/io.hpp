#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bellfourier/fourier.hpp"
#include "bellfourier/lhv.hpp"
#include "bellfourier/theorem.hpp"

namespace bellfourier::io {

using nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed model document; the message names the offending field.
class FormatError : public ModelError {
 public:
  using ModelError::ModelError;
};

inline constexpr double kLoadWeightTolerance = 1e-9;

// Shortest decimal that round-trips is not guaranteed by %g, so always use 17.
inline std::string full_precision(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string rounded(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

// ---------------------------------------------------------------------------
// Model documents
//
//   { "pairing": "correlated" | "anti-correlated",
//     "description": "...",                        (optional)
//     "atoms": [ { "weight": w, "first_sign": +1|-1,
//                  "breakpoints": [...],
//                  "signs": [...] },               (optional, must alternate)
//                ... ] }

inline json model_to_json(const LhvModel& model) {
  json atoms = json::array();
  for (const auto& a : model.atoms()) {
    atoms.push_back({{"weight", a.weight},
                     {"first_sign", a.response.first_sign()},
                     {"breakpoints", a.response.breakpoints()}});
  }
  return {{"pairing", to_string(model.pairing())},
          {"description", model.description()},
          {"atoms", atoms}};
}

namespace detail {

inline const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw FormatError(where + "." + key + ": missing");
  return obj.at(key);
}

inline double require_number(const json& obj, const std::string& key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number()) throw FormatError(where + "." + key + ": expected a number");
  return v.get<double>();
}

inline int require_sign(const json& v, const std::string& where) {
  if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1)) {
    throw FormatError(where + ": expected +1 or -1");
  }
  return v.get<int>();
}

}  // namespace detail

inline LhvModel model_from_json(const json& doc) {
  if (!doc.is_object()) throw FormatError("model: expected an object");
  const auto& pairing_v = detail::require(doc, "pairing", "model");
  if (!pairing_v.is_string()) throw FormatError("model.pairing: expected a string");
  const auto pairing_s = pairing_v.get<std::string>();
  Pairing pairing;
  if (pairing_s == "correlated") {
    pairing = Pairing::correlated;
  } else if (pairing_s == "anti-correlated") {
    pairing = Pairing::anti_correlated;
  } else {
    throw FormatError("model.pairing: expected \"correlated\" or \"anti-correlated\", got \"" +
                      pairing_s + "\"");
  }

  const auto& atoms_v = detail::require(doc, "atoms", "model");
  if (!atoms_v.is_array() || atoms_v.empty()) {
    throw FormatError("model.atoms: expected a non-empty array");
  }
  std::vector<Atom> atoms;
  double total = 0.0;
  for (std::size_t i = 0; i < atoms_v.size(); ++i) {
    const std::string where = "model.atoms[" + std::to_string(i) + "]";
    const auto& a = atoms_v[i];
    const double w = detail::require_number(a, "weight", where);
    const int first = detail::require_sign(detail::require(a, "first_sign", where), where + ".first_sign");
    const auto& bp_v = detail::require(a, "breakpoints", where);
    if (!bp_v.is_array()) throw FormatError(where + ".breakpoints: expected an array");
    std::vector<double> bps;
    for (std::size_t j = 0; j < bp_v.size(); ++j) {
      if (!bp_v[j].is_number()) {
        throw FormatError(where + ".breakpoints[" + std::to_string(j) + "]: expected a number");
      }
      bps.push_back(bp_v[j].get<double>());
    }
    SimpleFunctionSpec spec;
    try {
      if (a.contains("signs")) {
        const auto& s_v = a.at("signs");
        if (!s_v.is_array()) throw FormatError(where + ".signs: expected an array");
        std::vector<int> signs;
        for (std::size_t j = 0; j < s_v.size(); ++j) {
          signs.push_back(detail::require_sign(s_v[j], where + ".signs[" + std::to_string(j) + "]"));
        }
        if (!signs.empty() && signs.front() != first) {
          throw ModelError("signs[0] disagrees with first_sign");
        }
        spec = SimpleFunctionSpec::from_signs(std::move(bps), signs);
      } else {
        spec = SimpleFunctionSpec(std::move(bps), first);
      }
    } catch (const FormatError&) {
      throw;
    } catch (const ModelError& e) {
      throw ModelError(where + ": " + e.what());
    }
    atoms.push_back({w, std::move(spec)});
    total += w;
  }
  if (std::abs(total - 1.0) > kLoadWeightTolerance) {
    throw ModelError("model.atoms: weights must sum to 1 within 1e-9, got " + full_precision(total));
  }
  for (auto& a : atoms) a.weight /= total;
  std::string description = doc.value("description", std::string{});
  return LhvModel(std::move(atoms), pairing, std::move(description));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("failed writing " + path);
}

inline LhvModel parse_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("model: not valid JSON: ") + e.what());
  }
  return model_from_json(doc);
}

inline LhvModel load_model(const std::string& path) { return parse_model(read_file(path)); }

inline void save_model(const std::string& path, const LhvModel& model) {
  write_file(path, model_to_json(model).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Delimiter-separated tables: one header row, one record per row.

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline std::string format_table(const Table& t, char delim = ',') {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += delim;
    out += t.header[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += delim;
      out += full_precision(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline Table parse_table(const std::string& text, char delim = ',') {
  Table t;
  std::istringstream in(text);
  std::string line;
  auto split = [delim](const std::string& l) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(l);
    while (std::getline(ls, cell, delim)) cells.push_back(cell);
    return cells;
  };
  if (!std::getline(in, line)) throw FormatError("table: missing header row");
  t.header = split(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line);
    if (cells.size() != t.header.size()) {
      throw FormatError("table line " + std::to_string(line_no) + ": expected " +
                        std::to_string(t.header.size()) + " fields");
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(c, &used));
        if (used != c.size()) throw std::invalid_argument(c);
      } catch (const std::exception&) {
        throw FormatError("table line " + std::to_string(line_no) + ": bad number \"" + c + "\"");
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Spectrum and report export

inline Table spectrum_table(const FourierSpectrum& s) {
  Table t{{"n", "re", "im"}, {}};
  for (int n = -s.max_index; n <= s.max_index; ++n) {
    t.rows.push_back({static_cast<double>(n), s[n].real(), s[n].imag()});
  }
  return t;
}

inline Table spectrum_table(const Spectrum2D& s) {
  Table t{{"n", "m", "re", "im"}, {}};
  for (int n = -s.max_index; n <= s.max_index; ++n) {
    for (int m = -s.max_index; m <= s.max_index; ++m) {
      t.rows.push_back({static_cast<double>(n), static_cast<double>(m), s(n, m).real(),
                        s(n, m).imag()});
    }
  }
  return t;
}

inline json spectrum_document(const FourierSpectrum& s, const std::string& source) {
  json coeffs = json::array();
  for (int n = -s.max_index; n <= s.max_index; ++n) {
    coeffs.push_back({{"n", n}, {"re", s[n].real()}, {"im", s[n].imag()}});
  }
  return {{"N", s.max_index},   {"period", s.period},
          {"convention", to_string(s.convention)},
          {"source", source}, {"coefficients", coeffs}};
}

inline json spectrum_document(const Spectrum2D& s, const std::string& source) {
  json coeffs = json::array();
  for (int n = -s.max_index; n <= s.max_index; ++n) {
    for (int m = -s.max_index; m <= s.max_index; ++m) {
      coeffs.push_back({{"n", n}, {"m", m}, {"re", s(n, m).real()}, {"im", s(n, m).imag()}});
    }
  }
  return {{"N", s.max_index},
          {"convention", to_string(s.convention)},
          {"source", source},
          {"coefficients", coeffs}};
}

inline json report_document(const IncompatibilityReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back({{"n", w.n},
                         {"m", w.m},
                         {"role", w.role},
                         {"value", {{"re", w.value.real()}, {"im", w.value.imag()}}},
                         {"target", {{"re", w.target.real()}, {"im", w.target.imag()}}}});
  }
  return {{"verdict", r.verdict},
          {"residual_inf", r.residual_inf},
          {"tolerance", r.tolerance},
          {"N", r.max_index},
          {"pairing", to_string(r.pairing)},
          {"parseval_total", r.parseval_total},
          {"model", r.description},
          {"witnesses", witnesses}};
}

inline json schmidt_document(const SchmidtSpectrum& s, const std::string& source) {
  json weights = json::array();
  for (int n = -s.max_index; n <= s.max_index; ++n) {
    weights.push_back({{"n", n}, {"sigma", s[n]}});
  }
  return {{"source", source},
          {"N", s.max_index},
          {"threshold", s.threshold},
          {"above_threshold", s.above_threshold},
          {"off_diagonal_fraction", s.off_diagonal_fraction},
          {"weights", weights}};
}

}  // namespace bellfourier::io

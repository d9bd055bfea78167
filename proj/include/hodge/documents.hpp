#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hodge/complexes.hpp"
#include "hodge/error.hpp"
#include "hodge/matrix.hpp"
#include "hodge/rational.hpp"
#include "hodge/spectral.hpp"
#include "json.hpp"

// JSON documents for complexes, double complexes and single matrices.
//
//   complex:        {"min_deg": 0, "dims": {"0": 1, "1": 2},
//                    "differentials": {"0": [["1"], ["-1/2"]]},
//                    "grading": "cochain" | "chain"}
//   double complex: {"max_r": 1, "max_c": 1, "dims": {"0,0": 1, ...},
//                    "horiz": {"0,0": [[...]]}, "vert": {"0,0": [[...]]}}
//   matrix:         {"matrix": [["2", "4"], ["6", "8"]]}
//
// Matrix entries are strings holding an integer or "p/q"; plain JSON
// integers are accepted on input. Output is always lowest-terms strings.

namespace hodge::documents {

using json = nlohmann::json;

enum class Grading { cochain, chain };

namespace detail {

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line, col = 1;
      else ++col;
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": invalid JSON");
  }
}

inline const json& require(const json& obj, const char* key) {
  if (!obj.is_object()) throw ParseError("document: expected a JSON object at top level");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("document: missing field \"" + std::string(key) + "\"");
  return *it;
}

inline long to_long(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<long>();
}

inline std::size_t to_count(const json& v, const std::string& where) {
  const long n = to_long(v, where);
  if (n < 0) throw ParseError(where + ": expected a nonnegative count, got " + std::to_string(n));
  return std::size_t(n);
}

inline int parse_degree(const std::string& key, const std::string& where) {
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != key.size()) throw ParseError(where + ": key \"" + key + "\" is not an integer degree");
  return n;
}

inline std::pair<std::size_t, std::size_t> parse_cell(const std::string& key, const std::string& where) {
  const auto comma = key.find(',');
  if (comma == std::string::npos) throw ParseError(where + ": key \"" + key + "\" is not of the form \"r,s\"");
  const int r = parse_degree(key.substr(0, comma), where);
  const int s = parse_degree(key.substr(comma + 1), where);
  if (r < 0 || s < 0) throw ParseError(where + ": cell \"" + key + "\" has a negative index");
  return {std::size_t(r), std::size_t(s)};
}

inline Rational parse_entry(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(Integer(v.dump(), 10));
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": malformed rational " + v.dump());
}

/// Reads a matrix with `cols` columns expected (used when the array has no rows).
template <typename T>
Matrix<T> parse_matrix(const json& v, const std::string& where, std::size_t rows_expected, std::size_t cols_expected) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of rows");
  const std::size_t rows = v.size();
  const std::size_t cols = rows ? (v[0].is_array() ? v[0].size() : 0) : cols_expected;
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rw = where + "[" + std::to_string(i) + "]";
    if (!v[i].is_array()) throw ParseError(rw + ": expected an array of entries");
    if (v[i].size() != cols) throw DimensionError(rw + ": row has " + std::to_string(v[i].size()) + " entries, expected " + std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j) {
      const std::string at = rw + "[" + std::to_string(j) + "]";
      const Rational q = parse_entry(v[i][j], at);
      if constexpr (std::is_same_v<T, Integer>) {
        if (q.get_den() != 1) throw ParseError(at + ": expected an integer entry, got \"" + format_rational(q) + "\"");
        m(i, j) = q.get_num();
      } else {
        m(i, j) = q;
      }
    }
  }
  if (rows_expected != std::size_t(-1) && (rows != rows_expected || cols != cols_expected))
    throw DimensionError(where + ": shape " + m.shape() + ", expected " + std::to_string(rows_expected) + "x" +
                         std::to_string(cols_expected));
  return m;
}

template <typename T>
json matrix_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<T, Integer>) row.push_back(m(i, j).get_str());
      else row.push_back(format_rational(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename Complex>
Complex parse_graded(const json& doc) {
  using T = typename Complex::MatrixType::value_type;
  const int min_deg = int(to_long(require(doc, "min_deg"), "min_deg"));
  const json& dims_obj = require(doc, "dims");
  if (!dims_obj.is_object()) throw ParseError("dims: expected an object keyed by degree");
  std::map<int, std::size_t> dim_map;
  for (auto it = dims_obj.begin(); it != dims_obj.end(); ++it) {
    const std::string where = "dims[\"" + it.key() + "\"]";
    const int n = parse_degree(it.key(), "dims");
    if (n < min_deg) throw DimensionError(where + ": degree below min_deg " + std::to_string(min_deg));
    dim_map[n] = to_count(it.value(), where);
  }
  int max_deg = min_deg;
  for (const auto& [n, d] : dim_map) max_deg = std::max(max_deg, n);
  std::vector<std::size_t> dims(std::size_t(max_deg - min_deg + 1), 0);
  for (const auto& [n, d] : dim_map) dims[std::size_t(n - min_deg)] = d;
  auto dim = [&](int n) { return n < min_deg || n > max_deg ? std::size_t(0) : dims[std::size_t(n - min_deg)]; };

  std::map<int, Matrix<T>> diffs;
  if (auto it = doc.find("differentials"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("differentials: expected an object keyed by degree");
    for (auto d = it->begin(); d != it->end(); ++d) {
      const std::string where = "differentials[\"" + d.key() + "\"]";
      const int n = parse_degree(d.key(), "differentials");
      diffs.emplace(n, parse_matrix<T>(d.value(), where, dim(n + Complex::step), dim(n)));
    }
  }
  Complex c(min_deg, std::move(dims), std::move(diffs));
  if (auto bad = c.first_nonzero_composite())
    throw ValidationError("differentials: d∘d != 0 starting at degree " + std::to_string(*bad));
  return c;
}

inline Grading grading_of(const json& doc) {
  auto it = doc.find("grading");
  if (it == doc.end()) return Grading::cochain;
  if (*it == "cochain") return Grading::cochain;
  if (*it == "chain") return Grading::chain;
  throw ParseError("grading: expected \"cochain\" or \"chain\", got " + it->dump());
}

template <typename Complex>
json graded_json(const Complex& c, Grading g) {
  json doc;
  doc["min_deg"] = c.min_deg();
  doc["dims"] = json::object();
  doc["differentials"] = json::object();
  if (g == Grading::chain) doc["grading"] = "chain";
  for (int n = c.min_deg(); n <= c.max_deg() && !c.dims().empty(); ++n) {
    doc["dims"][std::to_string(n)] = c.dim(n);
    const auto m = c.differential(n);
    if (!m.empty() && !m.is_zero()) doc["differentials"][std::to_string(n)] = matrix_json(m);
  }
  return doc;
}

}  // namespace detail

/// Cochain complex over ℚ. Rejects documents declaring chain grading.
inline CochainComplex parse_cochain_complex(std::string_view text) {
  const json doc = detail::parse_json(text);
  if (detail::grading_of(doc) != Grading::cochain)
    throw ParseError("grading: expected a cochain complex document");
  return detail::parse_graded<CochainComplex>(doc);
}

/// Chain complex over ℤ. A document without "grading" is read as chain-graded.
inline IntChainComplex parse_chain_complex(std::string_view text) {
  const json doc = detail::parse_json(text);
  if (doc.is_object() && doc.contains("grading") && detail::grading_of(doc) != Grading::chain)
    throw ParseError("grading: expected a chain complex document");
  return detail::parse_graded<IntChainComplex>(doc);
}

inline DoubleComplex parse_double_complex(std::string_view text) {
  const json doc = detail::parse_json(text);
  const std::size_t max_r = detail::to_count(detail::require(doc, "max_r"), "max_r");
  const std::size_t max_c = detail::to_count(detail::require(doc, "max_c"), "max_c");
  Grid<std::size_t> dims(max_r, max_c, 0);
  const json& dims_obj = detail::require(doc, "dims");
  if (!dims_obj.is_object()) throw ParseError("dims: expected an object keyed by \"r,s\"");
  for (auto it = dims_obj.begin(); it != dims_obj.end(); ++it) {
    const std::string where = "dims[\"" + it.key() + "\"]";
    const auto [r, s] = detail::parse_cell(it.key(), "dims");
    if (r > max_r || s > max_c) throw DimensionError(where + ": cell outside the declared grid");
    dims(r, s) = detail::to_count(it.value(), where);
  }
  auto dim = [&](std::size_t r, std::size_t s) { return r <= max_r && s <= max_c ? dims(r, s) : std::size_t(0); };

  auto read_maps = [&](const char* key, bool horizontal) {
    std::map<DoubleComplex::Cell, RatMatrix> maps;
    auto it = doc.find(key);
    if (it == doc.end()) return maps;
    if (!it->is_object()) throw ParseError(std::string(key) + ": expected an object keyed by \"r,s\"");
    for (auto m = it->begin(); m != it->end(); ++m) {
      const std::string where = std::string(key) + "[\"" + m.key() + "\"]";
      const auto [r, s] = detail::parse_cell(m.key(), key);
      if (r > max_r || s > max_c) throw DimensionError(where + ": cell outside the declared grid");
      const std::size_t rows = horizontal ? dim(r + 1, s) : dim(r, s + 1);
      maps.emplace(DoubleComplex::Cell{r, s}, detail::parse_matrix<Rational>(m.value(), where, rows, dim(r, s)));
    }
    return maps;
  };
  DoubleComplex k(max_r, max_c, std::move(dims), read_maps("horiz", true), read_maps("vert", false));
  if (auto v = k.violation()) throw ValidationError(*v);
  return k;
}

inline IntMatrix parse_int_matrix(std::string_view text) {
  const json doc = detail::parse_json(text);
  return detail::parse_matrix<Integer>(detail::require(doc, "matrix"), "matrix", std::size_t(-1), 0);
}

inline RatMatrix parse_rat_matrix(std::string_view text) {
  const json doc = detail::parse_json(text);
  return detail::parse_matrix<Rational>(detail::require(doc, "matrix"), "matrix", std::size_t(-1), 0);
}

using Document = std::variant<CochainComplex, IntChainComplex, DoubleComplex>;

/// Dispatches on the document's keys: "max_r" marks a double complex,
/// otherwise "grading" selects cochain (default) or chain.
inline Document parse_document(std::string_view text) {
  const json doc = detail::parse_json(text);
  if (!doc.is_object()) throw ParseError("document: expected a JSON object at top level");
  if (doc.contains("max_r")) return parse_double_complex(text);
  if (detail::grading_of(doc) == Grading::chain) return detail::parse_graded<IntChainComplex>(doc);
  return detail::parse_graded<CochainComplex>(doc);
}

inline std::string serialize(const CochainComplex& c) { return detail::graded_json(c, Grading::cochain).dump(2); }
inline std::string serialize(const IntChainComplex& c) { return detail::graded_json(c, Grading::chain).dump(2); }

inline std::string serialize(const DoubleComplex& k) {
  json doc;
  doc["max_r"] = k.max_r();
  doc["max_c"] = k.max_c();
  doc["dims"] = json::object();
  doc["horiz"] = json::object();
  doc["vert"] = json::object();
  for (std::size_t r = 0; r <= k.max_r(); ++r)
    for (std::size_t s = 0; s <= k.max_c(); ++s) {
      const std::string key = std::to_string(r) + "," + std::to_string(s);
      doc["dims"][key] = k.dim(r, s);
      if (const auto h = k.horiz(r, s); !h.empty() && !h.is_zero()) doc["horiz"][key] = detail::matrix_json(h);
      if (const auto v = k.vert(r, s); !v.empty() && !v.is_zero()) doc["vert"][key] = detail::matrix_json(v);
    }
  return doc.dump(2);
}

inline std::string serialize(const Document& d) {
  return std::visit([](const auto& x) { return serialize(x); }, d);
}

}  // namespace hodge::documents

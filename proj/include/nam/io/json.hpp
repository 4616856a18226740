#pragma once

/// @file json.hpp
/// @brief JSON (de)serialization of measures, weak distributions, product
///        pairs, matrices and cyclotomic values. Rationals are "a/b" strings
///        everywhere; nlohmann::json keeps object keys sorted, so output is
///        canonical.

#include <nlohmann/json.hpp>

#include "nam/kakutani.hpp"
#include "nam/linalg.hpp"
#include "nam/weak_dist.hpp"

namespace nam::io {

using Json = nlohmann::json;

inline const Json& require_field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + ": missing field \"" + key + "\"");
  return *it;
}

inline long require_long(const Json& j, const char* key, const std::string& where) {
  const Json& v = require_field(j, key, where);
  if (!v.is_number_integer()) throw SchemaError(where + ": \"" + key + "\" must be an integer");
  return v.get<long>();
}

inline Json rational_to_json(const Rational& r) { return to_string(r); }

/// Accepts "a/b" strings and JSON integers; floats are rejected.
inline Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return make_rational(j.get<long>());
  if (!j.is_string()) throw SchemaError(where + ": rational must be an \"a/b\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

inline Json point_to_json(const Point& x) {
  Json out = Json::array();
  for (const auto& c : x) out.push_back(rational_to_json(c));
  return out;
}

inline Point point_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": point must be an array");
  Point x;
  for (const auto& c : j) x.push_back(rational_from_json(c, where));
  return x;
}

inline Json rationals_to_json(const std::vector<Rational>& v) { return point_to_json(v); }

inline ValueMode mode_from_json(const Json& j, const std::string& where) {
  const Json& mode = require_field(j, "mode", where);
  if (!mode.is_string()) throw SchemaError(where + ": mode must be a string");
  const auto name = mode.get<std::string>();
  if (name == "real") return ValueMode::real();
  if (name == "sadic") return ValueMode::sadic(require_long(j, "s", where));
  throw SchemaError(where + ": unknown mode \"" + name + "\"");
}

inline void mode_to_json(const ValueMode& mode, Json& out) {
  out["mode"] = mode.is_real() ? "real" : "sadic";
  if (mode.is_sadic()) out["s"] = mode.s();
}

inline Json measure_to_json(const BallMeasure& mu) {
  Json out;
  out["p"] = mu.prime();
  out["n"] = mu.dim();
  out["m"] = mu.resolution();
  mode_to_json(mu.mode(), out);
  out["refinable"] = mu.refinable();
  Json cells = Json::array();
  for (const auto& [c, w] : mu.cells()) cells.push_back({{"center", point_to_json(c)}, {"weight", rational_to_json(w)}});
  out["cells"] = std::move(cells);
  return out;
}

/// Centers are re-canonicalized; two entries in the same cell are rejected.
inline BallMeasure measure_from_json(const Json& j, const std::string& where = "measure") {
  const long p = require_long(j, "p", where);
  const long n = require_long(j, "n", where);
  const long m = require_long(j, "m", where);
  const ValueMode mode = mode_from_json(j, where);
  bool refinable = false;
  if (j.contains("refinable")) {
    if (!j["refinable"].is_boolean()) throw SchemaError(where + ": refinable must be a boolean");
    refinable = j["refinable"].get<bool>();
  }
  if (n < 1 || n > 64) throw SchemaError(where + ": n out of range");
  BallMeasure mu(p, static_cast<int>(n), m, mode, refinable);
  const Json& cells = require_field(j, "cells", where);
  if (!cells.is_array()) throw SchemaError(where + ": cells must be an array");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string at = where + ".cells[" + std::to_string(i) + "]";
    const Point c = point_from_json(require_field(cells[i], "center", at), at);
    if (static_cast<long>(c.size()) != n) throw SchemaError(at + ": center has the wrong dimension");
    mu.insert_unique(c, rational_from_json(require_field(cells[i], "weight", at), at));
  }
  return mu;
}

inline Json weak_to_json(const WeakDistribution& wd) {
  Json out;
  out["p"] = wd.prime();
  mode_to_json(wd.mode(), out);
  out["dims"] = wd.dims();
  Json levels = Json::array();
  for (const auto& mu : wd.levels()) levels.push_back(measure_to_json(mu));
  out["levels"] = std::move(levels);
  return out;
}

inline WeakDistribution weak_from_json(const Json& j, const std::string& where = "weak distribution") {
  const long p = require_long(j, "p", where);
  const ValueMode mode = mode_from_json(j, where);
  const Json& dims = require_field(j, "dims", where);
  const Json& levels = require_field(j, "levels", where);
  if (!dims.is_array() || !levels.is_array()) throw SchemaError(where + ": dims and levels must be arrays");
  std::vector<int> k;
  for (const auto& d : dims) {
    if (!d.is_number_integer()) throw SchemaError(where + ": dims must be integers");
    k.push_back(d.get<int>());
  }
  std::vector<BallMeasure> mus;
  for (std::size_t i = 0; i < levels.size(); ++i) mus.push_back(measure_from_json(levels[i], where + ".levels[" + std::to_string(i) + "]"));
  return {p, mode, std::move(k), std::move(mus)};
}

inline ProductPair product_pair_from_json(const Json& j, const std::string& where = "product pair") {
  ProductPair pp;
  const Json& factors = require_field(j, "factors", where);
  if (!factors.is_array()) throw SchemaError(where + ": factors must be an array");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::string at = where + ".factors[" + std::to_string(i) + "]";
    pp.factors.push_back({measure_from_json(require_field(factors[i], "mu", at), at + ".mu"),
                          measure_from_json(require_field(factors[i], "nu", at), at + ".nu")});
  }
  const Json& tail = require_field(j, "tail", where);
  if (!tail.is_object() || tail.size() != 1) throw SchemaError(where + ": tail must have exactly one rule");
  if (tail.contains("trivial")) {
    pp.tail = TrivialTail{};
  } else if (tail.contains("geometric")) {
    pp.tail = GeometricTail{rational_from_json(require_field(tail["geometric"], "ratio", where + ".tail"), where + ".tail")};
  } else {
    throw SchemaError(where + ": unknown tail rule");
  }
  return pp;
}

inline Json product_pair_to_json(const ProductPair& pp) {
  Json out;
  Json factors = Json::array();
  for (const auto& f : pp.factors) factors.push_back({{"mu", measure_to_json(f.mu)}, {"nu", measure_to_json(f.nu)}});
  out["factors"] = std::move(factors);
  if (const auto* g = std::get_if<GeometricTail>(&pp.tail))
    out["tail"] = {{"geometric", {{"ratio", rational_to_json(g->ratio)}}}};
  else
    out["tail"] = {{"trivial", Json::object()}};
  return out;
}

inline Json matrix_to_json(const RationalMatrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(rationals_to_json(a.row(i)));
  return rows;
}

inline RationalMatrix matrix_rows_from_json(const Json& rows, const std::string& where) {
  if (!rows.is_array()) throw SchemaError(where + ": rows must be an array");
  const std::size_t d = rows.size();
  RationalMatrix a(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!rows[i].is_array() || rows[i].size() != d) throw SchemaError(where + ": rows must form a square matrix");
    for (std::size_t k = 0; k < d; ++k) a(i, k) = rational_from_json(rows[i][k], where);
  }
  return a;
}

/// {p, d, rows}: rows are the leading block of A = I + F.
inline PerturbationOperator operator_from_json(const Json& j, const std::string& where = "matrix") {
  const long p = require_long(j, "p", where);
  require_prime(p);
  const long d = require_long(j, "d", where);
  RationalMatrix a = matrix_rows_from_json(require_field(j, "rows", where), where);
  if (static_cast<long>(a.rows()) != d) throw SchemaError(where + ": d does not match the number of rows");
  return {p, std::move(a)};
}

inline Json operator_to_json(const PerturbationOperator& a) {
  return {{"p", a.p}, {"d", a.dim()}, {"rows", matrix_to_json(a.block)}};
}

/// Written at the minimal level.
inline Json cyclotomic_to_json(const CyclotomicElement& x) {
  const CyclotomicElement y = x.minimal_level();
  return {{"p", y.prime()}, {"level", y.level()}, {"coeffs", rationals_to_json(y.coeffs())}};
}

inline CyclotomicElement cyclotomic_from_json(const Json& j, const std::string& where = "cyclotomic") {
  const long p = require_long(j, "p", where);
  const long level = require_long(j, "level", where);
  const Json& coeffs = require_field(j, "coeffs", where);
  if (!coeffs.is_array()) throw SchemaError(where + ": coeffs must be an array");
  std::vector<Rational> c;
  for (const auto& x : coeffs) c.push_back(rational_from_json(x, where));
  return {p, level, std::move(c)};
}

inline Json rational_fn_to_json(const RationalFn& f) {
  Json values = Json::array();
  for (const auto& [c, v] : f.values()) values.push_back({{"center", point_to_json(c)}, {"value", rational_to_json(v)}});
  return {{"p", f.prime()},
          {"n", f.dim()},
          {"m", f.resolution()},
          {"default", rational_to_json(f.default_value())},
          {"values", std::move(values)}};
}

inline RationalFn rational_fn_from_json(const Json& j, const std::string& where = "function") {
  const long p = require_long(j, "p", where);
  const long n = require_long(j, "n", where);
  const long m = require_long(j, "m", where);
  const Rational def = j.contains("default") ? rational_from_json(j["default"], where) : Rational(0);
  RationalFn f(p, static_cast<int>(n), m, def);
  if (j.contains("values")) {
    for (const auto& e : j["values"])
      f.set(point_from_json(require_field(e, "center", where), where), rational_from_json(require_field(e, "value", where), where));
  }
  return f;
}

/// Float tagged as approximate, with its error bound.
inline Json approx_to_json(double value, double error_bound) {
  return {{"approx", value}, {"error_bound", error_bound}};
}

/// Guesses the document type from its fields.
inline std::string detect_document(const Json& j) {
  if (!j.is_object()) return "unknown";
  if (j.contains("command")) return "scenario";
  if (j.contains("factors")) return "product_pair";
  if (j.contains("levels")) return "weak_distribution";
  if (j.contains("rows")) return "matrix";
  if (j.contains("coeffs")) return "cyclotomic";
  if (j.contains("cells")) return "measure";
  if (j.contains("values")) return "function";
  return "unknown";
}

}  // namespace nam::io

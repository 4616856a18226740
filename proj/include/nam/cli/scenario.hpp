#pragma once

/// @file scenario.hpp
/// @brief Scenario runner: validates a scenario document, dispatches the
///        command and assembles a deterministic JSON report.
///
/// Scenario: {"command": ..., "inputs": {name: document | "relative/path.json"},
/// "params": {...}}. Exit codes: 0 all checks pass, 1 a check failed,
/// 2 schema or operation error.

#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nam/gaussian.hpp"
#include "nam/io/json.hpp"
#include "nam/kakutani.hpp"
#include "nam/linalg.hpp"
#include "nam/oracle.hpp"
#include "nam/weak_dist.hpp"

namespace nam::cli {

using io::Json;

struct RunOptions {
  std::filesystem::path base_dir = ".";
  Integer cap = Integer(1000000);
};

struct Report {
  Json document;
  int exit_code = 0;
  std::vector<std::vector<std::string>> table;  ///< optional CSV rows, header first
  std::vector<Report> parts;                     ///< per-scenario reports of a batch
};

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

struct CommandSpec {
  std::vector<std::string> inputs;
  std::vector<std::string> optional_inputs;
};

inline const std::map<std::string, CommandSpec>& command_table() {
  static const std::map<std::string, CommandSpec> table = {
      {"transform", {{"mu"}, {}}},
      {"convolve", {{"mu1", "mu2"}, {}}},
      {"product", {{"mu1", "mu2"}, {}}},
      {"pushforward", {{"mu"}, {}}},
      {"moments", {{"mu"}, {}}},
      {"consistency", {{"wd"}, {}}},
      {"tightness", {{"wd"}, {}}},
      {"kakutani", {{"pair"}, {}}},
      {"orthogonality", {{"mu1", "mu2"}, {}}},
      {"decompose", {{"matrix"}, {}}},
      {"split", {{"matrix"}, {}}},
      {"minlos", {{"mu"}, {}}},
      {"sazonov-witness", {{"mu"}, {}}},
      {"verify-identities", {{"mu1"}, {"mu2"}}},
  };
  return table;
}

/// Collects checks and result fields for one scenario.
class Context {
 public:
  Context(const Json& scenario, RunOptions options) : options_(std::move(options)) {
    const Json& inputs = scenario.contains("inputs") ? scenario["inputs"] : empty_;
    for (auto it = inputs.begin(); it != inputs.end(); ++it) {
      if (it->is_string())
        inputs_[it.key()] = read_json_file(options_.base_dir / it->get<std::string>());
      else
        inputs_[it.key()] = *it;
    }
    params_ = scenario.contains("params") ? scenario["params"] : Json::object();
  }

  const Json& input(const std::string& name) const { return inputs_.at(name); }
  bool has_input(const std::string& name) const { return inputs_.count(name) != 0; }
  BallMeasure measure(const std::string& name) const { return io::measure_from_json(input(name), "inputs." + name); }

  const Json& params() const { return params_; }
  bool has_param(const char* key) const { return params_.contains(key); }
  const Json& param(const char* key) const { return io::require_field(params_, key, "params"); }
  Rational rational_param(const char* key) const { return io::rational_from_json(param(key), std::string("params.") + key); }

  void check(const std::string& name, bool pass) {
    checks_.push_back({{"name", name}, {"pass", pass}});
    all_pass_ = all_pass_ && pass;
  }
  Json& result() { return result_; }
  std::vector<std::vector<std::string>>& table() { return table_; }
  const Integer& cap() const { return options_.cap; }

  Report finish(const std::string& command) {
    Json doc;
    doc["command"] = command;
    doc["status"] = all_pass_ ? "ok" : "check_failed";
    doc["checks"] = checks_;
    doc["result"] = result_;
    return {std::move(doc), all_pass_ ? 0 : 1, std::move(table_), {}};
  }

 private:
  RunOptions options_;
  Json empty_ = Json::object();
  std::map<std::string, Json> inputs_;
  Json params_;
  Json checks_ = Json::array();
  Json result_ = Json::object();
  bool all_pass_ = true;
  std::vector<std::vector<std::string>> table_;
};

inline void require_lattice_within_cap(const BallMeasure& mu, const Integer& cap) {
  const long span = std::max(0L, mu.resolution() + mu.support_depth());
  const Integer count = ipow(mu.prime(), static_cast<unsigned long>(span * mu.dim()));
  if (count > cap) throw CapExceeded("admissible lattice of " + count.get_str() + " points exceeds the cap");
}

inline std::string point_string(const Point& z) {
  std::string s = "(";
  for (std::size_t i = 0; i < z.size(); ++i) s += (i ? "," : "") + to_string(z[i]);
  return s + ")";
}

inline std::string coeffs_string(const CyclotomicElement& x) {
  const CyclotomicElement y = x.minimal_level();
  std::string s;
  for (std::size_t i = 0; i < y.coeffs().size(); ++i) s += (i ? " " : "") + to_string(y.coeffs()[i]);
  return s;
}

inline std::vector<Point> lattice_points(const Context& ctx, const BallMeasure& mu) {
  if (ctx.has_param("points")) {
    std::vector<Point> pts;
    for (const auto& z : ctx.param("points")) pts.push_back(io::point_from_json(z, "params.points"));
    return pts;
  }
  require_lattice_within_cap(mu, ctx.cap());
  return admissible_lattice(mu);
}

inline void run_transform(Context& ctx) {
  const BallMeasure mu = ctx.measure("mu");
  Json table = Json::array();
  ctx.table().push_back({"z", "level", "coeffs"});
  for (const auto& z : lattice_points(ctx, mu)) {
    const CyclotomicElement t = fourier_stieltjes(mu, z);
    table.push_back({{"z", io::point_to_json(z)}, {"value", io::cyclotomic_to_json(t)}});
    ctx.table().push_back({point_string(z), std::to_string(t.minimal_level().level()), coeffs_string(t)});
  }
  ctx.result()["table"] = std::move(table);
  const Point zero(static_cast<std::size_t>(mu.dim()), Rational(0));
  ctx.check("theta(0) = mu(X)", fourier_stieltjes(mu, zero) == CyclotomicElement::constant(mu.prime(), mu.total_mass()));
}

inline bool convolution_theorem_holds(const BallMeasure& a, const BallMeasure& b, const Integer& cap) {
  const BallMeasure c = convolve(a, b);
  const auto [x, y] = unify_resolution(a, b);
  require_lattice_within_cap(c, cap);
  for (const auto& z : admissible_lattice(c))
    if (fourier_stieltjes(c, z) != fourier_stieltjes(x, z) * fourier_stieltjes(y, z)) return false;
  return true;
}

inline bool product_factorization_holds(const BallMeasure& a, const BallMeasure& b, const Integer& cap) {
  const BallMeasure c = product_measure(a, b);
  const auto [x, y] = unify_resolution(a, b);
  require_lattice_within_cap(c, cap);
  const auto split = static_cast<std::ptrdiff_t>(a.dim());
  for (const auto& z : admissible_lattice(c)) {
    const Point z1(z.begin(), z.begin() + split);
    const Point z2(z.begin() + split, z.end());
    if (fourier_stieltjes(c, z) != fourier_stieltjes(x, z1) * fourier_stieltjes(y, z2)) return false;
  }
  return true;
}

/// θ_ν(z) = θ_μ(T^t z) for ν = T_* μ, on ν's admissible lattice.
inline bool pushforward_adjoint_holds(const BallMeasure& mu, const RationalMatrix& t, const Integer& cap) {
  const BallMeasure nu = pushforward(mu, t);
  require_lattice_within_cap(nu, cap);
  const RationalMatrix tt = t.transpose();
  for (const auto& z : admissible_lattice(nu))
    if (fourier_stieltjes(nu, z) != fourier_stieltjes(mu, tt * z)) return false;
  return true;
}

inline void run_convolve(Context& ctx) {
  const BallMeasure a = ctx.measure("mu1");
  const BallMeasure b = ctx.measure("mu2");
  ctx.result()["measure"] = io::measure_to_json(convolve(a, b));
  ctx.check("theta(mu1*mu2) = theta(mu1) theta(mu2)", convolution_theorem_holds(a, b, ctx.cap()));
}

inline void run_product(Context& ctx) {
  const BallMeasure a = ctx.measure("mu1");
  const BallMeasure b = ctx.measure("mu2");
  ctx.result()["measure"] = io::measure_to_json(product_measure(a, b));
  ctx.check("theta(mu1 x mu2)(z1,z2) = theta(mu1)(z1) theta(mu2)(z2)", product_factorization_holds(a, b, ctx.cap()));
}

inline RationalMatrix rectangular_from_json(const Json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array()) throw SchemaError(where + ": matrix must be a non-empty array of rows");
  RationalMatrix t(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != t.cols()) throw SchemaError(where + ": ragged matrix");
    for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) = io::rational_from_json(rows[i][j], where);
  }
  return t;
}

inline void run_pushforward(Context& ctx) {
  const BallMeasure mu = ctx.measure("mu");
  const RationalMatrix t = rectangular_from_json(ctx.param("matrix"), "params.matrix");
  const BallMeasure nu = pushforward(mu, t);
  ctx.result()["measure"] = io::measure_to_json(nu);
  ctx.check("total mass preserved", nu.total_mass() == mu.total_mass());
  ctx.check("theta(T_* mu) = theta(mu) o T^t", pushforward_adjoint_holds(mu, t, ctx.cap()));
}

inline double double_param(const Context& ctx, const char* key) {
  const Json& v = ctx.param(key);
  if (v.is_number()) return v.get<double>();
  return io::rational_from_json(v, std::string("params.") + key).get_d();
}

inline void run_moments(Context& ctx) {
  const BallMeasure mu = ctx.measure("mu");
  const Point z = io::point_from_json(ctx.param("z"), "params.z");
  const double q = double_param(ctx, "q");
  const Approximation a = weak_q_moment(mu, z, q);
  ctx.result()["psi"] = io::approx_to_json(a.value, a.error_bound);
  ctx.check("error bound is finite", std::isfinite(a.error_bound));
}

inline Json violation_to_json(const ConsistencyViolation& v) {
  return {{"lower_level", v.lower},
          {"upper_level", v.upper},
          {"resolution", v.resolution},
          {"cell", io::point_to_json(v.cell)},
          {"lower_weight", io::rational_to_json(v.lower_weight)},
          {"projected_weight", io::rational_to_json(v.projected_weight)}};
}

inline void run_consistency(Context& ctx) {
  const WeakDistribution wd = io::weak_from_json(ctx.input("wd"), "inputs.wd");
  const ConsistencyReport r = check_consistency(wd);
  ctx.result()["pairs_checked"] = r.pairs_checked;
  if (r.violation) ctx.result()["violation"] = violation_to_json(*r.violation);
  ctx.check("adjacent levels are consistent", r.ok);
}

inline void run_tightness(Context& ctx) {
  const WeakDistribution wd = io::weak_from_json(ctx.input("wd"), "inputs.wd");
  std::vector<std::pair<Rational, Rational>> schedule;
  for (const auto& e : ctx.param("schedule"))
    schedule.emplace_back(io::rational_from_json(io::require_field(e, "c", "params.schedule"), "params.schedule.c"),
                          io::rational_from_json(io::require_field(e, "r", "params.schedule"), "params.schedule.r"));
  const TightnessReport r = check_tightness(wd, schedule);
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e = {{"c", io::rational_to_json(c.c)}, {"r", io::rational_to_json(c.r)}, {"pass", c.pass}, {"worst", io::rational_to_json(c.worst)}};
    if (c.witness_level) e["witness_level"] = *c.witness_level;
    checks.push_back(std::move(e));
    ctx.check("outside B(0," + to_string(c.r) + ") <= " + to_string(c.c), c.pass);
  }
  ctx.result()["schedule"] = std::move(checks);
  ctx.result()["sup_level_norm"] = io::rational_to_json(r.sup_level_norm);
}

/// Exact ∫h dμ = ∫hρ dν on the truncated products, for h = 1 and for the
/// indicator of every cell charged by either side.
inline bool truncated_change_of_measure(const ProductPair& pp, const KakutaniDecision& d, std::size_t n) {
  const auto [mu, nu] = truncated_product(pp, n);
  const DensityFn q = partial_density(d, n);
  std::vector<RationalFn> tests{constant_fn(mu.prime(), mu.dim(), mu.resolution(), Rational(1))};
  std::set<Point> cells;
  for (const auto& [c, w] : mu.cells()) cells.insert(c);
  for (const auto& [c, w] : nu.cells()) cells.insert(c);
  for (const auto& c : cells) tests.push_back(RationalFn(mu.prime(), mu.dim(), mu.resolution(), Rational(0)).set(c, Rational(1)));
  for (const auto& h : tests)
    if (!change_of_measure_holds(h, mu, q, nu)) return false;
  return true;
}

inline void run_kakutani(Context& ctx) {
  const ProductPair pp = io::product_pair_from_json(ctx.input("pair"), "inputs.pair");
  const KakutaniDecision d = kakutani_decide(pp);
  Json& r = ctx.result();
  r["verdict"] = to_string(d.verdict);
  r["betas"] = io::rationals_to_json(d.betas);
  r["partial_products"] = io::rationals_to_json(d.partial_products);
  r["prefix_product"] = io::rational_to_json(d.prefix_product);
  if (d.tail_ratio) r["tail_ratio"] = io::rational_to_json(*d.tail_ratio);
  r["product_limit"] = d.verdict == Verdict::Singular ? io::rational_to_json(Rational(0)) : io::rational_to_json(d.prefix_product);

  bool bounded = true;
  for (const auto& b : d.betas) bounded = bounded && b > 0 && b <= 1;
  ctx.check("0 < beta_j <= 1", bounded);
  bool monotone = true;
  for (std::size_t j = 1; j < d.partial_products.size(); ++j) monotone = monotone && d.partial_products[j] <= d.partial_products[j - 1];
  ctx.check("partial products nonincreasing", monotone);
  if (d.verdict == Verdict::Equivalent) {
    const std::size_t upto = std::min<std::size_t>(pp.factors.size(), 6);
    bool ok = true;
    for (std::size_t n = 1; n <= upto; ++n) ok = ok && truncated_change_of_measure(pp, d, n);
    ctx.check("change of measure on truncated products", ok);
  }
}

inline void run_orthogonality(Context& ctx) {
  const BallMeasure a = ctx.measure("mu1");
  const BallMeasure b = ctx.measure("mu2");
  const Orthogonality o = orthogonality_check(a, b);
  ctx.result()["verdict"] = o.orthogonal ? "Orthogonal" : "Overlapping";
  if (o.witness) ctx.result()["witness"] = io::point_to_json(*o.witness);
  const Orthogonality back = orthogonality_check(b, a);
  ctx.check("verdict is symmetric", back.orthogonal == o.orthogonal && back.witness == o.witness);
}

inline bool is_symmetric_matrix(const RationalMatrix& a) { return a == a.transpose(); }

inline void run_decompose(Context& ctx) {
  const PerturbationOperator a = io::operator_from_json(ctx.input("matrix"), "inputs.matrix");
  const Decomposition d = gauss_decompose(a.block);
  Json& r = ctx.result();
  r["S"] = io::matrix_to_json(d.s);
  r["C"] = io::matrix_to_json(d.c);
  r["D"] = io::matrix_to_json(d.d);
  r["E"] = io::matrix_to_json(d.e);
  r["det"] = io::rational_to_json(det(a.block));
  r["permutation_cycles"] = d.cycles;
  ctx.check("S C D E = A", d.product() == a.block);
  Rational prod(1);
  for (std::size_t k = 0; k < a.dim(); ++k) prod *= d.d(k, k);
  ctx.check("det(D) = det(A)", prod == det(a.block));
  if (is_symmetric_matrix(a.block) && d.cycles.empty())
    ctx.check("symmetric: E = C^t and S = I", d.e == d.c.transpose() && d.s == RationalMatrix::identity(a.dim()));
}

inline void run_split(Context& ctx) {
  const PerturbationOperator a = io::operator_from_json(ctx.input("matrix"), "inputs.matrix");
  const Rational c = ctx.has_param("c") ? ctx.rational_param("c") : make_rational(1, a.p);
  const IsometrySplit s = split_isometry(a, c);
  Json& r = ctx.result();
  r["n"] = s.n;
  r["A_prime"] = io::matrix_to_json(s.a_prime);
  r["A_second"] = io::matrix_to_json(s.a_second);
  r["det_A"] = io::rational_to_json(s.det_a);
  r["det_A_prime"] = io::rational_to_json(s.det_prime);
  r["det_A_second"] = io::rational_to_json(s.det_second);
  r["bound"] = io::rational_to_json(s.bound);
  ctx.check("A' A'' = A", s.a_prime * s.a_second == a.block);
  ctx.check("det(A') det(A'') = det(A)", s.det_prime * s.det_second == s.det_a);
  ctx.check("|det(A'')|_p = 1", padic_norm(s.det_second, a.p) == 1);
  ctx.check("|A'' - I| <= c", s.bound <= c);
}

inline void run_minlos(Context& ctx) {
  const BallMeasure mu = ctx.measure("mu");
  const MinlosWitness w = minlos_sazonov_witness(mu, ctx.rational_param("r"));
  ctx.result()["moment_over_pi2"] = io::matrix_to_json(w.moment_over_pi2);
  ctx.result()["rounded"] = io::matrix_to_json(w.rounded);
  ctx.result()["xi"] = io::matrix_to_json(w.xi);
  ctx.result()["certified"] = w.certified;
  ctx.check("value-group rounding certified", w.certified);
}

inline void run_sazonov(Context& ctx) {
  const BallMeasure mu = ctx.measure("mu");
  const Rational eps = ctx.rational_param("eps");
  const SazonovWitness w = sazonov_witness(mu, eps);
  ctx.result()["radii"] = io::rationals_to_json(w.radii);
  ctx.result()["captured"] = io::rational_to_json(w.captured);
  ctx.check("captured >= 1 - eps", w.captured >= 1 - eps);
  bool minimal = true;
  const Rational floor_radius = rational_pow(mu.prime(), -mu.resolution());
  for (std::size_t k = 0; k < w.radii.size(); ++k) {
    if (w.radii[k] <= floor_radius) continue;
    std::vector<Rational> smaller = w.radii;
    smaller[k] /= mu.prime();
    minimal = minimal && box_capture(mu, smaller) < 1 - eps;
  }
  ctx.check("box is coordinatewise minimal", minimal);
}

/// Transform identities for one or two measures.
inline void run_verify_identities(Context& ctx) {
  const BallMeasure a = ctx.measure("mu1");
  std::vector<BallMeasure> mus{a};
  if (ctx.has_input("mu2")) mus.push_back(ctx.measure("mu2"));
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const auto& mu = mus[i];
    const std::string tag = "mu" + std::to_string(i + 1);
    const Point zero(static_cast<std::size_t>(mu.dim()), Rational(0));
    ctx.check(tag + ": theta(0) = mu(X)", fourier_stieltjes(mu, zero) == CyclotomicElement::constant(mu.prime(), mu.total_mass()));
    require_lattice_within_cap(mu, ctx.cap());
    bool conj = true;
    const BallMeasure neg = negate(mu);
    for (const auto& z : admissible_lattice(mu)) conj = conj && fourier_stieltjes(neg, z) == fourier_stieltjes(mu, z).conjugate();
    ctx.check(tag + ": theta(-mu) = conj theta(mu)", conj);
    ctx.check(tag + ": symmetric <=> real transform", is_symmetric(mu) == has_real_transform(mu));
  }
  if (mus.size() == 2 && mus[0].dim() == mus[1].dim()) {
    ctx.check("convolution theorem", convolution_theorem_holds(mus[0], mus[1], ctx.cap()));
    ctx.check("product factorization", product_factorization_holds(mus[0], mus[1], ctx.cap()));
  }
}

inline void validate_scenario(const Json& scenario) {
  if (!scenario.is_object()) throw SchemaError("scenario must be an object");
  const Json& command = io::require_field(scenario, "command", "scenario");
  if (!command.is_string()) throw SchemaError("scenario: command must be a string");
  const auto it = command_table().find(command.get<std::string>());
  if (it == command_table().end()) throw SchemaError("scenario: unknown command \"" + command.get<std::string>() + "\"");
  const Json& inputs = io::require_field(scenario, "inputs", "scenario");
  if (!inputs.is_object()) throw SchemaError("scenario: inputs must be an object");
  for (const auto& name : it->second.inputs)
    if (!inputs.contains(name)) throw SchemaError("scenario: command needs input \"" + name + "\"");
  for (auto in = inputs.begin(); in != inputs.end(); ++in) {
    const auto& spec = it->second;
    const bool known = std::find(spec.inputs.begin(), spec.inputs.end(), in.key()) != spec.inputs.end() ||
                       std::find(spec.optional_inputs.begin(), spec.optional_inputs.end(), in.key()) != spec.optional_inputs.end();
    if (!known) throw SchemaError("scenario: unexpected input \"" + in.key() + "\"");
    if (!in->is_object() && !in->is_string()) throw SchemaError("scenario: input \"" + in.key() + "\" must be a document or a path");
  }
  if (scenario.contains("params") && !scenario["params"].is_object()) throw SchemaError("scenario: params must be an object");
}

inline Report error_report(const std::string& command, const std::string& module, const std::string& name, const std::string& message) {
  Json doc;
  doc["command"] = command;
  doc["status"] = "error";
  doc["error"] = {{"module", module}, {"name", name}, {"message", message}};
  doc["checks"] = Json::array();
  return {std::move(doc), 2, {}, {}};
}

inline Report run_scenario(const Json& scenario, const RunOptions& options = {}) {
  const std::string command =
      scenario.is_object() && scenario.contains("command") && scenario["command"].is_string() ? scenario["command"].get<std::string>() : "";
  try {
    validate_scenario(scenario);
    Context ctx(scenario, options);
    static const std::map<std::string, std::function<void(Context&)>> handlers = {
        {"transform", run_transform},         {"convolve", run_convolve},
        {"product", run_product},             {"pushforward", run_pushforward},
        {"moments", run_moments},             {"consistency", run_consistency},
        {"tightness", run_tightness},         {"kakutani", run_kakutani},
        {"orthogonality", run_orthogonality}, {"decompose", run_decompose},
        {"split", run_split},                 {"minlos", run_minlos},
        {"sazonov-witness", run_sazonov},     {"verify-identities", run_verify_identities},
    };
    handlers.at(command)(ctx);
    return ctx.finish(command);
  } catch (const Error& e) {
    return error_report(command, e.module(), e.name(), e.what());
  } catch (const Json::exception& e) {
    return error_report(command, "cli", "SchemaError", e.what());
  }
}

/// Runs every scenario of a batch concurrently; reports keep the batch order
/// and the exit code is the worst one.
inline Report run_batch(const Json& batch, const RunOptions& options = {}) {
  std::vector<std::future<Report>> pending;
  for (const auto& scenario : batch) pending.push_back(std::async(std::launch::async, [&scenario, &options] { return run_scenario(scenario, options); }));
  Report out;
  out.document["command"] = "batch";
  out.document["reports"] = Json::array();
  for (auto& f : pending) {
    Report r = f.get();
    out.exit_code = std::max(out.exit_code, r.exit_code);
    out.document["reports"].push_back(r.document);
    out.parts.push_back(std::move(r));
  }
  out.document["status"] = out.exit_code == 0 ? "ok" : (out.exit_code == 1 ? "check_failed" : "error");
  return out;
}

/// A file holds one scenario object or a batch array of them.
inline Report run_scenario_file(const std::filesystem::path& path, Integer cap = Integer(1000000)) {
  Json scenario;
  try {
    scenario = read_json_file(path);
  } catch (const Error& e) {
    return error_report("", e.module(), e.name(), e.what());
  }
  const RunOptions options{path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path(), cap};
  if (scenario.is_array()) return run_batch(scenario, options);
  return run_scenario(scenario, options);
}

/// Canonical serialization: sorted keys, two-space indent, trailing newline.
inline std::string serialize(const Report& r) { return r.document.dump(2) + "\n"; }

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// checks.csv always; table.csv when the command produced a table.
inline void write_csv(const Report& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  if (r.document.contains("reports")) {
    for (std::size_t i = 0; i < r.parts.size(); ++i) write_csv(r.parts[i], dir / std::to_string(i));
    return;
  }
  {
    std::ofstream out(dir / "checks.csv");
    out << "name,pass\n";
    for (const auto& c : r.document["checks"]) out << csv_escape(c["name"].get<std::string>()) << ',' << (c["pass"].get<bool>() ? "true" : "false") << '\n';
  }
  if (!r.table.empty()) {
    std::ofstream out(dir / "table.csv");
    for (const auto& row : r.table) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
      out << '\n';
    }
  }
}

/// Validates a standalone document of any supported type; returns its kind.
inline std::string validate_document(const Json& j) {
  const std::string kind = io::detect_document(j);
  if (kind == "scenario") validate_scenario(j);
  else if (kind == "measure") (void)io::measure_from_json(j);
  else if (kind == "weak_distribution") (void)io::weak_from_json(j);
  else if (kind == "product_pair") validate_product_pair(io::product_pair_from_json(j));
  else if (kind == "matrix") (void)io::operator_from_json(j);
  else if (kind == "cyclotomic") (void)io::cyclotomic_from_json(j);
  else if (kind == "function") (void)io::rational_fn_from_json(j);
  else throw SchemaError("unrecognized document");
  return kind;
}

}  // namespace nam::cli

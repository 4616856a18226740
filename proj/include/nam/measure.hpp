#pragma once

/// @file measure.hpp
/// @brief Locally constant measures on Q_p^n: finitely many balls of radius
///        p^{-m}, each carrying an exact rational weight.
///
/// A measure lives on the algebra generated by its resolution-m cells. Cells
/// are keyed by canonical centers (every coordinate in Z[1/p] ∩ [0, p^m)),
/// and std::map keeps them in one deterministic order.

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "nam/padic.hpp"

namespace nam {

using Point = std::vector<Rational>;

inline Point canonical_center(const Point& x, long p, long m) {
  Point c;
  c.reserve(x.size());
  for (const auto& xi : x) c.push_back(reduce_mod(xi, p, m));
  return c;
}

/// x ∈ B(center, p^{-j}) in the sup norm.
inline bool ball_contains(const Point& center, long j, const Point& x, long p) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Rational diff = x[k] - center[k];
    if (diff != 0 && valuation(diff, p) < j) return false;
  }
  return true;
}

/// ‖x‖ = max_k |x_k|_p.
inline Rational sup_norm(const Point& x, long p) {
  Rational best(0);
  for (const auto& xi : x) {
    const Rational nk = padic_norm(xi, p);
    if (nk > best) best = nk;
  }
  return best;
}

inline Rational dot(const Point& a, const Point& b) {
  Rational s(0);
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

/// Calls fn for every canonical center at resolution `fine` inside the cell
/// B(center, p^{-coarse}); `center` must already be canonical at `coarse`.
inline void for_each_subcell(const Point& center, long p, long coarse, long fine,
                             const std::function<void(const Point&)>& fn) {
  if (fine < coarse) throw ResolutionError("subcells need a finer resolution");
  const std::size_t n = center.size();
  const Integer count = ipow(p, static_cast<unsigned long>(fine - coarse));
  const Rational step = rational_pow(p, coarse);
  std::vector<Integer> digit(n, Integer(0));
  Point x = center;
  for (;;) {
    fn(x);
    std::size_t k = 0;
    for (; k < n; ++k) {
      digit[k] += 1;
      if (digit[k] < count) break;
      digit[k] = 0;
    }
    if (k == n) break;
    for (std::size_t i = 0; i < n; ++i) x[i] = center[i] + step * Rational(digit[i]);
  }
}

/// Canonical centers of the resolution-m cells inside B(0, p^{-j}), j <= m.
inline std::vector<Point> cells_in_ball(long p, int n, long m, long j) {
  if (j > m) throw ResolutionError("ball finer than the cell resolution");
  std::vector<Point> out;
  const Integer count = ipow(p, static_cast<unsigned long>(m - j));
  const Rational step = rational_pow(p, j);
  std::vector<Integer> digit(static_cast<std::size_t>(n), Integer(0));
  for (;;) {
    Point x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = step * Rational(digit[static_cast<std::size_t>(i)]);
    out.push_back(std::move(x));
    int k = 0;
    for (; k < n; ++k) {
      auto& d = digit[static_cast<std::size_t>(k)];
      d += 1;
      if (d < count) break;
      d = 0;
    }
    if (k == n) break;
  }
  return out;
}

/// The closed ball B(center, p^{-j}).
struct Ball {
  Point center;
  long j = 0;
};

/// A finite union of balls. An empty list is the empty set.
class ClopenSet {
 public:
  ClopenSet() = default;
  explicit ClopenSet(std::vector<Ball> balls) : balls_(std::move(balls)) {}

  static ClopenSet ball(Point center, long j) { return ClopenSet({Ball{std::move(center), j}}); }

  const std::vector<Ball>& balls() const noexcept { return balls_; }
  bool empty() const noexcept { return balls_.empty(); }

  /// Finest radius exponent in use.
  long finest() const {
    long best = LONG_MIN;
    for (const auto& b : balls_) best = std::max(best, b.j);
    return best;
  }

  bool contains(const Point& x, long p) const {
    for (const auto& b : balls_)
      if (ball_contains(b.center, b.j, x, p)) return true;
    return false;
  }

  ClopenSet& add(Point center, long j) {
    balls_.push_back(Ball{std::move(center), j});
    return *this;
  }

 private:
  std::vector<Ball> balls_;
};

class BallMeasure {
 public:
  using CellMap = std::map<Point, Rational>;

  BallMeasure(long p, int n, long m, ValueMode mode = ValueMode::real(), bool refinable = false)
      : p_(p), n_(n), m_(m), mode_(mode), refinable_(refinable) {
    require_prime(p_);
    if (n_ < 1) throw InvalidArgument("dimension must be >= 1");
    if (mode_.is_sadic() && mode_.s() == p_) throw InvalidArgument("s-adic values need s != p");
  }

  long prime() const noexcept { return p_; }
  int dim() const noexcept { return n_; }
  long resolution() const noexcept { return m_; }
  const ValueMode& mode() const noexcept { return mode_; }
  bool refinable() const noexcept { return refinable_; }
  void set_refinable(bool flag) noexcept { refinable_ = flag; }
  const CellMap& cells() const noexcept { return cells_; }
  bool empty() const noexcept { return cells_.empty(); }

  Point cell_of(const Point& x) const {
    check_point(x);
    return canonical_center(x, p_, m_);
  }

  /// Adds w to the cell containing x; cells whose weight cancels are dropped.
  BallMeasure& add(const Point& x, const Rational& w) {
    if (w == 0) return *this;
    Point c = cell_of(x);
    auto it = cells_.find(c);
    if (it == cells_.end()) {
      cells_.emplace(std::move(c), w);
    } else {
      it->second += w;
      if (it->second == 0) cells_.erase(it);
    }
    return *this;
  }

  /// Like add() but rejects a second entry for the same cell.
  BallMeasure& insert_unique(const Point& x, const Rational& w) {
    Point c = cell_of(x);
    if (cells_.count(c) != 0) throw DuplicateCell("duplicate cell in measure");
    if (w != 0) cells_.emplace(std::move(c), w);
    return *this;
  }

  Rational weight_at(const Point& x) const {
    const auto it = cells_.find(cell_of(x));
    return it == cells_.end() ? Rational(0) : it->second;
  }

  /// μ(X).
  Rational total_mass() const {
    Rational s(0);
    for (const auto& [c, w] : cells_) s += w;
    return s;
  }

  /// Real: nonnegative weights summing to 1. S-adic: sum 1 and max |w|_s = 1.
  bool is_probability() const {
    if (total_mass() != 1) return false;
    if (mode_.is_real()) {
      for (const auto& [c, w] : cells_)
        if (w < 0) return false;
      return true;
    }
    Rational mx(0);
    for (const auto& [c, w] : cells_) mx = std::max(mx, mode_.abs(w));
    return mx == 1;
  }

  /// Smallest K >= 0 with every center in p^{-K} Z_p^n.
  long support_depth() const {
    long depth = 0;
    for (const auto& [c, w] : cells_)
      for (const auto& x : c)
        if (x != 0) depth = std::max(depth, -valuation(x, p_));
    return depth;
  }

  /// The refinable flag is not part of equality.
  friend bool operator==(const BallMeasure& a, const BallMeasure& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.m_ == b.m_ && a.mode_ == b.mode_ && a.cells_ == b.cells_;
  }

  friend std::ostream& operator<<(std::ostream& os, const BallMeasure& mu) {
    os << "BallMeasure(p=" << mu.p_ << ", n=" << mu.n_ << ", m=" << mu.m_ << ", " << mu.mode_.to_string() << ") {";
    for (const auto& [c, w] : mu.cells_) {
      os << " (";
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << to_string(c[i]);
      os << "):" << to_string(w);
    }
    return os << " }";
  }

 private:
  void check_point(const Point& x) const {
    if (static_cast<int>(x.size()) != n_)
      throw InvalidArgument("point of dimension " + std::to_string(x.size()) + " in Q_p^" + std::to_string(n_));
  }

  long p_;
  int n_;
  long m_;
  ValueMode mode_;
  bool refinable_;
  CellMap cells_;
};

inline void require_same_space(const BallMeasure& a, const BallMeasure& b) {
  if (a.prime() != b.prime()) throw PrimeMismatch("measures over different primes");
  if (a.mode() != b.mode()) throw ModeMismatch("measures with different value modes");
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

inline BallMeasure dirac(long p, int n, long m, const Point& at, ValueMode mode = ValueMode::real()) {
  BallMeasure mu(p, n, m, mode, false);
  mu.add(at, Rational(1));
  return mu;
}

inline BallMeasure dirac_origin(long p, int n, long m, ValueMode mode = ValueMode::real()) {
  return dirac(p, n, m, Point(static_cast<std::size_t>(n), Rational(0)), mode);
}

/// Normalized Haar measure of B(0, p^{-j}) ⊂ Q_p^n at resolution m >= j.
/// j = 0 gives Haar measure on Z_p^n. The result is uniformly refinable.
inline BallMeasure haar(long p, int n, long m, ValueMode mode = ValueMode::real(), long j = 0) {
  BallMeasure mu(p, n, m, mode, true);
  const auto centers = cells_in_ball(p, n, m, j);
  const Rational w = make_rational(Integer(1), Integer(static_cast<long>(centers.size())));
  for (const auto& c : centers) mu.insert_unique(c, w);
  return mu;
}

// ---------------------------------------------------------------------------
// Resolution changes
// ---------------------------------------------------------------------------

/// Splits every cell into p^{n(m'-m)} subcells of equal weight.
inline BallMeasure refine(const BallMeasure& mu, long fine) {
  if (fine < mu.resolution()) throw ResolutionError("refine needs a finer resolution");
  if (fine == mu.resolution()) return mu;
  if (!mu.refinable()) throw ResolutionError("measure is not uniformly refinable");
  BallMeasure out(mu.prime(), mu.dim(), fine, mu.mode(), true);
  const Rational share = make_rational(Integer(1), ipow(mu.prime(), static_cast<unsigned long>(mu.dim() * (fine - mu.resolution()))));
  for (const auto& [c, w] : mu.cells()) {
    const Rational piece = w * share;
    for_each_subcell(c, mu.prime(), mu.resolution(), fine, [&](const Point& x) { out.insert_unique(x, piece); });
  }
  return out;
}

/// Merges cells into the coarser resolution; always exact.
inline BallMeasure coarsen(const BallMeasure& mu, long coarse) {
  if (coarse > mu.resolution()) throw ResolutionError("coarsen needs a coarser resolution");
  BallMeasure out(mu.prime(), mu.dim(), coarse, mu.mode(), mu.refinable());
  for (const auto& [c, w] : mu.cells()) out.add(c, w);
  return out;
}

/// Refines (when allowed) or coarsens to the requested resolution.
inline BallMeasure at_resolution(const BallMeasure& mu, long m) {
  return m >= mu.resolution() ? refine(mu, m) : coarsen(mu, m);
}

/// Brings two measures to max(m1, m2), refining the coarser one.
inline std::pair<BallMeasure, BallMeasure> unify_resolution(const BallMeasure& a, const BallMeasure& b) {
  const long m = std::max(a.resolution(), b.resolution());
  return {refine(a, m), refine(b, m)};
}

// ---------------------------------------------------------------------------
// Evaluation and norms
// ---------------------------------------------------------------------------

/// μ(A) for a clopen set aligned to the cells (or finer, when refinable).
inline ValueScalar measure_of(const BallMeasure& mu, const ClopenSet& set) {
  if (set.empty()) return {Rational(0), mu.mode()};
  for (const auto& b : set.balls())
    if (static_cast<int>(b.center.size()) != mu.dim()) throw InvalidArgument("ball dimension mismatch");
  const long finest = set.finest();
  if (finest > mu.resolution()) {
    if (!mu.refinable())
      throw ResolutionError("set of radius p^-" + std::to_string(finest) + " below cell radius p^-" +
                            std::to_string(mu.resolution()));
    return measure_of(refine(mu, finest), set);
  }
  Rational s(0);
  for (const auto& [c, w] : mu.cells())
    if (set.contains(c, mu.prime())) s += w;
  return {s, mu.mode()};
}

/// ‖A‖_μ restricted to cells satisfying `inside`: Σ|w| in real mode,
/// max |w|_s in s-adic mode.
inline Rational restricted_norm(const BallMeasure& mu, const std::function<bool(const Point&)>& inside) {
  Rational acc(0);
  for (const auto& [c, w] : mu.cells()) {
    if (!inside(c)) continue;
    const Rational a = mu.mode().abs(w);
    if (mu.mode().is_real())
      acc += a;
    else if (a > acc)
      acc = a;
  }
  return acc;
}

/// ‖X‖_μ (total variation in real mode).
inline Rational norm(const BallMeasure& mu) {
  return restricted_norm(mu, [](const Point&) { return true; });
}

/// N_μ(x): the mode's absolute value of the weight of x's cell.
inline Rational pointwise_norm(const BallMeasure& mu, const Point& x) { return mu.mode().abs(mu.weight_at(x)); }

// ---------------------------------------------------------------------------
// Locally constant functions
// ---------------------------------------------------------------------------

/// A function constant on the resolution-m cells of Q_p^n, equal to a
/// default value outside finitely many listed cells.
template <class V>
class LocallyConstantFn {
 public:
  LocallyConstantFn(long p, int n, long m, V default_value)
      : p_(p), n_(n), m_(m), default_(std::move(default_value)) {
    require_prime(p_);
  }

  long prime() const noexcept { return p_; }
  int dim() const noexcept { return n_; }
  long resolution() const noexcept { return m_; }
  const V& default_value() const noexcept { return default_; }
  const std::map<Point, V>& values() const noexcept { return values_; }

  LocallyConstantFn& set(const Point& x, V value) {
    if (static_cast<int>(x.size()) != n_) throw InvalidArgument("function point dimension mismatch");
    values_.insert_or_assign(canonical_center(x, p_, m_), std::move(value));
    return *this;
  }

  const V& operator()(const Point& x) const {
    const auto it = values_.find(canonical_center(x, p_, m_));
    return it == values_.end() ? default_ : it->second;
  }

  friend bool operator==(const LocallyConstantFn&, const LocallyConstantFn&) = default;

 private:
  long p_;
  int n_;
  long m_;
  V default_;
  std::map<Point, V> values_;
};

using RationalFn = LocallyConstantFn<Rational>;

inline RationalFn constant_fn(long p, int n, long m, const Rational& value) { return RationalFn(p, n, m, value); }

/// Indicator of an aligned clopen set at resolution m.
inline RationalFn indicator(const ClopenSet& set, long p, int n, long m) {
  RationalFn f(p, n, m, Rational(0));
  for (const auto& b : set.balls()) {
    if (b.j > m) throw ResolutionError("indicator ball finer than the function resolution");
    const Point base = canonical_center(b.center, p, b.j);
    for_each_subcell(base, p, b.j, m, [&](const Point& x) { f.set(x, Rational(1)); });
  }
  return f;
}

/// The same function written at a finer resolution.
template <class V>
LocallyConstantFn<V> refine_fn(const LocallyConstantFn<V>& f, long fine) {
  if (fine < f.resolution()) throw ResolutionError("refine_fn needs a finer resolution");
  LocallyConstantFn<V> out(f.prime(), f.dim(), fine, f.default_value());
  for (const auto& [c, v] : f.values())
    for_each_subcell(c, f.prime(), f.resolution(), fine, [&](const Point& x) { out.set(x, v); });
  return out;
}

/// Pointwise product of two rational functions.
inline RationalFn multiply(const RationalFn& f, const RationalFn& g) {
  if (f.prime() != g.prime() || f.dim() != g.dim()) throw InvalidArgument("function spaces differ");
  const long m = std::max(f.resolution(), g.resolution());
  const RationalFn a = refine_fn(f, m);
  const RationalFn b = refine_fn(g, m);
  RationalFn out(f.prime(), f.dim(), m, Rational(a.default_value() * b.default_value()));
  for (const auto& [c, v] : a.values()) out.set(c, Rational(v * b(c)));
  for (const auto& [c, v] : b.values())
    if (a.values().count(c) == 0) out.set(c, Rational(a(c) * v));
  return out;
}

/// Σ_cells f(c) w_c. The function must be constant on the measure's cells,
/// i.e. its resolution may not exceed the measure's (unless refinable).
template <class V>
V integrate(const LocallyConstantFn<V>& f, const BallMeasure& mu) {
  if (f.prime() != mu.prime() || f.dim() != mu.dim()) throw InvalidArgument("integrand lives on another space");
  if (f.resolution() > mu.resolution()) {
    if (!mu.refinable()) throw ResolutionError("integrand finer than the measure's cells");
    return integrate(f, refine(mu, f.resolution()));
  }
  V acc = f.default_value() * Rational(0);
  for (const auto& [c, w] : mu.cells()) acc = acc + f(c) * w;
  return acc;
}

/// Reflection x -> -x.
inline BallMeasure negate(const BallMeasure& mu) {
  BallMeasure out(mu.prime(), mu.dim(), mu.resolution(), mu.mode(), mu.refinable());
  for (const auto& [c, w] : mu.cells()) {
    Point minus;
    minus.reserve(c.size());
    for (const auto& x : c) minus.push_back(Rational(-x));
    out.add(minus, w);
  }
  return out;
}

inline bool is_symmetric(const BallMeasure& mu) { return negate(mu) == mu; }

}  // namespace nam

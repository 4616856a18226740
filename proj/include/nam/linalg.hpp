#pragma once

/// @file linalg.hpp
/// @brief Exact linear algebra over Q_p for identity-plus-finite-block
///        operators: determinant, the decomposition A = S C D E, the split
///        A = A' A'' with A'' an isometry, and quadratic forms.

#include <vector>

#include "nam/matrix.hpp"
#include "nam/padic.hpp"

namespace nam {

using RationalMatrix = Matrix<Rational>;

/// A = I + F on c_0 where F acts on the first d coordinates only. The
/// leading d x d block of A is stored; beyond it A is the identity.
struct PerturbationOperator {
  long p = 2;
  RationalMatrix block;

  static PerturbationOperator from_perturbation(long p, const RationalMatrix& f) {
    if (!f.square()) throw DimensionMismatch("perturbation block must be square");
    RationalMatrix a = f;
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += 1;
    return {p, std::move(a)};
  }
  std::size_t dim() const noexcept { return block.rows(); }
  RationalMatrix perturbation() const {
    RationalMatrix f = block;
    for (std::size_t i = 0; i < f.rows(); ++i) f(i, i) -= 1;
    return f;
  }
};

inline void require_square(const RationalMatrix& a) {
  if (!a.square()) throw DimensionMismatch("square matrix required, got " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

/// Exact determinant by elimination.
inline Rational det(const RationalMatrix& a) {
  require_square(a);
  RationalMatrix w = a;
  const std::size_t n = w.rows();
  Rational d(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && w(r, k) == 0) ++r;
    if (r == n) return Rational(0);
    if (r != k) {
      w.swap_rows(r, k);
      d = -d;
    }
    d *= w(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (w(i, k) == 0) continue;
      const Rational f = w(i, k) / w(k, k);
      for (std::size_t j = k; j < n; ++j) w(i, j) -= f * w(k, j);
    }
  }
  return d;
}

inline Rational det(const PerturbationOperator& a) { return det(a.block); }

/// Exact inverse by Gauss-Jordan elimination.
inline RationalMatrix inverse(const RationalMatrix& a) {
  require_square(a);
  const std::size_t n = a.rows();
  RationalMatrix w = a;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && w(r, k) == 0) ++r;
    if (r == n) throw SingularMatrix("matrix is singular");
    w.swap_rows(r, k);
    inv.swap_rows(r, k);
    const Rational piv = w(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      w(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || w(i, k) == 0) continue;
      const Rational f = w(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        w(i, j) -= f * w(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

struct Decomposition {
  RationalMatrix s;  ///< permutation matrix, one column negated if the permutation is odd
  RationalMatrix c;  ///< lower unitriangular
  RationalMatrix d;  ///< diagonal
  RationalMatrix e;  ///< upper unitriangular
  std::vector<std::size_t> row_of;              ///< row i of S^{-1}A is row row_of[i] of A
  std::vector<std::vector<std::size_t>> cycles; ///< nontrivial cycles of row_of, 0-based
  Rational determinant;

  RationalMatrix product() const { return s * c * d * e; }
};

inline std::vector<std::vector<std::size_t>> permutation_cycles(const std::vector<std::size_t>& perm) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i] || perm[i] == i) continue;
    std::vector<std::size_t> cycle;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      cycle.push_back(j);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

/// A = S C D E. At elimination step k the pivot is the smallest remaining
/// row with a nonzero entry in column k; rows are never moved otherwise, so
/// S = I whenever every leading minor of A is nonzero. Then
/// D_j = B(1..j)/B(1..j-1), C and E are the minor ratios, with B = S^{-1}A,
/// and det D = det A.
inline Decomposition gauss_decompose(const RationalMatrix& a) {
  require_square(a);
  const std::size_t n = a.rows();
  RationalMatrix w = a;
  RationalMatrix lower = RationalMatrix::identity(n);
  std::vector<std::size_t> row_of(n);
  for (std::size_t i = 0; i < n; ++i) row_of[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && w(r, k) == 0) ++r;
    if (r == n) throw SingularMatrix("matrix is singular (no pivot in column " + std::to_string(k) + ")");
    if (r != k) {
      w.swap_rows(r, k);
      std::swap(row_of[r], row_of[k]);
      for (std::size_t j = 0; j < k; ++j) std::swap(lower(r, j), lower(k, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (w(i, k) == 0) continue;
      const Rational f = w(i, k) / w(k, k);
      lower(i, k) = f;
      for (std::size_t j = k; j < n; ++j) w(i, j) -= f * w(k, j);
    }
  }

  Decomposition out{RationalMatrix(n, n), lower, RationalMatrix(n, n), RationalMatrix::identity(n), row_of, {}, Rational(1)};
  for (std::size_t i = 0; i < n; ++i) out.s(row_of[i], i) = 1;
  for (std::size_t k = 0; k < n; ++k) {
    out.d(k, k) = w(k, k);
    for (std::size_t j = k + 1; j < n; ++j) out.e(k, j) = w(k, j) / w(k, k);
  }
  out.cycles = permutation_cycles(row_of);
  bool odd = false;
  for (const auto& cycle : out.cycles)
    if (cycle.size() % 2 == 0) odd = !odd;
  if (odd) {
    // Flip the last basis vector so det S = 1 and det D = det A. This is
    // S -> S J, C -> J C J, D -> J D with J = diag(1, ..., 1, -1).
    out.s(row_of[n - 1], n - 1) = -1;
    for (std::size_t j = 0; j + 1 < n; ++j) out.c(n - 1, j) = -out.c(n - 1, j);
    out.d(n - 1, n - 1) = -out.d(n - 1, n - 1);
  }
  for (std::size_t k = 0; k < n; ++k) out.determinant *= out.d(k, k);
  return out;
}

/// Largest |M_ij - δ_ij|_p.
inline Rational distance_to_identity(const RationalMatrix& m, long p) {
  Rational out(0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational diff = m(i, j) - Rational(i == j ? 1 : 0);
      out = std::max(out, padic_norm(diff, p));
    }
  return out;
}

/// Leading n x n block of a, extended by the identity.
inline RationalMatrix leading_block_operator(const RationalMatrix& a, std::size_t n) {
  RationalMatrix out = RationalMatrix::identity(a.rows());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, j);
  return out;
}

struct IsometrySplit {
  std::size_t n = 0;       ///< A' differs from I only in its leading n x n block
  RationalMatrix a_prime;  ///< A'
  RationalMatrix a_second; ///< A'' = A'^{-1} A
  Rational det_a;
  Rational det_prime;
  Rational det_second;
  Rational bound;          ///< achieved max |A''_ij - δ_ij|_p, <= c
};

/// A = A' A'' with the smallest n such that A'' is entrywise within c of the
/// identity. c must be a power of p with c <= 1/p; n = d always qualifies.
inline IsometrySplit split_isometry(const PerturbationOperator& a, const Rational& c) {
  const long p = a.p;
  require_square(a.block);
  if (c <= 0 || c > make_rational(1, p) || round_up_to_value_group(c, p) != c)
    throw InvalidArgument("threshold must be a power of p no larger than 1/p");
  const Rational det_a = det(a.block);
  if (det_a == 0) throw SingularMatrix("operator is not invertible");
  for (std::size_t n = 0; n <= a.dim(); ++n) {
    RationalMatrix a1 = leading_block_operator(a.block, n);
    const Rational det1 = det(a1);
    if (det1 == 0) continue;
    RationalMatrix a2 = inverse(a1) * a.block;
    const Rational bound = distance_to_identity(a2, p);
    if (bound > c) continue;
    const Rational det2 = det(a2);
    return {n, std::move(a1), std::move(a2), det_a, det1, det2, bound};
  }
  throw SingularMatrix("no admissible split");
}

/// Σ_j z_j (A z)_j.
inline Rational quadratic_form(const RationalMatrix& a, const std::vector<Rational>& z) {
  require_square(a);
  if (a.cols() != z.size()) throw DimensionMismatch("quadratic form vector has the wrong length");
  const std::vector<Rational> az = a * z;
  Rational s(0);
  for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * az[j];
  return s;
}

inline PadicScalar quadratic_form(const RationalMatrix& a, const std::vector<PadicScalar>& z) {
  if (z.empty()) throw DimensionMismatch("empty vector has no prime");
  std::vector<Rational> v;
  for (const auto& x : z) {
    if (x.prime() != z[0].prime()) throw PrimeMismatch("vector entries over different primes");
    v.push_back(x.value());
  }
  return PadicScalar(z[0].prime(), quadratic_form(a, v));
}

/// max_j |s_j| |z_j|², equal to |Σ s_j z_j²| when the max is attained once.
inline Rational diag_form_norm(const std::vector<Rational>& s, const std::vector<Rational>& z, long p) {
  if (s.size() != z.size()) throw DimensionMismatch("diagonal and vector lengths differ");
  Rational out(0);
  for (std::size_t j = 0; j < s.size(); ++j) {
    const Rational zn = padic_norm(z[j], p);
    out = std::max(out, Rational(padic_norm(s[j], p) * zn * zn));
  }
  return out;
}

/// max_{j,l} |A_jl| |z_j| |z_l|, an ultrametric bound on |quadratic_form|.
inline Rational quadratic_form_bound(const RationalMatrix& a, const std::vector<Rational>& z, long p) {
  require_square(a);
  if (a.cols() != z.size()) throw DimensionMismatch("quadratic form vector has the wrong length");
  Rational out(0);
  for (std::size_t j = 0; j < z.size(); ++j)
    for (std::size_t l = 0; l < z.size(); ++l)
      out = std::max(out, Rational(padic_norm(a(j, l), p) * padic_norm(z[j], p) * padic_norm(z[l], p)));
  return out;
}

}  // namespace nam

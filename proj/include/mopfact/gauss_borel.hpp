#pragma once

// Gauss-Borel (pivot-free LU) factorisation of the r+1 Darboux-shifted moment matrices,
// and extraction of the bidiagonal coefficients from the factors and from leading minors.

#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mopfact/alpha.hpp"
#include "mopfact/errors.hpp"
#include "mopfact/matrix.hpp"
#include "mopfact/moments.hpp"

namespace mopfact {

/// M = A B with A unit-lower-triangular and B upper-triangular with nonzero diagonal.
struct LUPair {
  Matrix A;
  Matrix B;
};

/// Doolittle elimination run until the first vanishing pivot.
///
/// Rows 0..p of B and columns 0..p-1 of A are exact, where p is the zero pivot (or N-1 when
/// there is none). Entries past that are left at zero.
struct PartialLU {
  Matrix A;
  Matrix B;
  std::optional<std::size_t> zero_pivot;

  std::size_t size() const noexcept { return B.rows(); }
  bool complete() const noexcept { return !zero_pivot; }
  /// b_{n,n} is known (possibly zero) for n <= last known pivot.
  bool pivot_known(std::size_t n) const noexcept { return n < size() && (!zero_pivot || n <= *zero_pivot); }
  /// Column n of A is exact.
  bool column_known(std::size_t n) const noexcept { return n < size() && (!zero_pivot || n < *zero_pivot); }
};

inline PartialLU gauss_borel_partial(const Matrix& m) {
  const std::size_t size = m.rows();
  PartialLU out{Matrix::identity(size), Matrix(size, size), std::nullopt};
  auto& A = out.A;
  auto& B = out.B;
  for (std::size_t n = 0; n < size; ++n) {
    for (std::size_t c = n; c < size; ++c) {
      Scalar s = m(n, c);
      for (std::size_t k = 0; k < n; ++k) s -= A(n, k) * B(k, c);
      B(n, c) = s;
    }
    if (B(n, n).is_zero()) {
      out.zero_pivot = n;
      break;
    }
    for (std::size_t i = n + 1; i < size; ++i) {
      Scalar s = m(i, n);
      for (std::size_t k = 0; k < n; ++k) s -= A(i, k) * B(k, n);
      A(i, n) = s / B(n, n);
    }
  }
  return out;
}

/// Full LU factorisation; SingularLeadingMinor(system, n) when Delta_{n+1} = 0.
inline LUPair lu_factorise(const Matrix& m, std::size_t system = 0) {
  auto p = gauss_borel_partial(m);
  if (p.zero_pivot) throw SingularLeadingMinor(system, *p.zero_pivot);
  return {std::move(p.A), std::move(p.B)};
}

/// Moment matrix size N needed so that alpha_0..alpha_K lie in the proven-valid window.
inline std::size_t gauss_borel_size_for(std::size_t count_k, std::size_t r) {
  if (count_k <= r) return 2;
  const std::size_t num = count_k - r;
  return (num + r) / (r + 1) + 2;
}

/// Largest alpha index emitted from N x N truncations: (r+1)(N-2)+r.
inline std::size_t gauss_borel_valid_through(std::size_t size, std::size_t r) {
  if (size < 2) throw Error("at least a 2x2 truncation is needed to extract coefficients");
  return (r + 1) * (size - 2) + r;
}

/// Moment matrices M^[j] of V^[j], j = 0..r, with their (partial) Gauss-Borel factorisations.
struct MomentMatrixSet {
  std::size_t r = 0;
  std::size_t size = 0;
  std::vector<Matrix> moments;
  std::vector<PartialLU> lus;

  /// Full LU pair of system j; throws SingularLeadingMinor if it does not exist at this size.
  LUPair lu(std::size_t j) const {
    const auto& p = lus.at(j);
    if (p.zero_pivot) throw SingularLeadingMinor(j, *p.zero_pivot);
    return {p.A, p.B};
  }
};

/// Builds and factorises M^[0..r] at truncation N. The r+1 factorisations are independent;
/// up to max_threads of them run concurrently.
inline MomentMatrixSet build_moment_matrix_set(const SystemSpec& spec, std::size_t size, unsigned max_threads = 1) {
  const std::size_t r = spec.r();
  if (spec.available_moments() <= required_moment_order(r, size))
    throw MomentTableExhausted(1, required_moment_order(r, size));
  MomentMatrixSet set;
  set.r = r;
  set.size = size;
  for (std::size_t j = 0; j <= r; ++j) set.moments.push_back(build_moment_matrix(ShiftedSystem(spec, j), size));
  set.lus.resize(r + 1);
  if (max_threads <= 1) {
    for (std::size_t j = 0; j <= r; ++j) set.lus[j] = gauss_borel_partial(set.moments[j]);
    return set;
  }
  for (std::size_t start = 0; start <= r; start += max_threads) {
    std::vector<std::future<PartialLU>> jobs;
    for (std::size_t j = start; j <= r && j < start + max_threads; ++j)
      jobs.push_back(std::async(std::launch::async, [&set, j] { return gauss_borel_partial(set.moments[j]); }));
    for (std::size_t j = start; j < start + jobs.size(); ++j) set.lus[j] = jobs[j - start].get();
  }
  return set;
}

/// The two Gauss-Borel expressions for each alpha: diagonal ratios of B and subdiagonal
/// differences of A.
struct AlphaRoutes {
  std::vector<Scalar> ratio;
  std::vector<Scalar> difference;
};

namespace detail {

/// Which pivot (system j, position p) sits in the numerator and denominator of the ratio form.
struct PivotRatio {
  std::size_t num_system, num_pos, den_system, den_pos;
};

inline PivotRatio pivot_ratio_for(std::size_t idx, std::size_t r) {
  const std::size_t n = idx / (r + 1);
  const std::size_t i = idx % (r + 1);
  if (i == 0) return {r, n, 0, n};
  return {i - 1, n + 1, i, n};
}

[[noreturn]] inline void report_zero_pivot(std::size_t idx, std::size_t system, std::size_t pos) {
  if (system == 0) throw SingularLeadingMinor(0, pos);
  throw NoBidiagonalFactorisation(idx, "leading minor of order " + std::to_string(pos + 1) + " of V^[" +
                                           std::to_string(system) + "] vanishes");
}

}  // namespace detail

/// alpha_0..alpha_K by both Gauss-Borel expressions, K = (r+1)(N-2)+r.
///
/// A zero pivot of V^[0] is reported as SingularLeadingMinor; a zero pivot of any shifted system
/// shows up first as a vanishing alpha and is reported as NoBidiagonalFactorisation.
inline AlphaRoutes gauss_borel_routes(const MomentMatrixSet& set) {
  const std::size_t r = set.r;
  const std::size_t last = gauss_borel_valid_through(set.size, r);
  AlphaRoutes out;
  auto a = [&](std::size_t j, std::size_t row, std::size_t col) -> const Scalar& {
    if (!set.lus[j].column_known(col)) throw InternalInconsistency("A-factor column read past a zero pivot");
    return set.lus[j].A(row, col);
  };
  for (std::size_t idx = 0; idx <= last; ++idx) {
    const auto pr = detail::pivot_ratio_for(idx, r);
    const auto& num_lu = set.lus[pr.num_system];
    const auto& den_lu = set.lus[pr.den_system];
    if (!num_lu.pivot_known(pr.num_pos) || !den_lu.pivot_known(pr.den_pos))
      throw InternalInconsistency("pivot requested past an earlier zero pivot");
    const Scalar& num = num_lu.B(pr.num_pos, pr.num_pos);
    const Scalar& den = den_lu.B(pr.den_pos, pr.den_pos);
    if (num.is_zero()) detail::report_zero_pivot(idx, pr.num_system, pr.num_pos);
    if (den.is_zero()) throw InternalInconsistency("zero denominator pivot not preceded by a zero alpha");
    out.ratio.push_back(num / den);

    const std::size_t n = idx / (r + 1);
    const std::size_t i = idx % (r + 1);
    Scalar diff;
    if (i == 0) {
      diff = a(0, n + 1, n);
      if (n >= 1) diff -= a(r, n, n - 1);
    } else {
      diff = a(i, n + 1, n) - a(i - 1, n + 1, n);
    }
    out.difference.push_back(std::move(diff));
  }
  return out;
}

/// Coefficients from the Gauss-Borel factors, cross-checked between both expressions.
inline AlphaSequence alphas_from_lu(const MomentMatrixSet& set) {
  auto routes = gauss_borel_routes(set);
  for (std::size_t n = 0; n < routes.ratio.size(); ++n)
    if (routes.ratio[n] != routes.difference[n])
      throw InternalInconsistency("alpha_" + std::to_string(n) + ": pivot ratio " + routes.ratio[n].str() +
                                  " differs from subdiagonal difference " + routes.difference[n].str());
  return AlphaSequence(std::move(routes.ratio), Method::GaussBorel);
}

/// Leading principal minors Delta_0 = 1, Delta_1, ..., Delta_N, each by its own Bareiss elimination.
inline std::vector<Scalar> leading_minors(const Matrix& m) {
  std::vector<Scalar> out{Scalar(1)};
  for (std::size_t n = 1; n <= m.rows(); ++n) out.push_back(determinant(m.leading(n)));
  return out;
}

/// a_{n,n-1} expressed through minors: Delta_{n+1} with row n-1 and column n removed, over Delta_n.
inline Scalar subdiagonal_from_minors(const Matrix& m, const std::vector<Scalar>& delta, std::size_t n) {
  if (n == 0) return Scalar(0);
  return determinant(m.leading(n + 1).without(n - 1, n)) / delta[n];
}

/// alpha_0..alpha_K by the determinant-ratio and determinant-difference expressions.
inline AlphaRoutes minor_routes(const MomentMatrixSet& set) {
  const std::size_t r = set.r;
  const std::size_t last = gauss_borel_valid_through(set.size, r);
  std::vector<std::vector<Scalar>> delta;
  for (const auto& m : set.moments) delta.push_back(leading_minors(m));

  AlphaRoutes out;
  for (std::size_t idx = 0; idx <= last; ++idx) {
    const std::size_t n = idx / (r + 1);
    const std::size_t i = idx % (r + 1);
    // Numerator and denominator as products of two minors each; (system, order) pairs.
    std::size_t ns1, no1, ns2, no2, ds1, do1, ds2, do2;
    if (i == 0) {
      ns1 = r, no1 = n + 1, ns2 = 0, no2 = n;
      ds1 = r, do1 = n, ds2 = 0, do2 = n + 1;
    } else {
      ns1 = i - 1, no1 = n + 2, ns2 = i, no2 = n;
      ds1 = i - 1, do1 = n + 1, ds2 = i, do2 = n + 1;
    }
    const Scalar& d1 = delta[ds1][do1];
    const Scalar& d2 = delta[ds2][do2];
    if (d1.is_zero() || d2.is_zero()) {
      if (ds1 == 0 && d1.is_zero()) throw SingularLeadingMinor(0, do1 - 1);
      if (ds2 == 0 && d2.is_zero()) throw SingularLeadingMinor(0, do2 - 1);
      throw InternalInconsistency("vanishing minor in a denominator not preceded by a zero alpha");
    }
    if (delta[ns1][no1].is_zero()) detail::report_zero_pivot(idx, ns1, no1 - 1);
    if (delta[ns2][no2].is_zero()) detail::report_zero_pivot(idx, ns2, no2 - 1);
    out.ratio.push_back(delta[ns1][no1] * delta[ns2][no2] / (d1 * d2));

    Scalar diff;
    if (i == 0) {
      diff = subdiagonal_from_minors(set.moments[0], delta[0], n + 1) -
             subdiagonal_from_minors(set.moments[r], delta[r], n);
    } else {
      diff = subdiagonal_from_minors(set.moments[i], delta[i], n + 1) -
             subdiagonal_from_minors(set.moments[i - 1], delta[i - 1], n + 1);
    }
    out.difference.push_back(std::move(diff));
  }
  return out;
}

inline AlphaSequence alphas_from_minors(const MomentMatrixSet& set) {
  auto routes = minor_routes(set);
  for (std::size_t n = 0; n < routes.ratio.size(); ++n)
    if (routes.ratio[n] != routes.difference[n])
      throw InternalInconsistency("alpha_" + std::to_string(n) + ": minor ratio " + routes.ratio[n].str() +
                                  " differs from minor difference " + routes.difference[n].str());
  return AlphaSequence(std::move(routes.ratio), Method::Minors);
}

/// Truncates a computed sequence to alpha_0..alpha_K.
inline AlphaSequence first_alphas(AlphaSequence seq, std::size_t count_k) {
  if (seq.values.size() <= count_k) throw AlphaIndexOutOfRange(count_k, seq.values.size());
  seq.values.resize(count_k + 1);
  return seq;
}

/// Gauss-Borel route for alpha_0..alpha_K, sized from the truncation-window rule.
inline AlphaSequence gauss_borel_alphas(const SystemSpec& spec, std::size_t count_k, unsigned max_threads = 1) {
  const auto set = build_moment_matrix_set(spec, gauss_borel_size_for(count_k, spec.r()), max_threads);
  return first_alphas(alphas_from_lu(set), count_k);
}

inline AlphaSequence minor_alphas(const SystemSpec& spec, std::size_t count_k, unsigned max_threads = 1) {
  const auto set = build_moment_matrix_set(spec, gauss_borel_size_for(count_k, spec.r()), max_threads);
  return first_alphas(alphas_from_minors(set), count_k);
}

/// (N-1) x (N-1) truncation of H = A^{-1} Lambda A.
///
/// Also forms B (Lambda^T)^r B^{-1} and checks both agree on rows/columns 0..N-2-r.
inline Matrix hessenberg_from_lu(const LUPair& lu, std::size_t r) {
  const std::size_t size = lu.A.rows();
  if (size < 2) throw Error("hessenberg_from_lu needs N >= 2");
  const Matrix h = (unit_lower_inverse(lu.A) * (shift_matrix(size) * lu.A)).leading(size - 1);

  Matrix lower_shift_r = Matrix::identity(size);
  const Matrix lt = shift_matrix(size).transposed();
  for (std::size_t p = 0; p < r; ++p) lower_shift_r = lower_shift_r * lt;
  const Matrix h2 = lu.B * lower_shift_r * upper_inverse(lu.B);
  if (size >= r + 2) {
    const std::size_t w = size - 1 - r;
    if (h.leading(w) != h2.leading(w))
      throw InternalInconsistency("A^{-1} Lambda A and B (Lambda^T)^r B^{-1} disagree on the valid window");
  }
  return h;
}

}  // namespace mopfact

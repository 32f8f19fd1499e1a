#pragma once

// Explicit bidiagonal coefficients for Jacobi-Pineiro and multiple Laguerre (first kind) systems.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mopfact/alpha.hpp"
#include "mopfact/errors.hpp"
#include "mopfact/moments.hpp"
#include "mopfact/scalar.hpp"

namespace mopfact {

/// Parameters a_1..a_r (and b for Jacobi-Pineiro) plus the extended sequences used by the formulas.
class ClosedFormParams {
 public:
  ClosedFormParams(std::vector<Scalar> a, std::optional<Scalar> b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.empty()) throw InvalidSystem("closed forms need r >= 1 parameters");
  }

  static ClosedFormParams from_system(const SystemSpec& spec) {
    if (const auto* jp = std::get_if<JacobiPineiro>(&spec.kind())) return {jp->a, jp->b};
    if (const auto* lg = std::get_if<LaguerreFirstKind>(&spec.kind())) return {lg->a, std::nullopt};
    throw InvalidSystem("closed forms exist only for Jacobi-Pineiro and Laguerre systems");
  }

  std::size_t r() const noexcept { return a_.size(); }
  bool is_laguerre() const noexcept { return !b_.has_value(); }
  const Scalar& b() const {
    if (!b_) throw InvalidSystem("Laguerre parameters carry no b");
    return *b_;
  }
  const std::vector<Scalar>& a_params() const noexcept { return a_; }

  /// a_j for 0 <= j <= r, with a_0 = -1.
  Scalar a(std::size_t j) const {
    if (j == 0) return Scalar(-1);
    return a_.at(j - 1);
  }

  /// a*_{rq+j} = a_j + q for 1 <= j <= r, and a*_0 = -1.
  Scalar a_star(std::size_t n) const {
    if (n == 0) return Scalar(-1);
    const std::size_t q = (n - 1) / r();
    const std::size_t j = (n - 1) % r() + 1;
    return a_[j - 1] + Scalar(static_cast<long>(q));
  }

  /// a'_{(r+1)q+j} = a_j + q for 0 <= j <= r, with a_0 = -1.
  Scalar a_prime(std::size_t n) const {
    const std::size_t q = n / (r() + 1);
    const std::size_t j = n % (r() + 1);
    return a(j) + Scalar(static_cast<long>(q));
  }

 private:
  std::vector<Scalar> a_;
  std::optional<Scalar> b_;
};

namespace detail {

inline Scalar checked_ratio(const Scalar& num, const Scalar& den, std::size_t n) {
  if (den.is_zero())
    throw DegenerateParameters("denominator of the closed form for alpha_" + std::to_string(n) + " vanishes");
  return num / den;
}

inline Scalar sc(std::size_t v) { return Scalar(static_cast<long>(v)); }

}  // namespace detail

/// Jacobi-Pineiro alpha_n from the branched-continued-fraction derivation, n = (r+1)(rm+k)+i.
inline Scalar jp_alpha_bcf(const ClosedFormParams& p, std::size_t n) {
  using detail::sc;
  const std::size_t r = p.r();
  const auto [m, k, i] = decompose_alpha_index(n, r);
  const Scalar& b = p.b();
  const Scalar low = b + sc(r * m + k);        // b + rm + k
  const Scalar high = b + sc((r + 1) * m + k);  // b + (r+1)m + k

  Scalar num(1);
  for (std::size_t j = 0; j < i; ++j) num *= p.a(j) + low + Scalar(2);
  for (std::size_t j = i + 1; j <= r; ++j) num *= p.a(j) + low + Scalar(1);

  Scalar den(1);
  if (k + i <= r - 1) {
    num *= p.a(k + i + 1) - p.a(i) + sc(m);
    for (std::size_t j = 1; j <= k + i + 1; ++j) den *= p.a(j) + high + Scalar(2);
    for (std::size_t j = k + i + 1; j <= r; ++j) den *= p.a(j) + high + Scalar(1);
  } else {
    const std::size_t s = k + i + 1 - r;
    num *= p.a(s) - p.a(i) + sc(m + 1);
    for (std::size_t j = 1; j <= s; ++j) den *= p.a(j) + high + Scalar(3);
    for (std::size_t j = s; j <= r; ++j) den *= p.a(j) + high + Scalar(2);
  }
  return detail::checked_ratio(num, den, n);
}

/// Jacobi-Pineiro alpha_n from the leading coefficients of the type I forms (a*-indexed).
inline Scalar jp_alpha_type1(const ClosedFormParams& p, std::size_t n) {
  using detail::sc;
  const std::size_t r = p.r();
  const auto [m, k, i] = decompose_alpha_index(n, r);
  const Scalar& b = p.b();
  const Scalar low = b + sc(r * m + k + 1);        // b + rm + k + 1
  const Scalar high = b + sc((r + 1) * m + k + 1);  // b + (r+1)m + k + 1

  Scalar num(1);
  Scalar den(1);
  if (i == 0) {
    num = p.a_star(k + 1) + sc(m + 1);
    for (std::size_t j = 1; j <= r; ++j) num *= p.a_star(j) + low;
    for (std::size_t j = 1; j <= r + 1; ++j) den *= p.a_star(k + j) + high;
  } else {
    num = (p.a_star(k + i + 1) - p.a_star(i) + sc(m)) * low;
    for (std::size_t j = 1; j + 1 <= r; ++j) num *= p.a_star(i + j) + low;
    for (std::size_t j = 1; j <= r + 1; ++j) den *= p.a_star(k + i + j) + high;
  }
  return detail::checked_ratio(num, den, n);
}

/// Jacobi-Pineiro alpha_n in undecomposed form, from the contiguous relation of the g-series:
/// (a*_{n+1} - a'_n) prod_{j=1}^r (a'_{n+j}+b+1) / prod_{j=1}^{r+1} (a*_{n+j}+b+1).
inline Scalar jp_alpha_contiguous(const ClosedFormParams& p, std::size_t n) {
  const std::size_t r = p.r();
  const Scalar b1 = p.b() + Scalar(1);
  Scalar num = p.a_star(n + 1) - p.a_prime(n);
  for (std::size_t j = 1; j <= r; ++j) num *= p.a_prime(n + j) + b1;
  Scalar den(1);
  for (std::size_t j = 1; j <= r + 1; ++j) den *= p.a_star(n + j) + b1;
  return detail::checked_ratio(num, den, n);
}

/// Multiple Laguerre (first kind): alpha_n = a*_{k+i+1} - a*_i + m.
inline Scalar laguerre_alpha(const ClosedFormParams& p, std::size_t n) {
  const auto [m, k, i] = decompose_alpha_index(n, p.r());
  const Scalar v = p.a_star(k + i + 1) - p.a_star(i) + detail::sc(m);
  if (v.is_zero()) throw DegenerateParameters("closed-form Laguerre alpha_" + std::to_string(n) + " vanishes");
  return v;
}

/// alpha_0..alpha_K from the closed form matching the parameter kind. For Jacobi-Pineiro both
/// formula families are evaluated and must agree.
inline AlphaSequence closed_form_alphas(const ClosedFormParams& p, std::size_t count_k) {
  std::vector<Scalar> v;
  v.reserve(count_k + 1);
  for (std::size_t n = 0; n <= count_k; ++n) {
    if (p.is_laguerre()) {
      v.push_back(laguerre_alpha(p, n));
      continue;
    }
    Scalar x = jp_alpha_bcf(p, n);
    if (x != jp_alpha_type1(p, n))
      throw InternalInconsistency("closed-form families disagree at alpha_" + std::to_string(n));
    v.push_back(std::move(x));
  }
  return AlphaSequence(std::move(v), Method::ClosedForm);
}

/// Limit r^r / (r+1)^{r+1} of the Jacobi-Pineiro coefficients.
inline Scalar jp_alpha_limit(std::size_t r) {
  return power(detail::sc(r), r) / power(detail::sc(r + 1), r + 1);
}

struct AsymptoticRow {
  std::size_t n = 0;
  Scalar alpha;
  Scalar measure;  // JP: |alpha_n - limit|;  Laguerre: alpha_n r(r+1)/n
  double measure_decimal = 0.0;
};

struct AsymptoticReport {
  bool laguerre = false;
  Scalar limit;  // JP limit value, or 1 for the normalised Laguerre ratio
  std::vector<AsymptoticRow> rows;
  bool monotone_tail = false;  // |measure - target| non-increasing across the last two periods
};

inline AsymptoticReport asymptotic_report(const ClosedFormParams& p, std::size_t n_max) {
  const std::size_t r = p.r();
  AsymptoticReport rep;
  rep.laguerre = p.is_laguerre();
  rep.limit = rep.laguerre ? Scalar(1) : jp_alpha_limit(r);
  for (std::size_t n = rep.laguerre ? 1 : 0; n <= n_max; ++n) {
    AsymptoticRow row;
    row.n = n;
    if (rep.laguerre) {
      row.alpha = laguerre_alpha(p, n);
      row.measure = row.alpha * detail::sc(r * (r + 1)) / detail::sc(n);
    } else {
      row.alpha = jp_alpha_bcf(p, n);
      row.measure = abs(row.alpha - rep.limit);
    }
    row.measure_decimal = row.measure.to_double();
    rep.rows.push_back(std::move(row));
  }
  // The formulas are periodic in n mod r(r+1); compare each residue class across the last two periods.
  const std::size_t period = r * (r + 1);
  rep.monotone_tail = rep.rows.size() >= 2 * period;
  if (rep.monotone_tail) {
    const std::size_t sz = rep.rows.size();
    for (std::size_t t = 0; t < period; ++t) {
      const Scalar& late = rep.rows[sz - 1 - t].measure;
      const Scalar& early = rep.rows[sz - 1 - t - period].measure;
      const Scalar target = rep.laguerre ? rep.limit : Scalar(0);
      if (abs(late - target) > abs(early - target)) rep.monotone_tail = false;
    }
  }
  return rep;
}

struct LimitRow {
  std::size_t n = 0;
  Scalar scaled_jp;  // b alpha_n(b)
  Scalar laguerre;   // alpha-hat_n
  double relative_error = 0.0;
};

/// b * alpha_n(b) for Jacobi-Pineiro with parameters a and the given b, against the Laguerre coefficient.
inline std::vector<LimitRow> laguerre_limit_check(const std::vector<Scalar>& a, const Scalar& b, std::size_t n_max) {
  const ClosedFormParams jp(a, b);
  const ClosedFormParams lg(a, std::nullopt);
  std::vector<LimitRow> out;
  for (std::size_t n = 0; n <= n_max; ++n) {
    LimitRow row{n, b * jp_alpha_bcf(jp, n), laguerre_alpha(lg, n), 0.0};
    row.relative_error = std::fabs((abs(row.scaled_jp - row.laguerre) / abs(row.laguerre)).to_double());
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace mopfact

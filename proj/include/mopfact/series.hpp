#pragma once

// Truncated formal power series in t with an explicitly tracked valid order.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "mopfact/errors.hpp"
#include "mopfact/scalar.hpp"

namespace mopfact {

/// Power series known exactly through t^order. order == -1 means nothing is known.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;

  /// The series' order is coeffs.size() - 1.
  explicit TruncatedSeries(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {}

  /// Exact constant series c, recorded to the given order.
  static TruncatedSeries constant(const Scalar& c, std::ptrdiff_t order) {
    if (order < 0) return {};
    std::vector<Scalar> v(static_cast<std::size_t>(order) + 1, Scalar(0));
    v[0] = c;
    return TruncatedSeries(std::move(v));
  }

  std::ptrdiff_t order() const noexcept { return static_cast<std::ptrdiff_t>(coeffs_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }

  /// Coefficient of t^n; throws InsufficientOrder past the tracked order.
  const Scalar& at(std::ptrdiff_t n) const {
    if (n < 0 || n > order()) throw InsufficientOrder(n, order());
    return coeffs_[static_cast<std::size_t>(n)];
  }

  /// Drops everything past t^new_order (no-op if already shorter).
  TruncatedSeries truncated(std::ptrdiff_t new_order) const {
    const auto keep = static_cast<std::size_t>(std::max<std::ptrdiff_t>(-1, std::min(new_order, order())) + 1);
    return TruncatedSeries(std::vector<Scalar>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(keep)));
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  std::vector<Scalar> coeffs_;
};

inline TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  const auto ord = std::min(a.order(), b.order());
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(ord + 1));
  for (std::ptrdiff_t n = 0; n <= ord; ++n) out.push_back(a.at(n) + b.at(n));
  return TruncatedSeries(std::move(out));
}

inline TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  const auto ord = std::min(a.order(), b.order());
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(ord + 1));
  for (std::ptrdiff_t n = 0; n <= ord; ++n) out.push_back(a.at(n) - b.at(n));
  return TruncatedSeries(std::move(out));
}

inline TruncatedSeries series_scale(const TruncatedSeries& a, const Scalar& c) {
  std::vector<Scalar> out = a.coeffs();
  for (auto& x : out) x *= c;
  return TruncatedSeries(std::move(out));
}

/// Cauchy product; valid to the smaller of the two orders.
inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  const auto ord = std::min(a.order(), b.order());
  std::vector<Scalar> out(static_cast<std::size_t>(ord + 1), Scalar(0));
  for (std::ptrdiff_t n = 0; n <= ord; ++n)
    for (std::ptrdiff_t i = 0; i <= n; ++i) out[static_cast<std::size_t>(n)] += a.at(i) * b.at(n - i);
  return TruncatedSeries(std::move(out));
}

/// a / (c t). Coefficient n of the result is a[n+1] / c; the order drops by one.
/// An order -1 input yields an order -1 output.
inline TruncatedSeries series_divide_by_ct(const TruncatedSeries& a, const Scalar& c) {
  if (c.is_zero()) throw ZeroDivisor();
  if (a.order() < 0) return {};
  if (!a.at(0).is_zero()) throw NonzeroConstantTerm();
  std::vector<Scalar> out;
  out.reserve(a.coeffs().size() - 1);
  for (std::ptrdiff_t n = 1; n <= a.order(); ++n) out.push_back(a.at(n) / c);
  return TruncatedSeries(std::move(out));
}

}  // namespace mopfact

#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "mopfact/errors.hpp"
#include "mopfact/scalar.hpp"

namespace mopfact {

enum class Method { GaussBorel, Minors, EulerGauss, ClosedForm };

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::GaussBorel: return "gauss-borel";
    case Method::Minors: return "minors";
    case Method::EulerGauss: return "bcf";
    case Method::ClosedForm: return "closed-form";
  }
  return "unknown";
}

/// Nontrivial entries alpha_0..alpha_K of the bidiagonal factors, all nonzero.
struct AlphaSequence {
  std::vector<Scalar> values;
  Method method = Method::GaussBorel;

  AlphaSequence() = default;
  AlphaSequence(std::vector<Scalar> v, Method m) : values(std::move(v)), method(m) {
    for (std::size_t n = 0; n < values.size(); ++n)
      if (values[n].is_zero()) throw NoBidiagonalFactorisation(n);
  }

  /// Largest valid index K (values.size() - 1).
  std::ptrdiff_t valid_through() const noexcept { return static_cast<std::ptrdiff_t>(values.size()) - 1; }
  std::size_t size() const noexcept { return values.size(); }

  const Scalar& at(std::size_t n) const {
    if (n >= values.size()) throw AlphaIndexOutOfRange(n, values.size());
    return values[n];
  }

  /// alpha_n with alpha_n = 0 for n < 0.
  Scalar at_or_zero(std::ptrdiff_t n) const {
    if (n < 0) return Scalar(0);
    return at(static_cast<std::size_t>(n));
  }
};

/// Index n = (r+1)(r m + k) + i, with 0 <= k <= r-1 and 0 <= i <= r.
struct AlphaIndex {
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t i = 0;
};

inline AlphaIndex decompose_alpha_index(std::size_t n, std::size_t r) {
  const std::size_t i = n % (r + 1);
  const std::size_t q = n / (r + 1);
  return {q / r, q % r, i};
}

inline std::size_t compose_alpha_index(const AlphaIndex& d, std::size_t r) {
  return (r + 1) * (r * d.m + d.k) + d.i;
}

}  // namespace mopfact

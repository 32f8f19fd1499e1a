#pragma once

// Exact rational scalars backed by GMP.

#include <gmpxx.h>

#include <cstdio>
#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "mopfact/errors.hpp"

namespace mopfact {

/// Exact rational number kept in canonical form (positive denominator, coprime parts).
///
/// Wraps mpq_class so that results are always materialised values; gmpxx expression
/// templates never escape into calling code.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Scalar(long num, long den) {
    if (den == 0) throw ZeroDivisor();
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Scalar(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  explicit Scalar(const mpz_class& z) : q_(z) {}

  /// Parses "p/q" or "p" (optional leading sign, no whitespace).
  static Scalar parse(std::string_view text) {
    auto bad = [&] { return ParseError("malformed rational token '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    const auto slash = text.find('/');
    auto integer_ok = [](std::string_view s, bool allow_sign) {
      if (s.empty()) return false;
      std::size_t i = 0;
      if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
      if (i == s.size()) return false;
      for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
      return true;
    };
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    if (!integer_ok(num, true) || (slash != std::string_view::npos && !integer_ok(den, false))) throw bad();
    std::string num_s(num);
    if (!num_s.empty() && num_s[0] == '+') num_s.erase(0, 1);
    mpz_class n(num_s, 10);
    mpz_class d(1);
    if (slash != std::string_view::npos) d = mpz_class(std::string(den), 10);
    if (d == 0) throw ZeroDivisor();
    mpq_class q(n, d);
    q.canonicalize();
    return Scalar(q);
  }

  const mpq_class& raw() const noexcept { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const noexcept { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const noexcept { return sgn(q_); }

  /// "p/q", or "p" when the denominator is one.
  std::string str() const { return q_.get_str(10); }
  double to_double() const { return q_.get_d(); }

  Scalar& operator+=(const Scalar& o) {
    q_ += o.q_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    q_ -= o.q_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    q_ *= o.q_;
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw ZeroDivisor();
    q_ /= o.q_;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(mpq_class(-a.q_)); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  mpq_class q_{0};
};

inline Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }

/// True when s is one of -1, -2, -3, ...
inline bool is_negative_integer(const Scalar& s) { return s.is_integer() && s.sign() < 0; }

/// Rising factorial (z)_n = z (z+1) ... (z+n-1), with (z)_0 = 1.
inline Scalar pochhammer(const Scalar& z, std::size_t n) {
  Scalar out(1);
  Scalar f = z;
  for (std::size_t i = 0; i < n; ++i) {
    out *= f;
    f += Scalar(1);
  }
  return out;
}

inline Scalar binomial(std::size_t n, std::size_t k) {
  if (k > n) return Scalar(0);
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  return Scalar(c);
}

inline Scalar power(Scalar base, std::size_t e) {
  Scalar out(1);
  while (e) {
    if (e & 1U) out *= base;
    base *= base;
    e >>= 1U;
  }
  return out;
}

/// Decimal rendering with 17 significant digits (display only).
inline std::string to_decimal(const Scalar& s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", s.to_double());
  return buf;
}

}  // namespace mopfact

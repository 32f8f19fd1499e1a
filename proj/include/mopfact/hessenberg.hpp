#pragma once

// Bidiagonal factors L_1..L_r, U built from alpha; the banded Hessenberg matrix and its
// recurrence coefficients gamma; the type II polynomials and their checks.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mopfact/alpha.hpp"
#include "mopfact/errors.hpp"
#include "mopfact/matrix.hpp"
#include "mopfact/moments.hpp"
#include "mopfact/scalar.hpp"

namespace mopfact {

/// L_1..L_r (unit lower bidiagonal) and U (upper bidiagonal, unit supradiagonal), all m x m.
struct BidiagonalFactors {
  std::size_t r = 0;
  std::size_t size = 0;
  std::vector<Matrix> L;  // L[k-1] is L_k
  Matrix U;

  /// L_1 ... L_r U. Exact on the full m x m truncation since every L is lower triangular.
  Matrix product() const { return cyclic_product(0); }

  /// L_{j+1} ... L_r U L_1 ... L_j. Rows and columns 0..m-2 are exact; the last row is not.
  Matrix cyclic_product(std::size_t j) const {
    if (j > r) throw Error("cyclic shift index exceeds r");
    Matrix out = Matrix::identity(size);
    for (std::size_t k = j + 1; k <= r; ++k) out = out * L[k - 1];
    out = out * U;
    for (std::size_t k = 1; k <= j; ++k) out = out * L[k - 1];
    return out;
  }
};

/// Largest m such that every entry of the m x m factors comes from alpha_0..alpha_K.
inline std::size_t bidiagonal_size_for(std::size_t count_k, std::size_t r) {
  if (count_k < r) return 0;
  return (count_k - r) / (r + 1) + 1;
}

inline BidiagonalFactors assemble(const AlphaSequence& alphas, std::size_t r, std::size_t m) {
  if (r == 0) throw Error("r must be positive");
  if (m == 0) return {r, 0, std::vector<Matrix>(r), Matrix()};
  const std::size_t needed = (r + 1) * (m - 1) + r;
  if (alphas.size() <= needed) throw AlphaIndexOutOfRange(needed, alphas.size());
  BidiagonalFactors f{r, m, {}, Matrix(m, m)};
  for (std::size_t n = 0; n < m; ++n) {
    f.U(n, n) = alphas.at((r + 1) * n);
    if (n + 1 < m) f.U(n, n + 1) = Scalar(1);
  }
  for (std::size_t k = 1; k <= r; ++k) {
    Matrix lk = Matrix::identity(m);
    for (std::size_t n = 0; n + 1 < m; ++n) lk(n + 1, n) = alphas.at((r + 1) * n + k);
    f.L.push_back(std::move(lk));
  }
  return f;
}

/// Index sets r >= l_0 > l_1 > ... > l_k >= 0; there are C(r+1, k+1) of them.
inline std::vector<std::vector<std::size_t>> gamma_summands(std::size_t r, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t upper_exclusive) -> void {
    if (cur.size() == k + 1) {
      out.push_back(cur);
      return;
    }
    for (std::size_t l = upper_exclusive; l-- > 0;) {
      cur.push_back(l);
      self(self, l);
      cur.pop_back();
    }
  };
  rec(rec, r + 1);
  return out;
}

/// gamma_n^[k] for 0 <= k <= r and n + k <= n_max (the bands of an (n_max+1)-square H).
struct HessenbergBands {
  std::size_t r = 0;
  std::size_t n_max = 0;
  std::vector<std::vector<Scalar>> gammas;  // gammas[k][n]

  const Scalar& gamma(std::size_t k, std::size_t n) const { return gammas.at(k).at(n); }
  bool has(std::size_t k, std::size_t n) const { return k < gammas.size() && n < gammas[k].size(); }
};

/// gamma_n^[k] = sum over r >= l_0 > ... > l_k >= 0 of prod_i alpha_{(r+1)(n+i) + l_i - r}.
inline HessenbergBands gamma_expand(const AlphaSequence& alphas, std::size_t r, std::size_t n_max) {
  HessenbergBands bands{r, n_max, std::vector<std::vector<Scalar>>(r + 1)};
  for (std::size_t k = 0; k <= r && k <= n_max; ++k) {
    const auto summands = gamma_summands(r, k);
    for (std::size_t n = 0; n + k <= n_max; ++n) {
      Scalar total(0);
      for (const auto& ell : summands) {
        Scalar term(1);
        for (std::size_t i = 0; i <= k; ++i) {
          const auto idx = static_cast<std::ptrdiff_t>((r + 1) * (n + i) + ell[i]) - static_cast<std::ptrdiff_t>(r);
          term *= alphas.at_or_zero(idx);
          if (term.is_zero()) break;
        }
        total += term;
      }
      bands.gammas[k].push_back(std::move(total));
    }
  }
  return bands;
}

/// Dense unit-lower-Hessenberg matrix with entry (n+k, n) = gamma_n^[k].
inline Matrix band_matrix(const HessenbergBands& bands, std::size_t m) {
  if (m > bands.n_max + 1) throw Error("band table too short for a " + std::to_string(m) + "-square matrix");
  Matrix h(m, m);
  for (std::size_t n = 0; n < m; ++n) {
    if (n + 1 < m) h(n, n + 1) = Scalar(1);
    for (std::size_t k = 0; k <= bands.r && n + k < m; ++k) h(n + k, n) = bands.gamma(k, n);
  }
  return h;
}

/// Dense coefficient vector, ascending powers.
using Polynomial = std::vector<Scalar>;

inline Scalar evaluate(const Polynomial& p, const Scalar& x) {
  Scalar acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

inline std::string to_string(const Polynomial& p) {
  std::string out;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i].is_zero() && p.size() > 1) continue;
    std::string c = p[i].str();
    if (!out.empty()) {
      if (c[0] == '-') {
        out += " - ";
        c.erase(0, 1);
      } else {
        out += " + ";
      }
    }
    if (i == 0 || c != "1") out += c;
    if (i > 0) out += (c != "1" ? "*" : "") + std::string("x") + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return out.empty() ? "0" : out;
}

/// Monic P_0..P_{m} from P_{n+1} = x P_n - sum_{k=0}^{min(r,n)} gamma_{n-k}^[k] P_{n-k}.
struct PolynomialTable {
  std::vector<Polynomial> polys;
};

inline PolynomialTable polynomials(const HessenbergBands& bands, std::size_t m) {
  PolynomialTable t;
  t.polys.push_back(Polynomial{Scalar(1)});
  for (std::size_t n = 0; n < m; ++n) {
    Polynomial next(n + 2, Scalar(0));
    const Polynomial& pn = t.polys[n];
    for (std::size_t c = 0; c < pn.size(); ++c) next[c + 1] = pn[c];
    for (std::size_t k = 0; k <= bands.r && k <= n; ++k) {
      if (!bands.has(k, n - k)) throw Error("gamma_" + std::to_string(n - k) + "^[" + std::to_string(k) + "] not tabulated");
      const Scalar& g = bands.gamma(k, n - k);
      const Polynomial& q = t.polys[n - k];
      for (std::size_t c = 0; c < q.size(); ++c) next[c] -= g * q[c];
    }
    t.polys.push_back(std::move(next));
  }
  return t;
}

struct OrthogonalityCondition {
  std::size_t j = 0;  // functional, 1-based
  std::size_t k = 0;  // power of x
  std::size_t n = 0;  // polynomial degree
  bool expect_zero = true;
  Scalar value;
  bool pass() const { return expect_zero ? value.is_zero() : !value.is_zero(); }
};

struct OrthogonalityReport {
  std::vector<OrthogonalityCondition> conditions;
  bool all_pass() const {
    for (const auto& c : conditions)
      if (!c.pass()) return false;
    return true;
  }
};

/// <v_j, x^k P> evaluated through the moment table.
inline Scalar apply_functional(const SystemSpec& spec, std::size_t j, std::size_t k, const Polynomial& p) {
  Scalar s(0);
  for (std::size_t c = 0; c < p.size(); ++c)
    if (!p[c].is_zero()) s += p[c] * spec.moment(j, k + c);
  return s;
}

/// Step-line type II conditions: <v_j, x^k P_n> = 0 for n >= rk+j, nonzero for n = rk+j-1.
inline OrthogonalityReport verify_orthogonality(const PolynomialTable& table, const SystemSpec& spec) {
  const std::size_t r = spec.r();
  OrthogonalityReport report;
  for (std::size_t n = 0; n < table.polys.size(); ++n)
    for (std::size_t j = 1; j <= r; ++j)
      for (std::size_t k = 0; r * k + j <= n + 1; ++k) {
        const bool zero = n >= r * k + j;
        report.conditions.push_back({j, k, n, zero, apply_functional(spec, j, k, table.polys[n])});
      }
  return report;
}

/// det(x I_n - H_n) for a lower-Hessenberg H, expanding along the last row of each leading block.
inline Polynomial hessenberg_char_poly(const Matrix& h, std::size_t n) {
  if (n > h.rows()) throw Error("characteristic polynomial order exceeds matrix size");
  std::vector<Polynomial> d{Polynomial{Scalar(1)}};
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t c = k + 2; c < h.cols() && c < n; ++c)
      if (!h(k, c).is_zero()) throw Error("matrix is not lower Hessenberg");
    Polynomial next(k + 2, Scalar(0));
    for (std::size_t c = 0; c < d[k].size(); ++c) {
      next[c + 1] += d[k][c];
      next[c] -= h(k, k) * d[k][c];
    }
    Scalar super(1);  // prod_{l=i}^{k-1} h_{l,l+1}
    for (std::size_t i = k; i-- > 0;) {
      super *= h(i, i + 1);
      const Scalar w = h(k, i) * super;
      if (w.is_zero()) continue;
      for (std::size_t c = 0; c < d[i].size(); ++c) next[c] -= w * d[i][c];
    }
    d.push_back(std::move(next));
  }
  return d[n];
}

/// P_n = det(x I_n - H_n) with H_n the leading block of L_1...L_r U.
inline bool char_poly_check(const BidiagonalFactors& factors, const PolynomialTable& table, std::size_t n) {
  if (n > factors.size || n >= table.polys.size()) throw Error("char_poly_check: n outside the available window");
  return hessenberg_char_poly(factors.product(), n) == table.polys[n];
}

}  // namespace mopfact

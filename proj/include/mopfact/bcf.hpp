#pragma once

// Euler-Gauss recursion for branched-continued-fraction coefficients, and r-Dyck path
// enumeration of the (generalised, modified) Stieltjes-Rogers polynomials.

#include <cstddef>
#include <map>
#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "mopfact/alpha.hpp"
#include "mopfact/errors.hpp"
#include "mopfact/hessenberg.hpp"
#include "mopfact/moments.hpp"
#include "mopfact/series.hpp"

namespace mopfact {

/// Moments per functional needed to extract alpha_0..alpha_K: the inversion step
/// g_{k+r+1} = (g_{k+1} - g_k) / (alpha_k t) costs one order, and the minimum over
/// neighbouring series drops by one every r steps.
inline std::size_t euler_gauss_series_order(std::size_t count_k, std::size_t r) { return count_k / r + 1; }

/// Ladder of series g_0 = 1, g_1..g_r = moment generating functions, g_{k+r+1} from the recursion.
class EulerGaussState {
 public:
  EulerGaussState(const SystemSpec& spec, std::size_t order) : r_(spec.r()) {
    const auto ord = static_cast<std::ptrdiff_t>(order);
    table_.push_back(TruncatedSeries::constant(Scalar(1), ord));
    for (std::size_t j = 1; j <= r_; ++j) {
      if (spec.available_moments() <= order) throw MomentTableExhausted(j, order);
      std::vector<Scalar> c;
      c.reserve(order + 1);
      for (std::size_t n = 0; n <= order; ++n) c.push_back(spec.moment(j, n));
      table_.emplace_back(std::move(c));
    }
  }

  std::size_t r() const noexcept { return r_; }
  const std::vector<Scalar>& alphas() const noexcept { return alphas_; }
  const std::vector<TruncatedSeries>& series() const noexcept { return table_; }

  /// Computes the next coefficient alpha_k and appends g_{k+r+1}.
  const Scalar& step() {
    const std::size_t k = alphas_.size();
    const TruncatedSeries diff = series_sub(table_.at(k + 1), table_.at(k));
    if (diff.order() < 1) throw InsufficientOrder(1, diff.order());
    if (!diff.at(0).is_zero()) throw InternalInconsistency("series g_k do not share constant term 1");
    const Scalar alpha = diff.at(1);
    if (alpha.is_zero()) throw NoBidiagonalFactorisation(k, "coefficient of t in g_" + std::to_string(k + 1) +
                                                                 " - g_" + std::to_string(k) + " vanishes");
    if (table_.size() != k + r_ + 1) throw InternalInconsistency("Euler-Gauss table out of step");
    table_.push_back(series_divide_by_ct(diff, alpha));
    alphas_.push_back(alpha);
    return alphas_.back();
  }

 private:
  std::size_t r_;
  std::vector<TruncatedSeries> table_;
  std::vector<Scalar> alphas_;
};

/// alpha_0..alpha_K from the moments through the Euler-Gauss recursion.
inline AlphaSequence euler_gauss(const SystemSpec& spec, std::size_t count_k) {
  EulerGaussState state(spec, euler_gauss_series_order(count_k, spec.r()));
  for (std::size_t k = 0; k <= count_k; ++k) state.step();
  return AlphaSequence(state.alphas(), Method::EulerGauss);
}

/// Weighted r-Dyck paths: rises weigh 1, an r-fall to height i weighs alpha_i.
class PathWeightOracle {
 public:
  PathWeightOracle(std::size_t r, AlphaSequence alphas) : r_(r), alphas_(std::move(alphas)) {
    if (r_ == 0) throw Error("r must be positive");
  }

  std::size_t r() const noexcept { return r_; }
  const AlphaSequence& alphas() const noexcept { return alphas_; }

  /// Total weight of partial paths from (0,0) to (steps, height).
  Scalar paths_to(std::size_t steps, std::size_t height) const {
    Walk w{*this, height, {}};
    return w(steps, 0);
  }

 private:
  // Memoised on (steps left, current height) for one fixed endpoint height.
  struct Walk {
    const PathWeightOracle& o;
    std::size_t target;
    std::map<std::pair<std::size_t, std::size_t>, Scalar> memo;

    // s steps from height h reach the target with f = (h + s - target)/(r+1) falls; f must be
    // a whole number no larger than s.
    bool reachable(std::size_t s, std::size_t h) const {
      if (h + s < target) return false;
      const std::size_t excess = h + s - target;
      return excess % (o.r_ + 1) == 0 && excess / (o.r_ + 1) <= s;
    }

    Scalar operator()(std::size_t s, std::size_t h) {
      if (!reachable(s, h)) return Scalar(0);
      if (s == 0) return Scalar(1);
      const auto key = std::make_pair(s, h);
      if (auto it = memo.find(key); it != memo.end()) return it->second;
      Scalar total = (*this)(s - 1, h + 1);
      if (h >= o.r_) {
        Scalar rest = (*this)(s - 1, h - o.r_);
        if (!rest.is_zero()) total += o.alphas_.at(h - o.r_) * rest;
      }
      memo.emplace(key, total);
      return total;
    }
  };

  std::size_t r_;
  AlphaSequence alphas_;
};

/// S_n: r-Dyck paths from (0,0) to ((r+1)n, 0).
inline Scalar sr_polynomial(const PathWeightOracle& oracle, std::size_t n) {
  return oracle.paths_to((oracle.r() + 1) * n, 0);
}

/// S_{n,k}: partial paths from (0,0) to ((r+1)n, (r+1)k).
inline Scalar generalised_sr(const PathWeightOracle& oracle, std::size_t n, std::size_t k) {
  if (k > n) return Scalar(0);
  return oracle.paths_to((oracle.r() + 1) * n, (oracle.r() + 1) * k);
}

/// Modified polynomial of type j: partial paths from (0,0) to ((r+1)n + j, j).
inline Scalar modified_sr(const PathWeightOracle& oracle, std::size_t n, std::size_t j) {
  return oracle.paths_to((oracle.r() + 1) * n + j, j);
}

struct ProductionCell {
  std::size_t n = 0;
  std::size_t k = 0;
  Scalar matrix_power;  // (H^n)_{0,k}
  Scalar path_sum;      // S_{n,k}
  bool pass() const { return matrix_power == path_sum; }
};

struct ProductionReport {
  std::vector<ProductionCell> cells;
  bool all_pass() const {
    for (const auto& c : cells)
      if (!c.pass()) return false;
    return true;
  }
};

/// Truncation size used by production_check. H has one superdiagonal, so row 0 of H^n never
/// reaches past column n, and L_1...L_r U is exact on every leading block.
inline std::size_t production_matrix_size(std::size_t n_max, std::size_t k_max) { return std::max(n_max, k_max) + 1; }

/// Compares (H^n)_{0,k}, with H = L_1...L_r U assembled from alpha, against S_{n,k}.
inline ProductionReport production_check(const AlphaSequence& alphas, std::size_t r, std::size_t n_max,
                                         std::size_t k_max) {
  const std::size_t m = production_matrix_size(n_max, k_max);
  const Matrix h = assemble(alphas, r, m).product();
  const PathWeightOracle oracle(r, alphas);
  ProductionReport report;
  std::vector<Scalar> row(m, Scalar(0));
  row[0] = Scalar(1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n > 0) {
      std::vector<Scalar> next(m, Scalar(0));
      for (std::size_t i = 0; i < m; ++i) {
        if (row[i].is_zero()) continue;
        for (std::size_t j = 0; j < m; ++j)
          if (!h(i, j).is_zero()) next[j] += row[i] * h(i, j);
      }
      row = std::move(next);
    }
    for (std::size_t k = 0; k <= k_max; ++k) report.cells.push_back({n, k, row[k], generalised_sr(oracle, n, k)});
  }
  return report;
}

struct MomentIdentityCell {
  std::size_t j = 0;  // functional index, 1-based
  std::size_t n = 0;
  Scalar moment;
  Scalar path_sum;  // modified S_{n; j-1}
  bool pass() const { return moment == path_sum; }
};

/// <v_j, x^n> against the modified Stieltjes-Rogers polynomial of type j-1, for n <= n_max.
inline std::vector<MomentIdentityCell> moment_identity_check(const SystemSpec& spec, const AlphaSequence& alphas,
                                                             std::size_t n_max) {
  const PathWeightOracle oracle(spec.r(), alphas);
  std::vector<MomentIdentityCell> out;
  for (std::size_t j = 1; j <= spec.r(); ++j)
    for (std::size_t n = 0; n <= n_max; ++n) out.push_back({j, n, spec.moment(j, n), modified_sr(oracle, n, j - 1)});
  return out;
}

}  // namespace mopfact

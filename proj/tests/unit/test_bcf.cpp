#include <catch_amalgamated.hpp>

#include <random>

#include "mopfact/bcf.hpp"
#include "mopfact/gauss_borel.hpp"
#include "oracles.hpp"

using namespace mopfact;

namespace {

AlphaSequence distinct_alphas(std::size_t count) {
  // Pairwise distinct, so coincidences between monomials cannot hide errors.
  std::vector<Scalar> v;
  for (std::size_t i = 0; i < count; ++i) v.emplace_back(static_cast<long>(2 * i + 3), static_cast<long>(i + 2));
  return AlphaSequence(v, Method::ClosedForm);
}

}  // namespace

TEST_CASE("Euler-Gauss reproduces Legendre coefficients", "[bcf]") {
  const auto spec = SystemSpec::jacobi_pineiro({Scalar(0)}, Scalar(0));
  const auto a = euler_gauss(spec, 5);
  CHECK(a.values == std::vector<Scalar>{Scalar(1, 2), Scalar(1, 6), Scalar(1, 3), Scalar(1, 5), Scalar(3, 10), Scalar(3, 14)});
  CHECK(a.method == Method::EulerGauss);
}

TEST_CASE("Euler-Gauss matches Gauss-Borel", "[bcf]") {
  std::mt19937 rng(11);
  for (std::size_t r = 1; r <= 4; ++r)
    for (int t = 0; t < 3; ++t) {
      const auto a = oracle::random_a(rng, r);
      const auto jp = SystemSpec::jacobi_pineiro(a, oracle::random_rational(rng));
      CHECK(euler_gauss(jp, 16).values == gauss_borel_alphas(jp, 16).values);
      const auto lg = SystemSpec::laguerre(a);
      CHECK(euler_gauss(lg, 16).values == gauss_borel_alphas(lg, 16).values);
    }
}

TEST_CASE("series order budget is exactly sufficient", "[bcf]") {
  const auto spec = SystemSpec::laguerre({Scalar(1, 2), Scalar(1, 3)});
  for (std::size_t k = 0; k <= 12; ++k) {
    const std::size_t order = euler_gauss_series_order(k, 2);
    EulerGaussState enough(spec, order);
    for (std::size_t i = 0; i <= k; ++i) REQUIRE_NOTHROW(enough.step());
    if (order == 0) continue;
    EulerGaussState short_state(spec, order - 1);
    bool failed = false;
    try {
      for (std::size_t i = 0; i <= k; ++i) short_state.step();
    } catch (const InsufficientOrder&) {
      failed = true;
    }
    REQUIRE(failed);
  }
}

TEST_CASE("Euler-Gauss rejects symmetric moments at the first coefficient", "[bcf]") {
  const auto spec = SystemSpec::custom({{Scalar(1), Scalar(0), Scalar(1, 2), Scalar(0), Scalar(3, 8), Scalar(0)}});
  try {
    euler_gauss(spec, 3);
    FAIL("expected NoBidiagonalFactorisation");
  } catch (const NoBidiagonalFactorisation& e) {
    CHECK(e.index() == 0);
  }
}

TEST_CASE("Euler-Gauss reports short custom tables", "[bcf]") {
  const auto spec = SystemSpec::custom({{Scalar(1), Scalar(1, 2), Scalar(1, 3)}});
  CHECK_THROWS_AS(euler_gauss(spec, 5), MomentTableExhausted);
}

TEST_CASE("memoised path sums equal brute-force enumeration", "[paths]") {
  const auto alphas = distinct_alphas(40);
  for (std::size_t r = 1; r <= 3; ++r) {
    const PathWeightOracle o(r, alphas);
    for (std::size_t len = 0; len <= 14; ++len)
      for (std::size_t end = 0; end <= len; ++end)
        REQUIRE(o.paths_to(len, end) == oracle::enumerate_paths(r, alphas.values, len, end));
  }
}

TEST_CASE("small r-Dyck path polynomials by hand", "[paths]") {
  const auto al = distinct_alphas(10);
  const auto& a = al.values;
  const PathWeightOracle o1(1, al), o2(2, al);
  CHECK(sr_polynomial(o1, 1) == a[0]);
  CHECK(sr_polynomial(o1, 2) == a[0] * a[0] + a[0] * a[1]);
  // Three paths of length 6 for r = 2.
  CHECK(sr_polynomial(o2, 2) == a[0] * a[0] + a[0] * a[1] + a[0] * a[2]);
  CHECK(generalised_sr(o2, 1, 1) == Scalar(1));
  CHECK(generalised_sr(o2, 1, 2) == Scalar(0));
  CHECK(modified_sr(o2, 0, 1) == Scalar(1));
  CHECK(modified_sr(o2, 1, 1) == a[0] + a[1]);
}

TEST_CASE("production identity and moment reconstruction", "[paths]") {
  std::mt19937 rng(3);
  for (std::size_t r = 1; r <= 3; ++r) {
    const auto spec = SystemSpec::jacobi_pineiro(oracle::random_a(rng, r), oracle::random_rational(rng));
    const auto alphas = euler_gauss(spec, (r + 1) * 4 + r);
    CHECK(production_check(alphas, r, 4, 4).all_pass());
    for (const auto& c : moment_identity_check(spec, alphas, 4)) REQUIRE(c.pass());
  }
  // The production identity holds for any weights; the moment identity pins them down.
  const auto spec = SystemSpec::laguerre({Scalar(1, 2)});
  auto alphas = euler_gauss(spec, 8);
  alphas.values[1] += Scalar(1);
  CHECK(production_check(alphas, 1, 3, 3).all_pass());
  bool all = true;
  for (const auto& c : moment_identity_check(spec, alphas, 3)) all = all && c.pass();
  CHECK_FALSE(all);
}

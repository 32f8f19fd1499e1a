#include <catch_amalgamated.hpp>

#include <random>

#include "mopfact/matrix.hpp"
#include "mopfact/scalar.hpp"
#include "mopfact/series.hpp"
#include "oracles.hpp"

using namespace mopfact;

TEST_CASE("scalar parsing accepts p/q and integers only", "[scalar]") {
  CHECK(Scalar::parse("3/6") == Scalar(1, 2));
  CHECK(Scalar::parse("-4") == Scalar(-4));
  CHECK(Scalar::parse("+7/14") == Scalar(1, 2));
  CHECK(Scalar::parse("123456789012345678901234567890").str() == "123456789012345678901234567890");
  for (const char* bad : {"", "1/", "/2", "1.5", " 1", "1 /2", "a", "1/-2", "--1", "+"})
    CHECK_THROWS_AS(Scalar::parse(bad), ParseError);
  CHECK_THROWS_AS(Scalar::parse("1/0"), ZeroDivisor);
}

TEST_CASE("scalar arithmetic is exact and canonical", "[scalar]") {
  const Scalar a(1, 3), b(1, 6);
  CHECK(a + b == Scalar(1, 2));
  CHECK((a - b).str() == "1/6");
  CHECK(a * b == Scalar(1, 18));
  CHECK(a / b == Scalar(2));
  CHECK((Scalar(2, 4)).str() == "1/2");
  CHECK_THROWS_AS(a / Scalar(0), ZeroDivisor);
  CHECK(Scalar(1, 3) < Scalar(1, 2));
  CHECK(abs(Scalar(-5, 7)) == Scalar(5, 7));
  CHECK(is_negative_integer(Scalar(-2)));
  CHECK_FALSE(is_negative_integer(Scalar(-1, 2)));
  CHECK_FALSE(is_negative_integer(Scalar(0)));
  CHECK(to_decimal(Scalar(1, 3)) == "0.33333333333333331");
}

TEST_CASE("pochhammer, binomial and power", "[scalar]") {
  CHECK(pochhammer(Scalar(1), 5) == Scalar(120));
  CHECK(pochhammer(Scalar(1, 2), 3) == Scalar(15, 8));
  CHECK(pochhammer(Scalar(-2), 3) == Scalar(0));
  CHECK(pochhammer(Scalar(7, 3), 0) == Scalar(1));
  CHECK(binomial(6, 2) == Scalar(15));
  CHECK(binomial(3, 5) == Scalar(0));
  CHECK(power(Scalar(2, 3), 4) == Scalar(16, 81));
}

TEST_CASE("series operations track truncation order", "[series]") {
  const TruncatedSeries a({Scalar(1), Scalar(2), Scalar(3)});
  const TruncatedSeries b({Scalar(1), Scalar(-1)});
  CHECK(series_add(a, b).order() == 1);
  CHECK(series_mul(a, b).order() == 1);
  CHECK(series_mul(a, b).at(1) == Scalar(1));
  CHECK_THROWS_AS(series_mul(a, b).at(2), InsufficientOrder);

  const TruncatedSeries d({Scalar(0), Scalar(4), Scalar(6)});
  const TruncatedSeries q = series_divide_by_ct(d, Scalar(2));
  CHECK(q.order() == 1);
  CHECK(q.at(0) == Scalar(2));
  CHECK(q.at(1) == Scalar(3));
  CHECK_THROWS_AS(series_divide_by_ct(a, Scalar(1)), NonzeroConstantTerm);
  CHECK_THROWS_AS(series_divide_by_ct(d, Scalar(0)), ZeroDivisor);
  CHECK(series_divide_by_ct(TruncatedSeries{}, Scalar(1)).order() == -1);
}

TEST_CASE("every coefficient claimed by a truncated result matches a longer computation", "[series][property]") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> ord(0, 7), coef(-5, 5);
  auto random_series = [&](int order) {
    std::vector<Scalar> c;
    for (int i = 0; i <= order; ++i) c.emplace_back(coef(rng), 1 + std::abs(coef(rng)));
    return TruncatedSeries(c);
  };
  for (int trial = 0; trial < 200; ++trial) {
    const TruncatedSeries long_a = random_series(12), long_b = random_series(12);
    const int oa = ord(rng), ob = ord(rng);
    const auto short_a = long_a.truncated(oa), short_b = long_b.truncated(ob);

    const auto prod = series_mul(short_a, short_b);
    const auto prod_ref = series_mul(long_a, long_b);
    for (std::ptrdiff_t n = 0; n <= prod.order(); ++n) REQUIRE(prod.at(n) == prod_ref.at(n));

    const auto diff = series_sub(short_a, short_b);
    const auto diff_ref = series_sub(long_a, long_b);
    for (std::ptrdiff_t n = 0; n <= diff.order(); ++n) REQUIRE(diff.at(n) == diff_ref.at(n));

    // Division by t needs a zero constant term; force it on both.
    auto zero_ct = [](TruncatedSeries s) {
      std::vector<Scalar> c;
      for (std::ptrdiff_t n = 0; n <= s.order(); ++n) c.push_back(n == 0 ? Scalar(0) : s.at(n));
      return TruncatedSeries(c);
    };
    const auto q = series_divide_by_ct(zero_ct(short_a), Scalar(3));
    const auto q_ref = series_divide_by_ct(zero_ct(long_a), Scalar(3));
    for (std::ptrdiff_t n = 0; n <= q.order(); ++n) REQUIRE(q.at(n) == q_ref.at(n));
  }
}

TEST_CASE("determinant agrees with cofactor expansion", "[matrix]") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (std::size_t n = 0; n <= 6; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      Matrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Scalar(coef(rng), 1 + std::abs(coef(rng)));
      if (n >= 2 && trial % 3 == 0) m(0, 0) = Scalar(0);  // exercise the row swap
      REQUIRE(determinant(m) == oracle::laplace_det(m));
    }
  }
  CHECK(determinant(Matrix()) == Scalar(1));
}

TEST_CASE("triangular inverses and shift matrix", "[matrix]") {
  const Matrix a = Matrix::from_rows({{1, 0, 0}, {Scalar(1, 2), 1, 0}, {3, Scalar(-2, 3), 1}});
  CHECK(oracle::multiply(a, unit_lower_inverse(a)) == Matrix::identity(3));
  const Matrix b = Matrix::from_rows({{2, 1, 5}, {0, Scalar(1, 3), -1}, {0, 0, 7}});
  CHECK(oracle::multiply(b, upper_inverse(b)) == Matrix::identity(3));
  const Matrix s = shift_matrix(3);
  CHECK(s == Matrix::from_rows({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));
  CHECK(a * b == oracle::multiply(a, b));
  CHECK(a.without(1, 0) == Matrix::from_rows({{0, 0}, {Scalar(-2, 3), 1}}));
}

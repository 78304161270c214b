#include <doctest.h>

#include <cmath>

#include "irrtest/error.hpp"
#include "irrtest/stats.hpp"

using namespace irrtest::stats;
using irrtest::Error;
using irrtest::ErrorKind;
using irrtest::ff::Field;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an irrtest::Error");
  return ErrorKind::InvalidArgument;
}

double round4(double x) { return std::round(x * 1e4) / 1e4; }

// Gaussian upper tail by composite Simpson integration over [s, s + 12].
double simpson_tail(double s) {
  const int steps = 20000;
  const double h = 12.0 / steps;
  auto phi = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); };
  double sum = phi(s) + phi(s + 12.0);
  for (int i = 1; i < steps; ++i) sum += (i % 2 ? 4.0 : 2.0) * phi(s + i * h);
  return sum * h / 3.0;
}

// Exhaustive rank-deficiency count over all 2x2 matrices of F_q.
Rational singular_2x2_fraction(std::uint64_t q) {
  std::uint64_t singular = 0;
  for (std::uint64_t a = 0; a < q; ++a)
    for (std::uint64_t b = 0; b < q; ++b)
      for (std::uint64_t c = 0; c < q; ++c)
        for (std::uint64_t d = 0; d < q; ++d) singular += (a * d + q * q - b * c) % q == 0;
  return Rational(singular) / Rational(q * q * q * q);
}

}  // namespace

TEST_CASE("gamma and product models over F_11, n = 4") {
  const auto g = gamma_model(11, 4);
  CHECK(g.trials() == 14641);
  CHECK(g.success_p() == Rational(1, 11));
  CHECK(g.expected_fraction() == Rational(1, 11));
  CHECK(round4(g.normal_approx().mean) == doctest::Approx(0.0909));
  CHECK(round4(g.normal_approx().sd) == doctest::Approx(0.0024));

  const auto p = product_model(11, 4);
  CHECK(p.success_p() == Rational(21, 121));
  CHECK(round4(p.normal_approx().sd) == doctest::Approx(0.0031));
  const auto [lo, hi] = p.normal_approx().central_interval(0.005);
  CHECK(round4(lo) == doctest::Approx(0.1655));
  CHECK(round4(hi) == doctest::Approx(0.1816));

  CHECK(product_model(2, 3).success_p() == Rational(3, 4));
  CHECK(gamma_model(2, 1).trials() == 2);
  CHECK(gamma_model(2, 1).success_p() == Rational(1, 2));
}

TEST_CASE("brute-force enumeration matches the analytic models exactly") {
  const Field f2 = Field::prime(2), f3 = Field::prime(3);
  CHECK(brute_force_distribution(f2, 1, kind::Single{}) ==
        std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(1, 4)});
  CHECK(brute_force_distribution(f2, 2, kind::Single{}) == padded_pmf(gamma_model(2, 2), 5));
  CHECK(brute_force_distribution(f3, 1, kind::Single{}) == padded_pmf(gamma_model(3, 1), 4));
  CHECK(brute_force_distribution(f3, 2, kind::Single{}) == padded_pmf(gamma_model(3, 2), 10));
  CHECK(brute_force_distribution(f2, 1, kind::Product{}) == padded_pmf(product_model(2, 1), 3));
  CHECK(brute_force_distribution(f3, 1, kind::Product{}) == padded_pmf(product_model(3, 1), 4));
  CHECK(brute_force_distribution(f3, 1, kind::Intersection{{0, 1}}) ==
        padded_pmf(intersection_model(3, 1, 2), 4));
  CHECK(brute_force_distribution(f2, 1, kind::Substitution{1, {0}}) ==
        padded_pmf(substitution_model(2, 1, Rational(1, 2)), 3));
  // X = {0} inside A^2(F_2) under maps F_2 -> A^2: gamma_X = 1/4.
  CHECK(brute_force_distribution(f2, 1, kind::Substitution{2, {0}}) ==
        padded_pmf(substitution_model(2, 1, Rational(1, 4)), 3));

  // The 3^1 pmf written out by hand: C(3,k) 2^(3-k) / 27.
  const auto pmf = gamma_model(3, 1).pmf_exact_table();
  CHECK(pmf == std::vector<Rational>{Rational(8, 27), Rational(12, 27), Rational(6, 27), Rational(1, 27)});

  CHECK(kind_of([&] { brute_force_distribution(f3, 3, kind::Single{}); }) == ErrorKind::TooLarge);
  CHECK(kind_of([&] { brute_force_distribution(f3, 1, kind::Intersection{{5}}); }) == ErrorKind::RangeError);
}

TEST_CASE("degenerate and edge models") {
  const auto empty = intersection_model(5, 2, 0);
  CHECK(empty.trials() == 0);
  CHECK(empty.expected_fraction() == 0);
  CHECK(empty.pmf_exact_table() == std::vector<Rational>{Rational(1)});
  CHECK(intersection_model(5, 2, 10).fraction_denominator() == 25);
  CHECK(intersection_model(5, 2, 10).expected_fraction() == Rational(2, 25));
  CHECK(intersection_expectation(7, 1) == Rational(1, 7));
  CHECK(intersection_expectation(3, 4) == Rational(1, 81));

  const auto none = substitution_model(2, 3, 0);
  CHECK(none.pmf_exact(0) == 1);
  const auto all = substitution_model(2, 3, 1);
  CHECK(all.pmf_exact(8) == 1);
  CHECK(all.pmf(8) == 1.0);

  CHECK(kind_of([] { gamma_model(2, 64); }) == ErrorKind::OrderOverflow);
  CHECK(kind_of([] { gamma_model(1, 3); }) == ErrorKind::RangeError);
  CHECK(kind_of([] { intersection_model(2, 2, 5); }) == ErrorKind::RangeError);
  CHECK(kind_of([] { substitution_model(2, 2, Rational(3, 2)); }) == ErrorKind::RangeError);
  CHECK(kind_of([] { gamma_model(11, 5).pmf_exact_table(); }) == ErrorKind::TooLarge);
}

TEST_CASE("double pmf agrees with the exact pmf") {
  const auto m = product_model(3, 3);
  const auto exact = m.pmf_exact_table();
  const auto approx = m.pmf_table();
  double total = 0;
  for (std::size_t k = 0; k < exact.size(); ++k) {
    CHECK(approx[k] == doctest::Approx(to_double(exact[k])).epsilon(1e-10));
    total += approx[k];
  }
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("determinantal expectation") {
  CHECK(det_expectation_exact(7, 1, 1) == Rational(1, 7));
  CHECK(det_expectation_exact(2, 2, 2) == Rational(5, 8));
  CHECK(singular_2x2_fraction(2) == Rational(5, 8));
  CHECK(singular_2x2_fraction(3) == det_expectation_exact(3, 2, 2));
  CHECK(det_expectation(2, 2, 2) == doctest::Approx(0.625));

  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17}) {
    const Rational gap = det_expectation_exact(q, 12, 12) - det_square_series(q);
    CHECK(abs(gap) <= Rational(1) / pow(boost::multiprecision::cpp_int(q), 11));
    CHECK(det_expectation(q, 12, 12) == doctest::Approx(to_double(det_expectation_exact(q, 12, 12))).epsilon(1e-12));
  }

  for (std::uint64_t q : {2, 3, 5}) {
    for (std::uint64_t r = 1; r <= 5; ++r) {
      for (std::uint64_t c = r; c <= 6; ++c) {
        const double e = det_expectation(q, r, c);
        CHECK(e > 0.0);
        CHECK(e < 1.0);
        CHECK(det_expectation(q, r, c + 1) < e);
        if (r < c) CHECK(det_expectation(q, r + 1, c) > e);
      }
    }
  }
  CHECK(kind_of([] { det_expectation(2, 3, 2); }) == ErrorKind::RangeError);
  CHECK(kind_of([] { det_expectation_exact(2, 0, 2); }) == ErrorKind::RangeError);
}

TEST_CASE("tail quantile") {
  CHECK(inverse_tail_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::abs(inverse_tail_quantile(0.005) - 2.5758293) < 1e-6);
  CHECK(inverse_tail_quantile(0.005, QuantileConvention::TwoDecimal) == 2.58);
  // Oracle: s such that the Simpson-integrated tail equals 0.0013499.
  CHECK(std::abs(simpson_tail(3.0) - 0.0013499) < 1e-7);
  CHECK(std::abs(inverse_tail_quantile(0.0013499) - 3.0) < 1e-4);
  for (double s : {-1.5, 0.3, 1.0, 2.2, 4.0}) {
    CHECK(std::abs(inverse_tail_quantile(simpson_tail(s)) - s) < 1e-6);
  }
  CHECK(kind_of([] { inverse_tail_quantile(0.0); }) == ErrorKind::RangeError);
  CHECK(kind_of([] { inverse_tail_quantile(1.0); }) == ErrorKind::RangeError);
}

TEST_CASE("wald interval") {
  const auto x = wald_interval(567, 1000, 0.005);
  CHECK(std::round(x.estimate * 1000) == 567);
  CHECK(std::round(x.half_width * 1000) == 40);
  CHECK(x.level == doctest::Approx(0.99));
  const auto d = wald_interval(93, 1000, 0.005);
  CHECK(std::round(d.half_width * 1000) == 24);

  const auto zero = wald_interval(0, 50, 0.005);
  CHECK(zero.degenerate);
  CHECK(zero.lower() == 0.0);
  CHECK(zero.upper() == 0.0);
  CHECK(wald_interval(50, 50, 0.005).degenerate);
  CHECK_FALSE(x.degenerate);

  const auto a = wald_interval(300, 1000, 0.01);
  const auto b = wald_interval(600, 2000, 0.01);
  CHECK(a.half_width / b.half_width == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const auto wide = wald_interval(1, 2, 0.005);
  CHECK(wide.lower() == 0.0);
  CHECK(wide.upper() == 1.0);
  CHECK(wide.contains(0.5));

  CHECK(kind_of([] { wald_interval(3, 2, 0.005); }) == ErrorKind::RangeError);
  CHECK(kind_of([] { wald_interval(0, 0, 0.005); }) == ErrorKind::RangeError);
}

#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "irrtest/field.hpp"

namespace irrtest::stats {

using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);

/// How the normal quantile s(eps) is reported. TwoDecimal rounds it to two
/// places, e.g. 2.58 for eps = 0.005, which is what the published tables use.
enum class QuantileConvention { Exact, TwoDecimal };

/// Upper Gaussian tail Phi(s) = P(Z >= s).
double tail_probability(double s);

/// The s with Phi(s) = eps (bisection, |error| < 1e-10). RangeError unless
/// 0 < eps < 1.
double inverse_tail_quantile(double eps, QuantileConvention convention = QuantileConvention::Exact);

struct NormalApprox {
  double mean = 0;
  double sd = 0;

  /// [mean - s sd, mean + s sd] with s = inverse_tail_quantile(eps).
  std::pair<double, double> central_interval(double eps,
                                             QuantileConvention convention = QuantileConvention::Exact) const;
};

/// B(trials, success_p) describing a zero count k; the matching zero
/// fraction is k / fraction_denominator. The denominator is q^n even when the
/// trials run over a subset (intersection with X).
class BinomialModel {
 public:
  BinomialModel(std::uint64_t trials, Rational success_p, std::uint64_t fraction_denominator);
  BinomialModel(std::uint64_t trials, Rational success_p)
      : BinomialModel(trials, std::move(success_p), trials) {}

  std::uint64_t trials() const { return trials_; }
  const Rational& success_p() const { return success_p_; }
  double success_probability() const { return to_double(success_p_); }
  std::uint64_t fraction_denominator() const { return denominator_; }

  /// E[k] / fraction_denominator, exactly.
  Rational expected_fraction() const;
  /// Normal approximation of the zero fraction k / fraction_denominator;
  /// for the standard models this is N(p, sqrt(p(1-p)/N)).
  NormalApprox normal_approx() const;

  Rational pmf_exact(std::uint64_t k) const;
  /// Exact pmf over k = 0..trials; TooLarge above 20000 trials.
  std::vector<Rational> pmf_exact_table() const;
  /// Log-space double evaluation, usable for large trial counts.
  double pmf(std::uint64_t k) const;
  std::vector<double> pmf_table() const;

 private:
  std::uint64_t trials_;
  Rational success_p_;
  std::uint64_t denominator_;
};

/// q^n with OrderOverflow when it does not fit in 64 bits; RangeError for
/// q < 2 or n < 1.
std::uint64_t domain_size(std::uint64_t q, std::size_t n);

/// Zero fraction of a uniformly random function A^n(F_q) -> F_q: B(q^n, 1/q).
BinomialModel gamma_model(std::uint64_t q, std::size_t n);
/// Zero fraction of f*g for independent random f, g: B(q^n, (2q-1)/q^2).
BinomialModel product_model(std::uint64_t q, std::size_t n);
/// Zeros of a random f on a fixed X with |X| = x_count: B(|X|, 1/q).
BinomialModel intersection_model(std::uint64_t q, std::size_t n, std::uint64_t x_count);
/// Expected fraction of V(f_1) cap ... cap V(f_c): q^-c.
Rational intersection_expectation(std::uint64_t q, std::uint64_t c);
/// Preimage fraction of X under a random map A^n -> A^m: B(q^n, gamma_X).
BinomialModel substitution_model(std::uint64_t q, std::size_t n, const Rational& gamma_x);

/// Fraction of r x c matrices (r <= c) over F_q of rank < r:
/// 1 - prod_{i=0}^{r-1} (1 - q^{-(c-i)}).
Rational det_expectation_exact(std::uint64_t q, std::uint64_t r, std::uint64_t c);
/// Same, in double precision via -expm1(sum log1p(-q^{-(c-i)})).
double det_expectation(std::uint64_t q, std::uint64_t r, std::uint64_t c);
/// Rank deficiency of a random matrix of functions: B(q^n, det_expectation).
BinomialModel det_model(std::uint64_t q, std::size_t n, std::uint64_t r, std::uint64_t c);
/// Truncated large-square-matrix series 1/q + 1/q^2 - 1/q^5 - 1/q^7.
Rational det_square_series(std::uint64_t q);

struct ConfidenceInterval {
  double estimate = 0;
  double half_width = 0;
  double level = 0;  // two-sided, 1 - 2 eps
  bool degenerate = false;

  double lower() const;
  double upper() const;
  bool contains(double value) const { return lower() <= value && value <= upper(); }
};

/// k/N +- s(eps) sqrt(p(1-p)/N), clamped to [0, 1]. Flagged degenerate when
/// k is 0 or N (zero width by this formula).
ConfidenceInterval wald_interval(std::uint64_t k, std::uint64_t n_samples, double eps,
                                 QuantileConvention convention = QuantileConvention::Exact);

// Exhaustive enumeration over value tables of functions A^n(F_q) -> F_q.
// Points of A^n are indexed by sum code(x_i) q^(n-i), i.e. x1 most
// significant and xn varying fastest.
namespace kind {
struct Single {};
struct Product {};
struct Intersection {
  std::vector<std::uint64_t> points;  // indices into A^n
};
struct Substitution {
  std::size_t m = 1;
  std::vector<std::uint64_t> points;  // indices into A^m
};
}  // namespace kind

using FunctionSpaceKind = std::variant<kind::Single, kind::Product, kind::Intersection, kind::Substitution>;

inline constexpr std::uint64_t kBruteForceLimit = 10'000'000;

/// Number of value tables (or pairs, or maps) the enumeration visits;
/// saturates at UINT64_MAX.
std::uint64_t brute_force_items(std::uint64_t q, std::size_t n, const FunctionSpaceKind& kind);

/// Exact pmf of the zero count, k = 0..q^n, by enumerating every value table.
/// TooLarge when more than `max_items` tables would be visited.
std::vector<Rational> brute_force_distribution(const ff::Field& field, std::size_t n,
                                               const FunctionSpaceKind& kind,
                                               std::uint64_t max_items = kBruteForceLimit);

/// Analytic pmf padded with zeros to `length` entries.
std::vector<Rational> padded_pmf(const BinomialModel& model, std::size_t length);

}  // namespace irrtest::stats

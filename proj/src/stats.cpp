#include "irrtest/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "irrtest/error.hpp"

namespace irrtest::stats {

namespace {

void check_field_params(std::uint64_t q, std::size_t n) {
  if (q < 2) throw Error(ErrorKind::RangeError, "q must be >= 2");
  if (n < 1) throw Error(ErrorKind::RangeError, "n must be >= 1");
}

Rational rational_power(const Rational& base, std::uint64_t e) {
  Rational result = 1;
  Rational b = base;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

boost::multiprecision::cpp_int binomial(std::uint64_t n, std::uint64_t k) {
  k = std::min(k, n - k);
  boost::multiprecision::cpp_int result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

}  // namespace

double to_double(const Rational& r) { return r.convert_to<double>(); }

double tail_probability(double s) { return 0.5 * std::erfc(s / std::sqrt(2.0)); }

double inverse_tail_quantile(double eps, QuantileConvention convention) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::RangeError, "epsilon must lie in (0, 1)");
  // Phi is strictly decreasing; bisect on [-40, 40].
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (tail_probability(mid) > eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double s = 0.5 * (lo + hi);
  if (convention == QuantileConvention::TwoDecimal) return std::round(s * 100.0) / 100.0;
  return s;
}

std::pair<double, double> NormalApprox::central_interval(double eps, QuantileConvention convention) const {
  const double s = inverse_tail_quantile(eps, convention);
  return {mean - s * sd, mean + s * sd};
}

BinomialModel::BinomialModel(std::uint64_t trials, Rational success_p, std::uint64_t fraction_denominator)
    : trials_(trials), success_p_(std::move(success_p)), denominator_(fraction_denominator) {
  if (success_p_ < 0 || success_p_ > 1) throw Error(ErrorKind::RangeError, "success probability outside [0, 1]");
  if (denominator_ == 0 && trials_ != 0) throw Error(ErrorKind::RangeError, "zero fraction denominator");
}

Rational BinomialModel::expected_fraction() const {
  if (denominator_ == 0) return 0;
  return Rational(trials_) * success_p_ / Rational(denominator_);
}

NormalApprox BinomialModel::normal_approx() const {
  if (denominator_ == 0) return {0.0, 0.0};
  const double p = success_probability();
  const auto n = static_cast<double>(trials_);
  const auto d = static_cast<double>(denominator_);
  return {n * p / d, std::sqrt(n * p * (1.0 - p)) / d};
}

Rational BinomialModel::pmf_exact(std::uint64_t k) const {
  if (k > trials_) return 0;
  return Rational(binomial(trials_, k)) * rational_power(success_p_, k) *
         rational_power(1 - success_p_, trials_ - k);
}

std::vector<Rational> BinomialModel::pmf_exact_table() const {
  if (trials_ > 20000) throw Error(ErrorKind::TooLarge, "exact pmf with more than 20000 trials");
  std::vector<Rational> out;
  out.reserve(trials_ + 1);
  for (std::uint64_t k = 0; k <= trials_; ++k) out.push_back(pmf_exact(k));
  return out;
}

double BinomialModel::pmf(std::uint64_t k) const {
  if (k > trials_) return 0.0;
  const double p = success_probability();
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == trials_ ? 1.0 : 0.0;
  const auto n = static_cast<double>(trials_);
  const auto kk = static_cast<double>(k);
  const double log_pmf = std::lgamma(n + 1) - std::lgamma(kk + 1) - std::lgamma(n - kk + 1) + kk * std::log(p) +
                         (n - kk) * std::log1p(-p);
  return std::exp(log_pmf);
}

std::vector<double> BinomialModel::pmf_table() const {
  std::vector<double> out;
  out.reserve(trials_ + 1);
  for (std::uint64_t k = 0; k <= trials_; ++k) out.push_back(pmf(k));
  return out;
}

std::uint64_t domain_size(std::uint64_t q, std::size_t n) {
  check_field_params(q, n);
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (size > std::numeric_limits<std::uint64_t>::max() / q) {
      throw Error(ErrorKind::OrderOverflow, std::to_string(q) + "^" + std::to_string(n) + " does not fit in 64 bits");
    }
    size *= q;
  }
  return size;
}

BinomialModel gamma_model(std::uint64_t q, std::size_t n) {
  return BinomialModel(domain_size(q, n), Rational(1, q));
}

BinomialModel product_model(std::uint64_t q, std::size_t n) {
  const std::uint64_t size = domain_size(q, n);
  return BinomialModel(size, Rational(2 * q - 1) / (Rational(q) * q));
}

BinomialModel intersection_model(std::uint64_t q, std::size_t n, std::uint64_t x_count) {
  const std::uint64_t size = domain_size(q, n);
  if (x_count > size) throw Error(ErrorKind::RangeError, "|X| exceeds q^n");
  return BinomialModel(x_count, Rational(1, q), size);
}

Rational intersection_expectation(std::uint64_t q, std::uint64_t c) {
  if (q < 2) throw Error(ErrorKind::RangeError, "q must be >= 2");
  if (c < 1) throw Error(ErrorKind::RangeError, "c must be >= 1");
  return rational_power(Rational(1, q), c);
}

BinomialModel substitution_model(std::uint64_t q, std::size_t n, const Rational& gamma_x) {
  if (gamma_x < 0 || gamma_x > 1) throw Error(ErrorKind::RangeError, "gamma_X outside [0, 1]");
  return BinomialModel(domain_size(q, n), gamma_x);
}

Rational det_expectation_exact(std::uint64_t q, std::uint64_t r, std::uint64_t c) {
  if (q < 2) throw Error(ErrorKind::RangeError, "q must be >= 2");
  if (r < 1 || r > c) throw Error(ErrorKind::RangeError, "need 1 <= rows <= cols");
  Rational full_rank = 1;
  for (std::uint64_t i = 0; i < r; ++i) full_rank *= 1 - rational_power(Rational(1, q), c - i);
  return 1 - full_rank;
}

double det_expectation(std::uint64_t q, std::uint64_t r, std::uint64_t c) {
  if (q < 2) throw Error(ErrorKind::RangeError, "q must be >= 2");
  if (r < 1 || r > c) throw Error(ErrorKind::RangeError, "need 1 <= rows <= cols");
  double log_full_rank = 0.0;
  for (std::uint64_t i = 0; i < r; ++i) {
    log_full_rank += std::log1p(-std::pow(static_cast<double>(q), -static_cast<double>(c - i)));
  }
  return -std::expm1(log_full_rank);
}

BinomialModel det_model(std::uint64_t q, std::size_t n, std::uint64_t r, std::uint64_t c) {
  return BinomialModel(domain_size(q, n), det_expectation_exact(q, r, c));
}

Rational det_square_series(std::uint64_t q) {
  const Rational x(1, q);
  return x + rational_power(x, 2) - rational_power(x, 5) - rational_power(x, 7);
}

double ConfidenceInterval::lower() const { return std::max(0.0, estimate - half_width); }
double ConfidenceInterval::upper() const { return std::min(1.0, estimate + half_width); }

ConfidenceInterval wald_interval(std::uint64_t k, std::uint64_t n_samples, double eps,
                                 QuantileConvention convention) {
  if (n_samples < 1) throw Error(ErrorKind::RangeError, "need at least one sample");
  if (k > n_samples) throw Error(ErrorKind::RangeError, "more zeros than samples");
  const double s = inverse_tail_quantile(eps, convention);
  const double p_hat = static_cast<double>(k) / static_cast<double>(n_samples);
  ConfidenceInterval ci;
  ci.estimate = p_hat;
  ci.half_width = s * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n_samples));
  ci.level = 1.0 - 2.0 * eps;
  ci.degenerate = k == 0 || k == n_samples;
  return ci;
}

std::vector<Rational> padded_pmf(const BinomialModel& model, std::size_t length) {
  auto pmf = model.pmf_exact_table();
  pmf.resize(std::max(length, pmf.size()), Rational(0));
  return pmf;
}

}  // namespace irrtest::stats

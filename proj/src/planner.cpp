#include "irrtest/planner.hpp"

#include <cmath>
#include <sstream>

#include "irrtest/error.hpp"

namespace irrtest::planner {

namespace {

void check_plan_inputs(std::uint64_t q, std::size_t n, double eps) {
  if (q < 2) throw Error(ErrorKind::RangeError, "q must be >= 2");
  if (n < 1) throw Error(ErrorKind::RangeError, "n must be >= 1");
  if (!(eps > 0.0 && eps < 0.5)) throw Error(ErrorKind::RangeError, "epsilon must lie in (0, 0.5)");
}

// Smallest integer >= x, except that x within 1e-9 of an integer rounds to it.
std::uint64_t snapped_ceil(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9) return static_cast<std::uint64_t>(nearest);
  return static_cast<std::uint64_t>(std::ceil(x));
}

double binomial_sd(double p) { return std::sqrt(p * (1.0 - p)); }

}  // namespace

std::pair<double, double> adjusted_probabilities(std::uint64_t q, std::size_t n, double eps,
                                                 QuantileConvention convention) {
  check_plan_inputs(q, n, eps);
  const double s = stats::inverse_tail_quantile(eps, convention);
  const double qd = static_cast<double>(q);
  const double points = std::pow(qd, static_cast<double>(n));
  const double a = 1.0 / qd;
  const double b = (2.0 * qd - 1.0) / (qd * qd);
  return {a + s * binomial_sd(a) / std::sqrt(points), b - s * binomial_sd(b) / std::sqrt(points)};
}

double p_middle(double p1, double p2) {
  if (!(0.0 < p1 && p1 < p2 && p2 < 1.0)) throw Error(ErrorKind::RangeError, "need 0 < p1 < p2 < 1");
  const double numer = std::sqrt(p1 * (1.0 - p2)) + std::sqrt(p2 * (1.0 - p1));
  const double denom = binomial_sd(p1) + binomial_sd(p2);
  return std::sqrt(p1 * p2) * numer / denom;
}

double p_middle_shortcut(double p1, double p2) {
  if (!(0.0 < p1 && p1 < p2 && p2 < 1.0)) throw Error(ErrorKind::RangeError, "need 0 < p1 < p2 < 1");
  return std::sqrt(p1 * p2);
}

std::uint64_t required_N(double p1, double p2, double eps, QuantileConvention convention) {
  if (!(p1 < p2)) throw Error(ErrorKind::InfeasibleOrder, "p1 >= p2: the hypotheses overlap");
  const double s = stats::inverse_tail_quantile(eps, convention);
  const double rhs = s * (binomial_sd(p1) + binomial_sd(p2)) / (p2 - p1);
  return std::max<std::uint64_t>(1, snapped_ceil(rhs * rhs));
}

TestPlan plan_test(std::uint64_t q, std::size_t n, double eps, QuantileConvention convention) {
  TestPlan plan;
  plan.q = q;
  plan.n = n;
  plan.epsilon = eps;
  std::tie(plan.p1, plan.p2) = adjusted_probabilities(q, n, eps, convention);
  plan.s = stats::inverse_tail_quantile(eps, convention);
  plan.feasible = plan.p1 < plan.p2;
  if (!plan.feasible) return plan;

  plan.p_middle = p_middle(plan.p1, plan.p2);
  plan.N = required_N(plan.p1, plan.p2, eps, convention);
  plan.threshold_k = static_cast<std::uint64_t>(std::floor(static_cast<double>(*plan.N) * *plan.p_middle + 0.5));
  const double points = std::pow(static_cast<double>(q), static_cast<double>(n));
  plan.exceeds_domain = static_cast<double>(*plan.N) > points;
  return plan;
}

std::optional<std::uint64_t> estimate_N_bound(std::uint64_t q, std::size_t n, double eps,
                                              QuantileConvention convention) {
  if (q < 3) throw Error(ErrorKind::RangeError, "the estimate needs q >= 3");
  check_plan_inputs(q, n, eps);
  const double s = stats::inverse_tail_quantile(eps, convention);
  const double qd = static_cast<double>(q);
  const double denom = qd - 1.0 - 2.0 * s * std::pow(qd, -(static_cast<double>(n) - 2.0) / 2.0);
  if (denom <= 0.0) return std::nullopt;
  const double root = s * std::pow(2.0 * qd, 1.5) / denom;
  return snapped_ceil(root * root);
}

Tables emit_tables(double eps, QuantileConvention convention) {
  Tables out;
  for (std::size_t n = 1; n <= kTableRows; ++n) {
    auto& n_row = out.N.emplace_back();
    auto& t_row = out.threshold.emplace_back();
    for (const auto q : kTableQ) {
      const TestPlan plan = plan_test(q, n, eps, convention);
      n_row.push_back(plan.N);
      t_row.push_back(plan.threshold_k);
    }
  }
  return out;
}

std::string format_grid_csv(const Grid& grid) {
  std::ostringstream out;
  out << "n\\q";
  for (const auto q : kTableQ) out << ',' << q;
  out << '\n';
  for (std::size_t row = 0; row < grid.size(); ++row) {
    out << row + 1;
    for (const auto& cell : grid[row]) {
      out << ',';
      if (cell) {
        out << *cell;
      } else {
        out << "inf";
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace irrtest::planner

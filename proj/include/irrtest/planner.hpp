#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irrtest/stats.hpp"

namespace irrtest::planner {

using stats::QuantileConvention;

struct TestPlan {
  std::uint64_t q = 0;
  std::size_t n = 0;
  double epsilon = 0;
  double s = 0;
  double p1 = 0;
  double p2 = 0;
  std::optional<double> p_middle;
  std::optional<std::uint64_t> N;
  std::optional<std::uint64_t> threshold_k;
  bool feasible = false;
  /// Advisory only: more samples than there are points in A^n(F_q).
  bool exceeds_domain = false;
};

/// (p1, p2): the irreducible-side rate pushed up and the product-side rate
/// pushed down by s(eps) standard deviations of a q^n-point sample.
/// RangeError unless q >= 2, n >= 1, 0 < eps < 0.5.
std::pair<double, double> adjusted_probabilities(std::uint64_t q, std::size_t n, double eps,
                                                 QuantileConvention convention = QuantileConvention::Exact);

/// Decision point between B(N, p1) and B(N, p2). RangeError unless
/// 0 < p1 < p2 < 1.
double p_middle(double p1, double p2);
double p_middle_shortcut(double p1, double p2);

/// Smallest N separating the two hypotheses at level eps. InfeasibleOrder
/// when p1 >= p2.
std::uint64_t required_N(double p1, double p2, double eps,
                         QuantileConvention convention = QuantileConvention::Exact);

TestPlan plan_test(std::uint64_t q, std::size_t n, double eps,
                   QuantileConvention convention = QuantileConvention::Exact);

/// Closed-form upper estimate of N for q >= 3; nullopt when the estimate's
/// denominator is not positive.
std::optional<std::uint64_t> estimate_N_bound(std::uint64_t q, std::size_t n, double eps,
                                              QuantileConvention convention = QuantileConvention::Exact);

inline constexpr std::uint64_t kTableQ[] = {2, 3, 5, 7, 11, 13, 17};
inline constexpr std::size_t kTableRows = 10;

enum class TableKind { N, Threshold };

/// cells[n - 1][j] for q = kTableQ[j]; nullopt marks an infeasible cell.
using Grid = std::vector<std::vector<std::optional<std::uint64_t>>>;

struct Tables {
  Grid N;
  Grid threshold;
};

Tables emit_tables(double eps, QuantileConvention convention = QuantileConvention::Exact);

/// CSV with header "n\q,2,3,5,7,11,13,17" and "inf" for infeasible cells.
std::string format_grid_csv(const Grid& grid);

}  // namespace irrtest::planner

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "irrtest/blackbox.hpp"
#include "irrtest/planner.hpp"
#include "irrtest/stats.hpp"

namespace irrtest::est {

/// Point i of a run is drawn from its own counter-based stream, so any index
/// range can be produced independently. Streams with the top bit set are
/// reserved for sampling and never collide with user streams.
class PointSampler {
 public:
  PointSampler(ff::Field field, std::size_t n, std::uint64_t seed);

  void point(std::uint64_t index, std::span<ff::Element> out) const;
  std::vector<ff::Element> point(std::uint64_t index) const;

  const ff::Field& field() const { return field_; }
  std::size_t arity() const { return n_; }
  std::uint64_t seed() const { return seed_; }

 private:
  ff::Field field_;
  std::size_t n_;
  std::uint64_t seed_;
};

/// The first N points of the run (uniform, with replacement).
std::vector<std::vector<ff::Element>> sample_points(const ff::Field& field, std::size_t n, std::uint64_t N,
                                                    std::uint64_t seed);

enum class Mode { Sampled, Exact };
std::string to_string(Mode mode);

struct SampleReport {
  std::uint64_t N = 0;
  std::uint64_t k = 0;
  double p_hat = 0;
  /// Wald interval when sampled; zero width around the exact value when exact.
  stats::ConfidenceInterval interval;
  Mode mode = Mode::Sampled;
  std::uint64_t seed = 0;
  std::chrono::duration<double> elapsed{0};
};

inline constexpr std::uint64_t kDefaultExactCap = 1'000'000;

struct EstimateOptions {
  unsigned workers = 1;
  stats::QuantileConvention convention = stats::QuantileConvention::Exact;
  /// Count exactly instead when q^n <= exact_cap and N >= q^n.
  bool auto_exact = false;
  std::uint64_t exact_cap = kDefaultExactCap;
};

/// Counts zeros of `bb` at the first N points of run `seed`. (k, N) do not
/// depend on options.workers.
SampleReport estimate_gamma(const bb::BlackBox& bb, std::uint64_t N, std::uint64_t seed, double eps,
                            const EstimateOptions& options = {});

struct ExactCount {
  std::uint64_t zeros = 0;
  std::uint64_t points = 0;
};

/// Visits every point of A^n(F_q), last coordinate fastest. DomainTooLarge
/// when q^n exceeds `cap`.
ExactCount exact_count(const bb::BlackBox& bb, std::uint64_t cap = kDefaultExactCap, unsigned workers = 1);
stats::Rational exact_gamma(const bb::BlackBox& bb, std::uint64_t cap = kDefaultExactCap, unsigned workers = 1);
SampleReport exact_report(const bb::BlackBox& bb, const EstimateOptions& options = {});

enum class Outcome { LikelyIrreducible, LikelyReducible, Infeasible };
std::string to_string(Outcome outcome);

struct Verdict {
  Outcome outcome = Outcome::Infeasible;
  planner::TestPlan plan;
  std::optional<SampleReport> report;  // absent for infeasible plans
};

/// LikelyIrreducible iff k <= threshold; Infeasible for infeasible plans.
Outcome decide(const planner::TestPlan& plan, std::uint64_t k);

/// Draws exactly plan.N points. FieldMismatch / ArityMismatch when the plan
/// does not describe bb's space.
Verdict run_irreducibility_test(const bb::BlackBox& bb, const planner::TestPlan& plan, std::uint64_t seed,
                                const EstimateOptions& options = {});

}  // namespace irrtest::est

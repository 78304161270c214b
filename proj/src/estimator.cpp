#include "irrtest/estimator.hpp"

#include <algorithm>
#include <thread>

#include "irrtest/error.hpp"

namespace irrtest::est {

using ff::Element;

namespace {

constexpr std::uint64_t kSampleStreamBit = std::uint64_t{1} << 63;

// Sums count(begin, end) over [0, total) split into contiguous shards.
template <class CountRange>
std::uint64_t sharded_count(std::uint64_t total, unsigned workers, CountRange count) {
  workers = std::max(1u, workers);
  if (workers == 1 || total < 2 * workers) return count(0, total);
  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = total / workers * w;
    const std::uint64_t end = w + 1 == workers ? total : total / workers * (w + 1);
    threads.emplace_back([&, w, begin, end] { partial[w] = count(begin, end); });
  }
  for (auto& t : threads) t.join();
  std::uint64_t sum = 0;
  for (const auto p : partial) sum += p;
  return sum;
}

// q^n, or nullopt if it exceeds cap.
std::optional<std::uint64_t> bounded_domain(std::uint64_t q, std::size_t n, std::uint64_t cap) {
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (size > cap / q) return std::nullopt;
    size *= q;
  }
  return size;
}

}  // namespace

PointSampler::PointSampler(ff::Field field, std::size_t n, std::uint64_t seed)
    : field_(std::move(field)), n_(n), seed_(seed) {}

void PointSampler::point(std::uint64_t index, std::span<Element> out) const {
  RandomStream stream(seed_, index | kSampleStreamBit);
  for (std::size_t i = 0; i < n_; ++i) out[i] = field_.random(stream);
}

std::vector<Element> PointSampler::point(std::uint64_t index) const {
  std::vector<Element> out(n_);
  point(index, out);
  return out;
}

std::vector<std::vector<Element>> sample_points(const ff::Field& field, std::size_t n, std::uint64_t N,
                                                std::uint64_t seed) {
  if (N < 1) throw Error(ErrorKind::RangeError, "need at least one sample");
  const PointSampler sampler(field, n, seed);
  std::vector<std::vector<Element>> points;
  points.reserve(N);
  for (std::uint64_t i = 0; i < N; ++i) points.push_back(sampler.point(i));
  return points;
}

std::string to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "sampled"; }

SampleReport estimate_gamma(const bb::BlackBox& bb, std::uint64_t N, std::uint64_t seed, double eps,
                            const EstimateOptions& options) {
  if (N < 1) throw Error(ErrorKind::RangeError, "need at least one sample");
  if (options.auto_exact) {
    const auto domain = bounded_domain(bb.field().order(), bb.arity(), options.exact_cap);
    if (domain && N >= *domain) {
      SampleReport report = exact_report(bb, options);
      report.seed = seed;
      return report;
    }
  }

  const auto start = std::chrono::steady_clock::now();
  const PointSampler sampler(bb.field(), bb.arity(), seed);
  const std::uint64_t k = sharded_count(N, options.workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<Element> x(bb.arity());
    std::uint64_t zeros = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      sampler.point(i, x);
      zeros += bb.is_zero_unchecked(x);
    }
    return zeros;
  });

  SampleReport report;
  report.N = N;
  report.k = k;
  report.p_hat = static_cast<double>(k) / static_cast<double>(N);
  report.interval = stats::wald_interval(k, N, eps, options.convention);
  report.mode = Mode::Sampled;
  report.seed = seed;
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

ExactCount exact_count(const bb::BlackBox& bb, std::uint64_t cap, unsigned workers) {
  const std::uint64_t q = bb.field().order();
  const std::size_t n = bb.arity();
  const auto domain = bounded_domain(q, n, cap);
  if (!domain) {
    throw Error(ErrorKind::DomainTooLarge,
                "A^" + std::to_string(n) + "(F_" + std::to_string(q) + ") has more than " + std::to_string(cap) + " points");
  }
  const std::uint64_t zeros = sharded_count(*domain, workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<Element> x(n);
    std::uint64_t count = 0;
    for (std::uint64_t index = begin; index < end; ++index) {
      std::uint64_t rest = index;
      for (std::size_t i = n; i-- > 0;) {
        x[i] = Element{rest % q};
        rest /= q;
      }
      count += bb.is_zero_unchecked(x);
    }
    return count;
  });
  return {zeros, *domain};
}

stats::Rational exact_gamma(const bb::BlackBox& bb, std::uint64_t cap, unsigned workers) {
  const auto c = exact_count(bb, cap, workers);
  return stats::Rational(c.zeros) / stats::Rational(c.points);
}

SampleReport exact_report(const bb::BlackBox& bb, const EstimateOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const auto c = exact_count(bb, options.exact_cap, options.workers);
  SampleReport report;
  report.N = c.points;
  report.k = c.zeros;
  report.p_hat = static_cast<double>(c.zeros) / static_cast<double>(c.points);
  report.interval.estimate = report.p_hat;
  report.interval.level = 1.0;
  report.mode = Mode::Exact;
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::LikelyIrreducible:
      return "likely_irreducible";
    case Outcome::LikelyReducible:
      return "likely_reducible";
    case Outcome::Infeasible:
      break;
  }
  return "infeasible";
}

Outcome decide(const planner::TestPlan& plan, std::uint64_t k) {
  if (!plan.feasible) return Outcome::Infeasible;
  return k <= *plan.threshold_k ? Outcome::LikelyIrreducible : Outcome::LikelyReducible;
}

Verdict run_irreducibility_test(const bb::BlackBox& bb, const planner::TestPlan& plan, std::uint64_t seed,
                                const EstimateOptions& options) {
  if (bb.field().order() != plan.q) {
    throw Error(ErrorKind::FieldMismatch, "plan is for q = " + std::to_string(plan.q) + ", oracle is over F_" +
                                              std::to_string(bb.field().order()));
  }
  if (bb.arity() != plan.n) {
    throw Error(ErrorKind::ArityMismatch,
                "plan is for n = " + std::to_string(plan.n) + ", oracle arity is " + std::to_string(bb.arity()));
  }
  Verdict verdict;
  verdict.plan = plan;
  if (!plan.feasible) return verdict;
  EstimateOptions sampled = options;
  sampled.auto_exact = false;
  verdict.report = estimate_gamma(bb, *plan.N, seed, plan.epsilon, sampled);
  verdict.outcome = decide(plan, verdict.report->k);
  return verdict;
}

}  // namespace irrtest::est

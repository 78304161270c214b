#include "irrtest/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <optional>
#include <sstream>

#include "irrtest/blackbox.hpp"
#include "irrtest/error.hpp"
#include "irrtest/estimator.hpp"
#include "irrtest/fixtures.hpp"
#include "irrtest/planner.hpp"
#include "irrtest/stats.hpp"

namespace irrtest::cli {

namespace {

using json = nlohmann::ordered_json;
using stats::QuantileConvention;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

QuantileConvention convention_for(bool compat) {
  return compat ? QuantileConvention::TwoDecimal : QuantileConvention::Exact;
}

struct PlanArgs {
  std::uint64_t q = 0;
  std::size_t n = 0;
  double eps = 0.005;
};

struct TableArgs {
  double eps = 0.005;
  std::string which = "N";
};

struct RunArgs {
  std::string field;
  std::uint64_t q = 0;
  std::size_t n = 0;
  std::vector<std::string> polys;
  std::string matrix;
  std::string fixture;
  std::uint64_t fixture_seed = 0;
  unsigned singular_curve = 0;
  unsigned ext_bound = 0;
  std::size_t rows = 2;
  std::size_t cols = 2;
  std::string action = "estimate";
  bool exact = false;
  std::uint64_t N = 1000;
  std::uint64_t seed = 0;
  double eps = 0.005;
  unsigned workers = 1;
  bool timing = false;
};

struct DistArgs {
  std::uint64_t q = 0;
  std::size_t n = 1;
  std::string kind = "single";
  std::uint64_t x_size = 1;
  std::size_t m = 1;
  std::size_t rows = 2;
  std::size_t cols = 2;
};

int cmd_plan(const PlanArgs& a, bool compat, std::ostream& out) {
  const auto plan = planner::plan_test(a.q, a.n, a.eps, convention_for(compat));
  out << "q=" << plan.q << '\n'
      << "n=" << plan.n << '\n'
      << "epsilon=" << plan.epsilon << '\n'
      << "s=" << plan.s << '\n'
      << "p1=" << plan.p1 << '\n'
      << "p2=" << plan.p2 << '\n'
      << "feasible=" << (plan.feasible ? "true" : "false") << '\n';
  if (!plan.feasible) return kInfeasible;
  out << "p_middle=" << *plan.p_middle << '\n'
      << "p_middle_shortcut=" << planner::p_middle_shortcut(plan.p1, plan.p2) << '\n'
      << "N=" << *plan.N << '\n'
      << "threshold=" << *plan.threshold_k << '\n'
      << "exceeds_domain=" << (plan.exceeds_domain ? "true" : "false") << '\n';
  return kSuccess;
}

int cmd_table(const TableArgs& a, bool compat, std::ostream& out) {
  const auto tables = planner::emit_tables(a.eps, convention_for(compat));
  if (a.which == "N") {
    out << planner::format_grid_csv(tables.N);
  } else {
    out << planner::format_grid_csv(tables.threshold);
  }
  return kSuccess;
}

ff::Field resolve_field(const RunArgs& a) {
  if (!a.field.empty()) return ff::Field(ff::FieldSpec::parse(a.field));
  if (a.q != 0) return ff::Field::of_order(a.q);
  throw UsageError("a field is required: pass --field or -q");
}

// The oracle named by the run arguments, with its arity checked against -n.
bb::BlackBox build_source(const RunArgs& a) {
  const int sources = !a.polys.empty() + !a.matrix.empty() + !a.fixture.empty() + (a.singular_curve != 0);
  if (sources != 1) throw UsageError("give exactly one of --poly, --matrix, --fixture, --singular-curve");

  std::optional<bb::BlackBox> box;
  if (!a.matrix.empty()) {
    const auto m = bb::parse_matrix_file(a.matrix);
    if ((!a.field.empty() || a.q != 0) && !(resolve_field(a) == m.field())) {
      throw UsageError("--field disagrees with the matrix file header");
    }
    box = bb::det_rank_bb(m);
  } else {
    const ff::Field field = resolve_field(a);
    if (!a.polys.empty()) {
      if (a.n == 0) throw UsageError("--poly needs -n");
      for (const auto& text : a.polys) {
        auto next = bb::from_poly(poly::parse_poly(text, field, a.n));
        box = box ? bb::product_bb(*box, next) : next;
      }
    } else if (a.singular_curve != 0) {
      box = bb::singular_curve_bb(a.singular_curve, field,
                                  a.ext_bound == 0 ? std::nullopt : std::optional<unsigned>(a.ext_bound));
    } else if (a.fixture == "trap") {
      box = bb::from_poly(fixtures::make_product_trap_fixture(a.fixture_seed).f.reduce(field))
                .relabeled("trap(seed=" + std::to_string(a.fixture_seed) + ") mod " + std::to_string(field.order()));
    } else if (a.fixture == "curve-c") {
      box = bb::det_rank_bb(bb::curve_c_matrix(field)).relabeled("curve-c rank < 3");
    } else if (a.fixture == "generic-det") {
      box = bb::det_rank_bb(bb::generic_matrix(field, a.rows, a.cols));
    } else {
      throw UsageError("unknown fixture '" + a.fixture + "' (expected trap, curve-c or generic-det)");
    }
  }
  if (a.n != 0 && a.n != box->arity()) {
    throw UsageError("-n " + std::to_string(a.n) + " does not match the source arity " + std::to_string(box->arity()));
  }
  return *box;
}

void put_report(json& j, const est::SampleReport& r, bool timing) {
  j["N"] = r.N;
  j["k"] = r.k;
  j["p_hat"] = r.p_hat;
  j["half_width"] = r.interval.half_width;
  j["lower"] = r.interval.lower();
  j["upper"] = r.interval.upper();
  j["mode"] = est::to_string(r.mode);
  j["seed"] = r.seed;
  if (timing) j["elapsed_s"] = r.elapsed.count();
}

int cmd_run(const RunArgs& a, bool compat, std::ostream& out) {
  const std::string action = a.exact ? "exact" : a.action;
  if (action != "estimate" && action != "test" && action != "exact") {
    throw UsageError("--action must be estimate, test or exact");
  }
  if (a.N < 1) throw UsageError("-N must be >= 1");
  const auto box = build_source(a);

  est::EstimateOptions options;
  options.workers = a.workers;
  options.convention = convention_for(compat);
  options.auto_exact = true;

  json j;
  j["q"] = box.field().order();
  j["n"] = box.arity();
  j["field"] = box.field().spec().to_string();
  j["source"] = box.label();
  j["action"] = action;
  j["epsilon"] = a.eps;

  int code = kSuccess;
  if (action == "estimate") {
    put_report(j, est::estimate_gamma(box, a.N, a.seed, a.eps, options), a.timing);
  } else if (action == "exact") {
    auto report = est::exact_report(box, options);
    report.seed = a.seed;
    put_report(j, report, a.timing);
  } else {
    const auto plan = planner::plan_test(box.field().order(), box.arity(), a.eps, options.convention);
    const auto verdict = est::run_irreducibility_test(box, plan, a.seed, options);
    j["p1"] = plan.p1;
    j["p2"] = plan.p2;
    if (verdict.report) {
      j["p_middle"] = *plan.p_middle;
      j["threshold"] = *plan.threshold_k;
      put_report(j, *verdict.report, a.timing);
    } else {
      j["seed"] = a.seed;
    }
    j["outcome"] = est::to_string(verdict.outcome);
    if (verdict.outcome == est::Outcome::Infeasible) code = kInfeasible;
    if (verdict.outcome == est::Outcome::LikelyReducible) code = kReducible;
  }
  out << j.dump() << '\n';
  return code;
}

int cmd_dist(const DistArgs& a, std::ostream& out) {
  const ff::Field field = ff::Field::of_order(a.q);
  const std::uint64_t q = field.order();
  const std::uint64_t points = stats::domain_size(q, a.n);

  std::optional<stats::BinomialModel> model;
  std::optional<stats::FunctionSpaceKind> kind;
  if (a.kind == "single") {
    model = stats::gamma_model(q, a.n);
    kind = stats::kind::Single{};
  } else if (a.kind == "product") {
    model = stats::product_model(q, a.n);
    kind = stats::kind::Product{};
  } else if (a.kind == "intersection") {
    model = stats::intersection_model(q, a.n, a.x_size);
    stats::kind::Intersection k;
    for (std::uint64_t i = 0; i < a.x_size; ++i) k.points.push_back(i);
    kind = k;
  } else if (a.kind == "substitution") {
    const std::uint64_t target = stats::domain_size(q, a.m);
    if (a.x_size > target) throw UsageError("--x-size exceeds q^m");
    model = stats::substitution_model(q, a.n, stats::Rational(a.x_size) / stats::Rational(target));
    stats::kind::Substitution k;
    k.m = a.m;
    for (std::uint64_t i = 0; i < a.x_size; ++i) k.points.push_back(i);
    kind = k;
  } else if (a.kind == "det") {
    model = stats::det_model(q, a.n, a.rows, a.cols);
  } else {
    throw UsageError("--kind must be single, product, intersection, substitution or det");
  }

  std::optional<std::vector<stats::Rational>> brute;
  if (kind && stats::brute_force_items(q, a.n, *kind) <= stats::kBruteForceLimit) {
    brute = stats::brute_force_distribution(field, a.n, *kind);
  }

  const auto normal = model->normal_approx();
  out << std::setprecision(12);
  out << "# kind=" << a.kind << " q=" << q << " n=" << a.n << " trials=" << model->trials()
      << " p=" << model->success_p().str() << " expectation=" << stats::to_double(model->expected_fraction())
      << " sd=" << normal.sd << '\n';
  out << (brute ? "k,p_analytic,p_bruteforce\n" : "k,p_analytic\n");

  // Exact rationals are cheap for small trial counts; beyond that the
  // log-space evaluation is used.
  constexpr std::uint64_t kExactRows = 2000;
  for (std::uint64_t k = 0; k <= points; ++k) {
    const double analytic =
        model->trials() <= kExactRows ? stats::to_double(model->pmf_exact(k)) : model->pmf(k);
    out << k << ',' << analytic;
    if (brute) out << ',' << stats::to_double((*brute)[k]);
    out << '\n';
  }
  return kSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probabilistic irreducibility testing over finite fields", "irrtest"};
  app.require_subcommand(1);
  app.fallthrough();
  bool compat = false;
  app.add_flag("--compat-s258", compat, "Round the normal quantile to two decimals (s = 2.58 at eps = 0.005)");

  PlanArgs plan_args;
  auto* plan = app.add_subcommand("plan", "Design the test for F_q and A^n");
  plan->add_option("-q", plan_args.q, "Field order")->required();
  plan->add_option("-n", plan_args.n, "Number of variables")->required();
  plan->add_option("-e,--epsilon", plan_args.eps, "Error probability per side");

  TableArgs table_args;
  auto* table = app.add_subcommand("table", "Emit the N or threshold grid as CSV");
  table->add_option("-e,--epsilon", table_args.eps, "Error probability per side");
  table->add_option("--which", table_args.which, "N or threshold")->check(CLI::IsMember({"N", "threshold"}));

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Estimate, count or test an oracle; prints JSON");
  run->add_option("--field", run_args.field, "Field spec: p, p^k or p^k:c0,...,ck");
  run->add_option("-q", run_args.q, "Field order (prime power)");
  run->add_option("-n", run_args.n, "Number of variables");
  run->add_option("--poly", run_args.polys, "Polynomial; repeat for a product");
  run->add_option("--matrix", run_args.matrix, "Matrix file for the rank-deficiency oracle");
  run->add_option("--fixture", run_args.fixture, "trap, curve-c or generic-det");
  run->add_option("--fixture-seed", run_args.fixture_seed, "Seed for the trap fixture");
  run->add_option("--singular-curve", run_args.singular_curve, "Degree d of plane curves");
  run->add_option("--ext-bound", run_args.ext_bound, "Largest extension degree searched for singular points");
  run->add_option("--rows", run_args.rows, "Rows of the generic matrix");
  run->add_option("--cols", run_args.cols, "Columns of the generic matrix");
  run->add_option("--action", run_args.action, "estimate, test or exact");
  run->add_flag("--exact", run_args.exact, "Same as --action exact");
  run->add_option("-N,--samples", run_args.N, "Number of sample points");
  run->add_option("--seed", run_args.seed, "Sampling seed");
  run->add_option("-e,--epsilon", run_args.eps, "Error probability per side");
  run->add_option("--workers", run_args.workers, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--timing", run_args.timing, "Include wall time in the report");

  DistArgs dist_args;
  auto* dist = app.add_subcommand("dist", "Zero-count distribution as CSV");
  dist->add_option("-q", dist_args.q, "Field order (prime power)")->required();
  dist->add_option("-n", dist_args.n, "Number of variables");
  dist->add_option("--kind", dist_args.kind, "single, product, intersection, substitution or det");
  dist->add_option("--x-size", dist_args.x_size, "|X| for intersection and substitution");
  dist->add_option("--m", dist_args.m, "Target dimension for substitution");
  dist->add_option("--rows", dist_args.rows, "Rows for det");
  dist->add_option("--cols", dist_args.cols, "Columns for det");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*plan) return cmd_plan(plan_args, compat, out);
    if (*table) return cmd_table(table_args, compat, out);
    if (*run) return cmd_run(run_args, compat, out);
    return cmd_dist(dist_args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsageError;
}

}  // namespace irrtest::cli

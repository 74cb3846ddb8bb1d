// Acceptance suite: one check per shipping criterion, each printed as a
// PASS/FAIL line with the measured values. Exits with the number of failed
// criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "burst/advisor.hpp"
#include "burst/coupled.hpp"
#include "burst/profile.hpp"
#include "burst/sweep.hpp"
#include "support.hpp"

using namespace burst;
using testsupport::QuadratureOracle;
using testsupport::rel_diff;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
  std::printf("[%s] criterion %d: %s — %s (%.2fs)\n", pass ? "PASS" : "FAIL", number,
              name.c_str(), detail.c_str(), seconds);
  if (!pass) ++failures;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Advisor fraction at an arbitrary ratio, linearly interpolated between the
// grid's buckets (the default grid has no bucket at exactly 1.8 or 2.2).
double advisor_fraction_at(const std::vector<RatioAggregate>& aggregates, double at,
                           bool cloud_side) {
  std::vector<std::pair<double, double>> points;
  for (const auto& agg : aggregates)
    if (agg.policy_name == "advisor")
      points.push_back({agg.ratio, cloud_side ? 1.0 - agg.local_win_fraction
                                              : agg.local_win_fraction});
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i - 1].first <= at && at <= points[i].first) {
      const double span = points[i].first - points[i - 1].first;
      const double t = span > 0.0 ? (at - points[i - 1].first) / span : 0.0;
      return points[i - 1].second + t * (points[i].second - points[i - 1].second);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

void criterion1_worked_examples() {
  Timer timer;
  const std::vector<int> cloud_sizes = {1, 2, 4, 8, 12, 16};
  std::vector<int> local_sizes(200);
  std::iota(local_sizes.begin(), local_sizes.end(), 1);

  const auto budget45 =
      distribute_processors(45.0, cloud_sizes, Rounding::down_for_budget);
  const auto deadline41 =
      distribute_processors(41.0, cloud_sizes, Rounding::up_for_deadline);
  const int total41 = std::accumulate(deadline41.begin(), deadline41.end(), 0);
  const auto up95 = distribute_processors(9.5, local_sizes, Rounding::up_for_deadline);
  const auto down95 =
      distribute_processors(9.5, local_sizes, Rounding::down_for_budget);

  const bool pass = budget45 == std::vector<int>{16, 16, 12} &&
                    deadline41 == std::vector<int>{16, 16, 12} && total41 == 44 &&
                    up95 == std::vector<int>{10} && down95 == std::vector<int>{9};
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "45->[%d,%d,%d], 41->[%d,%d,%d]=%d, 9.5->{%d,%d}", budget45[0],
                budget45[1], budget45[2], deadline41[0], deadline41[1], deadline41[2],
                total41, up95[0], down95[0]);
  report(1, "worked-example distributions", pass, detail, timer.seconds());
}

void criterion2_quadrature() {
  Timer timer;
  testsupport::Rng rng{20250808};
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double a = rng.in(100.0, 1e4);
    const double b = rng.in(-3.0, -1.1);
    const double alpha = rng.in(0.01, 0.2);
    const double t = rng.in(0.1, 100.0);
    CoupledModel model(ApplicationProfile(a, b, TimeUnit::hours),
                       CostModel(alpha, 1.0));
    QuadratureOracle oracle(a, b, alpha, 1.0);
    worst = std::max(worst, rel_diff(cost_of_time(model, t), oracle.cost(t)));
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "worst relative gap %.3g (tolerance 1e-8)",
                worst);
  report(2, "closed form vs quadrature", worst < 1e-8, detail, timer.seconds());
}

void criterion3_round_trips() {
  Timer timer;
  testsupport::Rng rng{31415};
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double a = rng.in(10.0, 1e4);
    const double b = rng.in(-3.0, -1.05);
    ApplicationProfile profile(a, b, TimeUnit::hours);
    const int p = 1 + static_cast<int>(rng.in(0.0, 9999.0));
    worst = std::max(worst,
                     rel_diff(required_processors(profile, eval_time(profile, p)),
                              static_cast<double>(p)));
    CoupledModel model(profile, CostModel(rng.in(0.01, 0.2), rng.in(0.5, 3.0)));
    const double t = rng.in(0.01, 500.0);
    worst = std::max(worst, rel_diff(time_of_cost(model, cost_of_time(model, t)), t));
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "worst relative gap %.3g (tolerance 1e-9)",
                worst);
  report(3, "inverse-pair round trips", worst < 1e-9, detail, timer.seconds());
}

void criterion4_fit_recovery() {
  Timer timer;
  bool pass = true;
  std::string detail;

  const double a = 7004.86, b = -2.06;
  std::vector<TimingObservation> clean;
  for (int p : {1, 2, 4, 8, 16, 32})
    clean.push_back({p, a * std::pow(p, b), TimeUnit::hours});
  const auto exact = fit_profile(clean, TimeUnit::hours);
  const double clean_gap =
      std::max(rel_diff(exact.scale(), a), rel_diff(exact.exponent(), b));
  pass = pass && clean_gap < 1e-6;

  double worst_noisy = 0.0;
  testsupport::Rng rng{271828};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<TimingObservation> noisy;
    for (int p : {1, 2, 4, 8, 10, 16, 24, 32, 40}) {
      const double noise = 1.0 + 0.02 * (2.0 * rng.next() - 1.0);
      noisy.push_back({p, a * std::pow(p, b) * noise, TimeUnit::hours});
    }
    const auto fitted = fit_profile(noisy, TimeUnit::hours);
    worst_noisy = std::max({worst_noisy, rel_diff(fitted.scale(), a),
                            rel_diff(fitted.exponent(), b)});
  }
  pass = pass && worst_noisy < 0.05;
  char buf[128];
  std::snprintf(buf, sizeof buf, "noiseless gap %.2g (<1e-6), worst noisy gap %.3g (<0.05)",
                clean_gap, worst_noisy);
  report(4, "fit recovery", pass, buf, timer.seconds());
}

void criterion5_crossover(const SweepRun& run) {
  Timer timer;
  const auto aggregates = aggregate_by_ratio(run.deadline_results);
  const double local_18 = advisor_fraction_at(aggregates, 1.8, false);
  const double cloud_22 = advisor_fraction_at(aggregates, 2.2, true);
  const double crossover = crossover_ratio(aggregates);
  const bool pass = std::abs(local_18 - 0.71) <= 0.10 &&
                    std::abs(cloud_22 - 0.56) <= 0.10 &&
                    std::isfinite(crossover) && crossover >= 1.8 && crossover <= 2.6;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "local@1.8 %.3f (0.71±0.10), cloud@2.2 %.3f (0.56±0.10), "
                "crossover %.3f ([1.8,2.6])",
                local_18, cloud_22, crossover);
  report(5, "crossover reproduction", pass, detail, timer.seconds());
}

void criterion6_sensitivity_trends(const SweepConfig& config, const SweepInputs& inputs) {
  Timer timer;
  const auto run = run_sensitivity(config, inputs, kDefaultSensitivityErrors);
  auto same_fraction = [&](Policy policy, double error) {
    for (const auto& cell : run.table)
      if (cell.policy == policy && cell.error == error && cell.same_decision)
        return cell.fraction;
    return -1.0;
  };
  const double deadline_09 = same_fraction(Policy::deadline_aware, 0.9);
  const double budget_09 = same_fraction(Policy::budget_aware, 0.9);
  const bool high_error_stable = deadline_09 >= 0.85 && budget_09 >= 0.85;
  const double budget_m09 = same_fraction(Policy::budget_aware, -0.9);
  const bool budget_flips = (1.0 - budget_m09) > budget_m09;
  bool monotone = true;
  for (Policy policy : {Policy::deadline_aware, Policy::budget_aware}) {
    monotone = monotone &&
               same_fraction(policy, -0.9) <= same_fraction(policy, -0.5) + 1e-12 &&
               same_fraction(policy, -0.5) <= same_fraction(policy, -0.1) + 1e-12 &&
               same_fraction(policy, 0.9) <= same_fraction(policy, 0.5) + 1e-12 &&
               same_fraction(policy, 0.5) <= same_fraction(policy, 0.1) + 1e-12;
  }
  const bool pass = high_error_stable && budget_flips && monotone;
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "same@+0.9 deadline %.3f / budget %.3f (>=0.85), budget@-0.9 "
                "different %.3f > same %.3f: %s, monotone per sign: %s",
                deadline_09, budget_09, 1.0 - budget_m09, budget_m09,
                budget_flips ? "yes" : "no", monotone ? "yes" : "no");
  report(6, "sensitivity trends", pass, detail, timer.seconds());
}

void criterion7_dominance(const SweepRun& run) {
  Timer timer;
  std::size_t checked = 0, skipped = 0;
  bool pass = true;
  for (const auto* results : {&run.deadline_results, &run.budget_results}) {
    for (const auto& r : *results) {
      // Eq.-7-style metric from the two plans, defined at every point.
      const bool deadline = r.policy == Policy::deadline_aware;
      const double local_obj =
          deadline ? r.always_local.cost : r.always_local.turnaround;
      const double cloud_obj =
          deadline ? r.always_cloud.cost : r.always_cloud.turnaround;
      if (local_obj > 0.0 && cloud_obj > 0.0) {
        const double eq7 = (std::min(cloud_obj, local_obj) - local_obj) / local_obj;
        pass = pass && eq7 <= 0.0 && eq7 >= -1.0;
      }
      // Dominance where the comparison is meaningful.
      if (!r.decided || !r.local_feasible || !r.cloud_feasible) {
        ++skipped;
        continue;
      }
      ++checked;
      pass = pass && r.advisor.relative_metric <= r.always_local.relative_metric + 1e-12;
      pass = pass && r.advisor.relative_metric <= r.always_cloud.relative_metric + 1e-12;
      pass = pass && r.worst_case.relative_metric >= r.advisor.relative_metric - 1e-12;
    }
  }
  char detail[128];
  std::snprintf(detail, sizeof detail,
                "%zu points checked, %zu with an infeasible side skipped", checked,
                skipped);
  report(7, "dominance and metric bounds", pass, detail, timer.seconds());
}

void criterion8_determinism(const SweepConfig& config, const SweepInputs& inputs,
                            const SweepRun& first_run) {
  Timer timer;
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "burst_acceptance";
  fs::remove_all(base);
  const fs::path dir_a = base / "a", dir_b = base / "b";
  fs::create_directories(dir_a);
  fs::create_directories(dir_b);

  const auto second_run = run_sweep(config, inputs);
  write_sweep_raw(first_run, dir_a);
  write_ratio_aggregates(first_run, dir_a);
  write_sweep_raw(second_run, dir_b);
  write_ratio_aggregates(second_run, dir_b);

  SweepConfig small = config;
  small.deadline.points = 3;
  small.budget.points = 3;
  small.queue_fraction.points = 2;
  small.setup_fraction.points = 2;
  small.price_ratio.points = 3;
  const double errors[] = {-0.5, 0.5};
  write_sensitivity(run_sensitivity(small, inputs, errors), dir_a);
  write_sensitivity(run_sensitivity(small, inputs, errors), dir_b);

  bool pass = true;
  for (const char* name :
       {"sweep_deadline_raw.csv", "sweep_budget_raw.csv", "deadline_by_ratio.csv",
        "budget_by_ratio.csv", "sensitivity_table.csv"}) {
    pass = pass && slurp(dir_a / name) == slurp(dir_b / name);
  }
  fs::remove_all(base);
  report(8, "byte-identical reruns", pass,
         pass ? "sweep and sensitivity outputs match" : "outputs differ",
         timer.seconds());
}

}  // namespace

int main() {
  std::printf("acceptance suite: default grid, bundled demo inputs\n");
  criterion1_worked_examples();
  criterion2_quadrature();
  criterion3_round_trips();
  criterion4_fit_recovery();

  const SweepConfig config;  // the default 28,000-point grid
  const SweepInputs inputs = SweepInputs::demo();
  Timer sweep_timer;
  const SweepRun run = run_sweep(config, inputs);
  std::printf("(sweep of %zu points per policy took %.2fs)\n", config.total_points(),
              sweep_timer.seconds());

  criterion5_crossover(run);
  criterion6_sensitivity_trends(config, inputs);
  criterion7_dominance(run);
  criterion8_determinism(config, inputs, run);

  std::printf("acceptance: %d/8 criteria passed\n", 8 - failures);
  return failures;
}

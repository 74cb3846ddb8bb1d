#include "burst/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <sstream>

#include "burst/errors.hpp"

namespace burst {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr double kFeasibilitySlack = 1e-12;

bool within_tie(double a, double b) {
  return std::abs(a - b) <= kTieTolerance * std::max(std::abs(a), std::abs(b));
}

}  // namespace

std::vector<double> GridAxis::values() const {
  if (points < 1) throw InputError("grid axis needs at least one point");
  if (!(min <= max) || !std::isfinite(min) || !std::isfinite(max))
    throw InputError("grid axis bounds are invalid");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    out.push_back(min);
    return out;
  }
  const double step = (max - min) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i)
    out.push_back(i + 1 == points ? max : min + step * i);
  return out;
}

std::size_t SweepConfig::total_points() const {
  return static_cast<std::size_t>(deadline.points) * budget.points *
         queue_fraction.points * setup_fraction.points * price_ratio.points;
}

void SweepConfig::validate(bool allow_extended) const {
  for (const GridAxis* axis : {&deadline, &budget, &queue_fraction,
                               &setup_fraction, &price_ratio}) {
    if (axis->points < 1) throw InputError("grid axis needs at least one point");
    if (!(axis->min <= axis->max) || !std::isfinite(axis->min) ||
        !std::isfinite(axis->max))
      throw InputError("grid axis bounds are invalid");
  }
  if (!(deadline.min > 0.0)) throw InputError("deadline grid must be positive");
  if (!(budget.min > 0.0)) throw InputError("budget grid must be positive");
  if (queue_fraction.min < 0.0 || setup_fraction.min < 0.0)
    throw InputError("overhead fractions must be non-negative");
  if (!(price_ratio.min > 0.0)) throw InputError("price ratio grid must be positive");
  if (allow_extended) return;

  auto inside = [](const GridAxis& axis, double lo, double hi) {
    return axis.min >= lo && axis.max <= hi;
  };
  if (!inside(deadline, 1.0, 100.0) || !inside(budget, 10.0, 100.0) ||
      !inside(queue_fraction, 0.01, 0.50) || !inside(setup_fraction, 0.01, 0.50) ||
      !inside(price_ratio, 0.7, 3.4))
    throw InputError(
        "grid outside the supported envelope (deadline [1,100] h, budget "
        "[10,100], fractions [0.01,0.5], price ratio [0.7,3.4]); pass the "
        "extended-ranges override to run anyway");
}

std::string render_sweep_config(const SweepConfig& config) {
  std::ostringstream out;
  out << "# sweep configuration\n";
  auto axis = [&out](const char* name, const GridAxis& a) {
    out << name << ".min = " << fmt(a.min) << "\n";
    out << name << ".max = " << fmt(a.max) << "\n";
    out << name << ".points = " << a.points << "\n";
  };
  axis("deadline", config.deadline);
  axis("budget", config.budget);
  axis("queue_fraction", config.queue_fraction);
  axis("setup_fraction", config.setup_fraction);
  axis("price_ratio", config.price_ratio);
  out << "seed = " << config.seed << "\n";
  out << "bill_cloud_setup = " << (config.bill_cloud_setup ? "true" : "false") << "\n";
  out << "bill_local_queue = " << (config.bill_local_queue ? "true" : "false") << "\n";
  return out.str();
}

namespace {

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InputError("expected a boolean, got '" + v + "'");
}

}  // namespace

void apply_config_setting(SweepConfig& config, std::string_view key_view,
                          std::string_view value_view) {
  const std::string key(key_view);
  const std::string value(value_view);
  auto axis_field = [&](GridAxis& axis, const std::string& field) {
    if (field == "min") axis.min = std::stod(value);
    else if (field == "max") axis.max = std::stod(value);
    else if (field == "points") axis.points = std::stoi(value);
    else throw InputError("unknown axis field '" + field + "'");
  };
  const auto dot = key.find('.');
  if (dot != std::string::npos) {
    const std::string head = key.substr(0, dot);
    const std::string field = key.substr(dot + 1);
    if (head == "deadline") axis_field(config.deadline, field);
    else if (head == "budget") axis_field(config.budget, field);
    else if (head == "queue_fraction") axis_field(config.queue_fraction, field);
    else if (head == "setup_fraction") axis_field(config.setup_fraction, field);
    else if (head == "price_ratio") axis_field(config.price_ratio, field);
    else throw InputError("unknown config key '" + key + "'");
  } else if (key == "seed") {
    config.seed = std::stoull(value);
  } else if (key == "bill_cloud_setup") {
    config.bill_cloud_setup = parse_bool(value);
  } else if (key == "bill_local_queue") {
    config.bill_local_queue = parse_bool(value);
  } else {
    throw InputError("unknown config key '" + key + "'");
  }
}

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw IoError("config line " + std::to_string(lineno) + " is not 'key = value'");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    try {
      apply_config_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::exception& e) {
      throw IoError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return config;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  return parse_sweep_config(in);
}

std::string SweepConfig::fingerprint() const {
  // FNV-1a 64 over the canonical rendering.
  const std::string text = render_sweep_config(*this);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SweepInputs SweepInputs::demo() {
  ApplicationProfile local(1013.50, -1.58, TimeUnit::hours);
  local.set_observed_range(10, 40);
  ApplicationProfile cloud(7004.86, -2.06, TimeUnit::hours);
  cloud.set_observed_range(10, 40);
  std::vector<int> local_sizes(200);
  for (int i = 0; i < 200; ++i) local_sizes[i] = i + 1;
  // 4GB-per-core price column, least squares through the origin.
  const double alpha = 32.504 / 485.0;
  return SweepInputs{std::move(local), std::move(cloud),
                     std::move(local_sizes), {1, 2, 4, 8, 12, 16}, alpha};
}

namespace {

struct GridPoint {
  std::uint64_t index;
  double deadline, budget, queue_fraction, setup_fraction, price_ratio;
};

template <typename Fn>
void for_each_grid_point(const SweepConfig& config, Fn&& fn) {
  const auto deadlines = config.deadline.values();
  const auto budgets = config.budget.values();
  const auto queues = config.queue_fraction.values();
  const auto setups = config.setup_fraction.values();
  const auto ratios = config.price_ratio.values();
  std::uint64_t index = 0;
  for (double d : deadlines)
    for (double b : budgets)
      for (double q : queues)
        for (double s : setups)
          for (double r : ratios)
            fn(GridPoint{index++, d, b, q, s, r});
}

std::vector<Environment> point_environments(const SweepConfig& config,
                                            const SweepInputs& inputs,
                                            const GridPoint& pt) {
  std::vector<Environment> envs;
  envs.reserve(2);
  envs.emplace_back("local", inputs.local_sizes, inputs.local_profile,
                    CostModel(inputs.alpha, pt.price_ratio),
                    pt.queue_fraction * pt.deadline, config.bill_local_queue);
  envs.emplace_back("cloud", inputs.cloud_sizes, inputs.cloud_profile,
                    CostModel(inputs.alpha, 1.0),
                    pt.setup_fraction * pt.deadline, config.bill_cloud_setup);
  return envs;
}

const PlacementPlan& plan_named(const Recommendation& rec, const std::string& name) {
  for (const auto& plan : rec.plans)
    if (plan.environment == name) return plan;
  throw InputError("missing plan '" + name + "'");
}

double plan_objective(Policy policy, const PlacementPlan& plan) {
  return policy == Policy::deadline_aware ? plan.cost : plan.turnaround_hours;
}

PolicyOutcome outcome_for(const Recommendation& rec, const std::string& decision) {
  PolicyOutcome out;
  out.decision = decision;
  if (decision == kNoneFeasible) return out;
  const auto& plan = plan_named(rec, decision);
  const auto& local = plan_named(rec, "local");
  out.cost = plan.cost;
  out.turnaround = plan.turnaround_hours;
  const double local_objective = plan_objective(rec.policy, local);
  out.relative_metric =
      (plan_objective(rec.policy, plan) - local_objective) / local_objective;
  return out;
}

SweepResult evaluate_point(const GridPoint& pt, const Recommendation& rec,
                           const std::vector<BaselinePolicy>& baselines,
                           std::uint64_t request_index) {
  SweepResult result;
  result.index = pt.index;
  result.deadline = pt.deadline;
  result.budget = pt.budget;
  result.queue_fraction = pt.queue_fraction;
  result.setup_fraction = pt.setup_fraction;
  result.price_ratio = pt.price_ratio;
  result.policy = rec.policy;
  result.local_feasible = plan_named(rec, "local").feasible;
  result.cloud_feasible = plan_named(rec, "cloud").feasible;
  result.decided = rec.chosen != kNoneFeasible;
  result.advisor = outcome_for(rec, rec.chosen);
  result.always_local = outcome_for(rec, baselines[0].decide(rec, request_index));
  result.always_cloud = outcome_for(rec, baselines[1].decide(rec, request_index));
  result.random_pick = outcome_for(rec, baselines[2].decide(rec, request_index));
  result.worst_case = outcome_for(rec, baselines[3].decide(rec, request_index));
  return result;
}

}  // namespace

SweepRun run_sweep(const SweepConfig& config, const SweepInputs& inputs) {
  config.validate(true);
  if (config.total_points() == 0) throw InputError("sweep grid has no points");

  SweepRun run;
  run.config = config;
  run.deadline_results.reserve(config.total_points());
  run.budget_results.reserve(config.total_points());

  const std::vector<BaselinePolicy> baselines = {
      BaselinePolicy(BaselineKind::always_local),
      BaselinePolicy(BaselineKind::always_cloud),
      BaselinePolicy(BaselineKind::random, config.seed),
      BaselinePolicy(BaselineKind::worst_case),
  };

  for_each_grid_point(config, [&](const GridPoint& pt) {
    const auto envs = point_environments(config, inputs, pt);

    AdviceRequest deadline_request{Policy::deadline_aware, pt.deadline, std::nullopt};
    const auto deadline_rec = advise_deadline(deadline_request, envs);
    run.deadline_results.push_back(
        evaluate_point(pt, deadline_rec, baselines, pt.index * 2));

    AdviceRequest budget_request{Policy::budget_aware, std::nullopt, pt.budget};
    const auto budget_rec = advise_budget(budget_request, envs);
    run.budget_results.push_back(
        evaluate_point(pt, budget_rec, baselines, pt.index * 2 + 1));
  });
  return run;
}

namespace {

struct Quartiles {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

// Linear interpolation between order statistics (the h = (n-1)p rule).
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = (static_cast<double>(n) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, n - 1);
  return sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]);
}

Quartiles quartiles_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  Quartiles q;
  q.min = values.front();
  q.q1 = quantile_sorted(values, 0.25);
  q.median = quantile_sorted(values, 0.50);
  q.q3 = quantile_sorted(values, 0.75);
  q.max = values.back();
  return q;
}

const PolicyOutcome& outcome_named(const SweepResult& r, const std::string& name) {
  if (name == "advisor") return r.advisor;
  if (name == "always_local") return r.always_local;
  if (name == "always_cloud") return r.always_cloud;
  if (name == "random") return r.random_pick;
  if (name == "worst_case") return r.worst_case;
  throw InputError("unknown policy column '" + name + "'");
}

const char* const kPolicyColumns[] = {"advisor", "always_local", "always_cloud",
                                      "random", "worst_case"};

}  // namespace

std::vector<RatioAggregate> aggregate_by_ratio(std::span<const SweepResult> results) {
  if (results.empty()) throw InputError("no results to aggregate");

  std::map<double, std::vector<const SweepResult*>> buckets;
  for (const auto& result : results) buckets[result.price_ratio].push_back(&result);

  std::vector<RatioAggregate> out;
  for (const auto& [ratio, rows] : buckets) {
    int excluded = 0;
    int local_wins = 0;
    int decided = 0;
    for (const auto* row : rows) {
      if (!row->decided) {
        ++excluded;
        continue;
      }
      ++decided;
      if (row->advisor.decision == "local") ++local_wins;
    }
    for (const char* policy : kPolicyColumns) {
      RatioAggregate agg;
      agg.ratio = ratio;
      agg.policy_name = policy;
      agg.excluded = excluded;
      agg.count = decided;
      agg.local_win_fraction =
          decided > 0 ? static_cast<double>(local_wins) / decided : 1.0;
      std::vector<double> metrics;
      metrics.reserve(static_cast<std::size_t>(decided));
      double sum = 0.0;
      for (const auto* row : rows) {
        if (!row->decided) continue;
        const double m = outcome_named(*row, policy).relative_metric;
        metrics.push_back(m);
        sum += m;
      }
      if (!metrics.empty()) {
        const Quartiles q = quartiles_of(std::move(metrics));
        agg.min = q.min;
        agg.q1 = q.q1;
        agg.median = q.median;
        agg.q3 = q.q3;
        agg.max = q.max;
        agg.mean = sum / static_cast<double>(decided);
      }
      out.push_back(std::move(agg));
    }
  }
  return out;
}

double crossover_ratio(std::span<const RatioAggregate> aggregates) {
  for (const auto& agg : aggregates) {
    if (agg.policy_name != "advisor") continue;
    if (agg.count > 0 && 1.0 - agg.local_win_fraction > 0.5) return agg.ratio;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

int inject_error(int processor_count, double error) {
  if (processor_count < 1) throw InputError("processor count must be at least 1");
  if (!(error >= -0.9 && error <= 1.0))
    throw InputError("profile error must lie in [-0.9, 1.0]");
  const double perturbed = std::round(processor_count * (1.0 + error));
  return std::max(1, static_cast<int>(perturbed));
}

namespace {

// A plan re-evaluated at an error-injected processor count. Times come from
// the accurate profile: this models the true runtime of a mis-sized
// allocation.
struct PerturbedPlan {
  int total = 0;
  double execution = 0.0;
  double turnaround = 0.0;
  double cost = 0.0;
  bool feasible = false;
};

PerturbedPlan perturb(const Environment& env, const PlacementPlan& accurate,
                      double error, Policy policy, double constraint) {
  PerturbedPlan plan;
  plan.total = inject_error(accurate.total_processors, error);
  plan.execution = eval_time(env.profile(), plan.total);
  plan.turnaround = env.overhead_hours() + plan.execution;
  const double billed =
      plan.execution + (env.bill_overhead() ? env.overhead_hours() : 0.0);
  plan.cost = total_cost(env.cost(), plan.total, billed);
  if (policy == Policy::deadline_aware)
    plan.feasible = plan.turnaround <= constraint * (1.0 + kFeasibilitySlack);
  else
    plan.feasible = plan.cost <= constraint * (1.0 + kFeasibilitySlack);
  return plan;
}

std::string pick_between(double local_objective, bool local_ok,
                         double cloud_objective, bool cloud_ok) {
  if (local_ok && cloud_ok) {
    if (within_tie(local_objective, cloud_objective)) return "local";
    return local_objective <= cloud_objective ? "local" : "cloud";
  }
  if (local_ok) return "local";
  if (cloud_ok) return "cloud";
  return kNoneFeasible;
}

}  // namespace

SensitivityRun run_sensitivity(const SweepConfig& config, const SweepInputs& inputs,
                               std::span<const double> errors) {
  config.validate(true);
  if (errors.empty()) throw InputError("no error levels to evaluate");
  for (double e : errors)
    if (!(e >= -0.9 && e <= 1.0))
      throw InputError("profile error must lie in [-0.9, 1.0]");

  SensitivityRun run;
  run.config = config;
  run.errors.assign(errors.begin(), errors.end());
  run.records.reserve(config.total_points() * errors.size() * 2);

  for_each_grid_point(config, [&](const GridPoint& pt) {
    const auto envs = point_environments(config, inputs, pt);
    for (Policy policy : {Policy::deadline_aware, Policy::budget_aware}) {
      AdviceRequest request{policy, std::nullopt, std::nullopt};
      if (policy == Policy::deadline_aware)
        request.deadline_hours = pt.deadline;
      else
        request.budget = pt.budget;
      const Recommendation accurate = advise(request, envs);
      const double constraint =
          policy == Policy::deadline_aware ? pt.deadline : pt.budget;
      const PlacementPlan& local_plan = plan_named(accurate, "local");
      const PlacementPlan& cloud_plan = plan_named(accurate, "cloud");

      double accurate_objective = 0.0;
      if (accurate.chosen != kNoneFeasible)
        accurate_objective = plan_objective(policy, plan_named(accurate, accurate.chosen));

      for (double error : errors) {
        const PerturbedPlan local =
            perturb(envs[0], local_plan, error, policy, constraint);
        const PerturbedPlan cloud =
            perturb(envs[1], cloud_plan, error, policy, constraint);
        auto objective = [&](const PerturbedPlan& p) {
          return policy == Policy::deadline_aware ? p.cost : p.turnaround;
        };
        const std::string decision = pick_between(objective(local), local.feasible,
                                                  objective(cloud), cloud.feasible);

        SensitivityRecord record;
        record.index = pt.index;
        record.policy = policy;
        record.error = error;
        record.accurate_decision = accurate.chosen;
        record.inaccurate_decision = decision;
        record.same_decision = decision == accurate.chosen;
        record.delta_valid = accurate.chosen != kNoneFeasible;
        if (record.delta_valid) {
          // An inaccurate run that strands everything infeasible delivers
          // nothing, which scores as objective zero: delta exactly -1.
          double inaccurate_objective = 0.0;
          if (decision == "local") inaccurate_objective = objective(local);
          else if (decision == "cloud") inaccurate_objective = objective(cloud);
          record.relative_delta =
              (inaccurate_objective - accurate_objective) / accurate_objective;
        }
        run.records.push_back(std::move(record));
      }
    }
  });

  // Table cells: (policy, error) x {same, different}.
  for (Policy policy : {Policy::deadline_aware, Policy::budget_aware}) {
    for (double error : run.errors) {
      int totals[2] = {0, 0};     // [different, same]
      int excluded[2] = {0, 0};
      double sum[2] = {0.0, 0.0};
      double sumsq[2] = {0.0, 0.0};
      for (const auto& record : run.records) {
        if (record.policy != policy || record.error != error) continue;
        const int g = record.same_decision ? 1 : 0;
        ++totals[g];
        if (!record.delta_valid) {
          ++excluded[g];
          continue;
        }
        sum[g] += record.relative_delta;
        sumsq[g] += record.relative_delta * record.relative_delta;
      }
      const int all = totals[0] + totals[1];
      for (int g : {1, 0}) {
        SensitivityCell cell;
        cell.policy = policy;
        cell.error = error;
        cell.same_decision = g == 1;
        cell.size = totals[g];
        cell.excluded = excluded[g];
        cell.fraction = all > 0 ? static_cast<double>(totals[g]) / all : 0.0;
        const int valid = totals[g] - excluded[g];
        if (valid > 0) {
          cell.avg = sum[g] / valid;
          const double var = std::max(0.0, sumsq[g] / valid - cell.avg * cell.avg);
          cell.stddev = std::sqrt(var);
        }
        run.table.push_back(std::move(cell));
      }
    }
  }
  return run;
}

namespace {

void open_output(std::ofstream& out, const std::filesystem::path& path) {
  out.open(path, std::ios::binary);  // binary: byte-identical across reruns
  if (!out) throw IoError("cannot write output file '" + path.string() + "'");
}

void write_raw_file(const std::filesystem::path& path,
                    const std::string& fingerprint,
                    const std::vector<SweepResult>& results) {
  std::ofstream out;
  open_output(out, path);
  out << "# config " << fingerprint << "\n";
  out << "index,deadline,budget,queue_fraction,setup_fraction,price_ratio,policy,"
         "local_feasible,cloud_feasible,decided";
  for (const char* policy : kPolicyColumns)
    out << "," << policy << "_decision," << policy << "_cost," << policy
        << "_turnaround," << policy << "_metric";
  out << "\n";
  for (const auto& r : results) {
    out << r.index << "," << fmt(r.deadline) << "," << fmt(r.budget) << ","
        << fmt(r.queue_fraction) << "," << fmt(r.setup_fraction) << ","
        << fmt(r.price_ratio) << "," << to_string(r.policy) << ","
        << (r.local_feasible ? 1 : 0) << "," << (r.cloud_feasible ? 1 : 0) << ","
        << (r.decided ? 1 : 0);
    for (const char* policy : kPolicyColumns) {
      const auto& o = outcome_named(r, policy);
      out << "," << o.decision << "," << fmt(o.cost) << "," << fmt(o.turnaround)
          << "," << fmt(o.relative_metric);
    }
    out << "\n";
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

void write_sweep_raw(const SweepRun& run, const std::filesystem::path& dir) {
  const std::string fp = run.config.fingerprint();
  write_raw_file(dir / "sweep_deadline_raw.csv", fp, run.deadline_results);
  write_raw_file(dir / "sweep_budget_raw.csv", fp, run.budget_results);
}

std::string render_ratio_aggregates(std::span<const RatioAggregate> aggregates,
                                    const std::string& fingerprint) {
  std::ostringstream out;
  out << "# config " << fingerprint << "\n";
  out << "price_ratio,policy,count,excluded,min,q1,median,mean,q3,max,"
         "local_win_fraction\n";
  for (const auto& agg : aggregates) {
    out << fmt(agg.ratio) << "," << agg.policy_name << "," << agg.count << ","
        << agg.excluded << "," << fmt(agg.min) << "," << fmt(agg.q1) << ","
        << fmt(agg.median) << "," << fmt(agg.mean) << "," << fmt(agg.q3) << ","
        << fmt(agg.max) << "," << fmt(agg.local_win_fraction) << "\n";
  }
  return out.str();
}

void write_ratio_aggregates(const SweepRun& run, const std::filesystem::path& dir) {
  const std::string fp = run.config.fingerprint();
  const auto write = [&](const char* name, const std::vector<SweepResult>& results) {
    std::ofstream out;
    open_output(out, dir / name);
    out << render_ratio_aggregates(aggregate_by_ratio(results), fp);
    if (!out) throw IoError(std::string("failed writing '") + name + "'");
  };
  write("deadline_by_ratio.csv", run.deadline_results);
  write("budget_by_ratio.csv", run.budget_results);
}

void write_sensitivity(const SensitivityRun& run, const std::filesystem::path& dir) {
  std::ofstream out;
  open_output(out, dir / "sensitivity_table.csv");
  out << "# config " << run.config.fingerprint() << "\n";
  out << "policy,error,decision,avg,std,size,fraction,excluded\n";
  for (const auto& cell : run.table) {
    out << to_string(cell.policy) << "," << fmt(cell.error) << ","
        << (cell.same_decision ? "same" : "different") << "," << fmt(cell.avg)
        << "," << fmt(cell.stddev) << "," << cell.size << "," << fmt(cell.fraction)
        << "," << cell.excluded << "\n";
  }
  if (!out) throw IoError("failed writing sensitivity table");
}

std::vector<SweepResult> read_sweep_raw(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open raw results '" + file.string() + "'");
  std::vector<SweepResult> out;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cols;
    std::istringstream fields(line);
    std::string col;
    while (std::getline(fields, col, ',')) cols.push_back(col);
    if (cols.size() != 10 + 4 * 5)
      throw IoError("raw results row has " + std::to_string(cols.size()) +
                    " columns: '" + line + "'");
    try {
      SweepResult r;
      r.index = std::stoull(cols[0]);
      r.deadline = std::stod(cols[1]);
      r.budget = std::stod(cols[2]);
      r.queue_fraction = std::stod(cols[3]);
      r.setup_fraction = std::stod(cols[4]);
      r.price_ratio = std::stod(cols[5]);
      r.policy = parse_policy(cols[6]);
      r.local_feasible = cols[7] == "1";
      r.cloud_feasible = cols[8] == "1";
      r.decided = cols[9] == "1";
      PolicyOutcome* outcomes[] = {&r.advisor, &r.always_local, &r.always_cloud,
                                   &r.random_pick, &r.worst_case};
      for (std::size_t i = 0; i < 5; ++i) {
        PolicyOutcome& o = *outcomes[i];
        o.decision = cols[10 + 4 * i];
        o.cost = std::stod(cols[11 + 4 * i]);
        o.turnaround = std::stod(cols[12 + 4 * i]);
        o.relative_metric = std::stod(cols[13 + 4 * i]);
      }
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw IoError("bad raw results row '" + line + "': " + e.what());
    }
  }
  return out;
}

}  // namespace burst

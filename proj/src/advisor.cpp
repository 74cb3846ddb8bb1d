#include "burst/advisor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "burst/coupled.hpp"
#include "burst/errors.hpp"

namespace burst {

namespace {

// Guard against runaway plans from absurd inputs.
constexpr std::size_t kMaxNodes = 1'000'000;

// Ideal processor counts from inverting the models are capped here before
// distribution; a plan this size is far outside any realistic constraint
// and only shows up on hopeless requests, which the feasibility check then
// reports as such.
constexpr double kMaxIdealProcessors = 1e6;

// Slack for floating-point noise in feasibility checks (turnaround vs.
// deadline, cost vs. budget).
constexpr double kFeasibilitySlack = 1e-12;

void validate_node_sizes(std::span<const int> sizes) {
  if (sizes.empty()) throw InputError("node size set is empty");
  if (sizes.front() != 1)
    throw InputError("node size set must start at 1");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1])
      throw InputError("node sizes must be strictly increasing");
}

bool within_tie(double a, double b) {
  return std::abs(a - b) <= kTieTolerance * std::max(std::abs(a), std::abs(b));
}

}  // namespace

Environment::Environment(std::string name, std::vector<int> node_sizes,
                         const ApplicationProfile& profile, const CostModel& cost,
                         double overhead_hours, bool bill_overhead)
    : name_(std::move(name)),
      node_sizes_(std::move(node_sizes)),
      profile_(profile.converted_to(TimeUnit::hours)),
      cost_(cost),
      overhead_hours_(overhead_hours),
      bill_overhead_(bill_overhead) {
  if (name_.empty()) throw InputError("environment needs a name");
  if (name_ == kNoneFeasible)
    throw InputError("environment name '" + name_ + "' is reserved");
  validate_node_sizes(node_sizes_);
  if (!(overhead_hours >= 0.0) || !std::isfinite(overhead_hours))
    throw InputError("overhead must be non-negative");
}

const char* to_string(Policy policy) {
  return policy == Policy::deadline_aware ? "deadline_aware" : "budget_aware";
}

Policy parse_policy(std::string_view text) {
  if (text == "deadline_aware" || text == "deadline") return Policy::deadline_aware;
  if (text == "budget_aware" || text == "budget") return Policy::budget_aware;
  throw InputError("unknown policy '" + std::string(text) + "'");
}

std::vector<int> distribute_processors(double count, std::span<const int> sizes,
                                       Rounding rounding) {
  validate_node_sizes(sizes);
  if (!(count > 0.0) || !std::isfinite(count))
    throw InputError("processor count must be positive");

  // Snap near-integers so boundary cases like 44.999999999 round as 45.
  const double snapped = std::round(count);
  if (std::abs(count - snapped) <= 1e-9 * std::max(1.0, count) && snapped > 0.0)
    count = snapped;

  const int max_size = sizes.back();
  double full_nodes = std::floor(count / max_size);
  double remainder = count - full_nodes * max_size;
  if (remainder >= max_size) {  // floating-point edge of the floor above
    full_nodes += 1.0;
    remainder = 0.0;
  }
  if (full_nodes > static_cast<double>(kMaxNodes))
    throw InputError("processor count too large to distribute");

  std::vector<int> plan(static_cast<std::size_t>(full_nodes), max_size);
  if (remainder > 0.0) {
    if (rounding == Rounding::up_for_deadline) {
      const auto it = std::lower_bound(sizes.begin(), sizes.end(), remainder);
      plan.push_back(*it);  // remainder < max_size, so an upper size exists
    } else {
      auto it = std::upper_bound(sizes.begin(), sizes.end(), remainder);
      if (it != sizes.begin()) {
        plan.push_back(*std::prev(it));
      } else if (plan.empty()) {
        // Remainder below the smallest node and no full nodes: a job still
        // needs one processor to exist.
        plan.push_back(sizes.front());
      }
    }
  }
  return plan;
}

namespace {

PlacementPlan build_plan(const Environment& env, double fractional, Rounding rounding) {
  PlacementPlan plan;
  plan.environment = env.name();
  fractional = std::min(fractional, kMaxIdealProcessors);
  plan.proc_per_node = distribute_processors(fractional, env.node_sizes(), rounding);
  plan.total_processors = 0;
  for (int n : plan.proc_per_node) plan.total_processors += n;
  plan.execution_hours = eval_time(env.profile(), plan.total_processors);
  plan.turnaround_hours = env.overhead_hours() + plan.execution_hours;
  const double billed =
      plan.execution_hours + (env.bill_overhead() ? env.overhead_hours() : 0.0);
  plan.cost = total_cost(env.cost(), plan.total_processors, billed);
  plan.extrapolated = env.profile().extrapolates_at(plan.total_processors);
  return plan;
}

double objective_of(const Recommendation& rec, const PlacementPlan& plan) {
  return rec.policy == Policy::deadline_aware ? plan.cost : plan.turnaround_hours;
}

// Cheapest (deadline) or fastest (budget) feasible plan; ties prefer
// "local", then input order. `closeness` ranks the near-misses when nothing
// is feasible.
void choose(Recommendation& rec, const std::vector<double>& closeness) {
  const PlacementPlan* best = nullptr;
  for (const auto& plan : rec.plans) {
    if (!plan.feasible) continue;
    if (!best) {
      best = &plan;
      continue;
    }
    const double candidate = objective_of(rec, plan);
    const double incumbent = objective_of(rec, *best);
    if (within_tie(candidate, incumbent)) {
      if (plan.environment == "local" && best->environment != "local") best = &plan;
    } else if (candidate < incumbent) {
      best = &plan;
    }
  }
  if (best) {
    rec.chosen = best->environment;
    rec.closest.clear();
    return;
  }
  rec.chosen = kNoneFeasible;
  std::size_t nearest = 0;
  for (std::size_t i = 1; i < closeness.size(); ++i)
    if (closeness[i] < closeness[nearest]) nearest = i;
  rec.closest = rec.plans[nearest].environment;
}

void check_environments(std::span<const Environment> environments) {
  if (environments.empty()) throw InputError("no environments to advise on");
}

}  // namespace

Recommendation advise_deadline(const AdviceRequest& request,
                               std::span<const Environment> environments) {
  check_environments(environments);
  if (request.policy != Policy::deadline_aware)
    throw InputError("request policy is not deadline_aware");
  if (!request.deadline_hours || !(*request.deadline_hours > 0.0))
    throw InputError("deadline_aware request needs a positive deadline");
  const double deadline = *request.deadline_hours;

  Recommendation rec;
  rec.policy = Policy::deadline_aware;
  rec.objective = "cost";
  std::vector<double> overshoot;  // turnaround beyond the deadline
  for (const auto& env : environments) {
    const double exec_budget = deadline - env.overhead_hours();
    // With no room left after the overhead, size for the full deadline so
    // the report still shows the nearest meaningful plan.
    const double target = exec_budget > 0.0 ? exec_budget : deadline;
    const double fractional = required_processors(env.profile(), target);
    PlacementPlan plan = build_plan(env, fractional, Rounding::up_for_deadline);
    plan.feasible = exec_budget > 0.0 &&
                    plan.turnaround_hours <= deadline * (1.0 + kFeasibilitySlack);
    overshoot.push_back(plan.turnaround_hours - deadline);
    rec.plans.push_back(std::move(plan));
  }
  choose(rec, overshoot);
  return rec;
}

Recommendation advise_budget(const AdviceRequest& request,
                             std::span<const Environment> environments) {
  check_environments(environments);
  if (request.policy != Policy::budget_aware)
    throw InputError("request policy is not budget_aware");
  if (!request.budget || !(*request.budget > 0.0))
    throw InputError("budget_aware request needs a positive budget");
  const double budget = *request.budget;

  Recommendation rec;
  rec.policy = Policy::budget_aware;
  rec.objective = "turnaround";
  std::vector<double> overrun;  // cost beyond the budget
  for (const auto& env : environments) {
    const CoupledModel coupled(env.profile(), env.cost());
    const double exec_time = time_of_cost(coupled, budget);
    const double fractional = required_processors(env.profile(), exec_time);
    PlacementPlan plan = build_plan(env, fractional, Rounding::down_for_budget);
    plan.feasible = plan.cost <= budget * (1.0 + kFeasibilitySlack);
    overrun.push_back(plan.cost - budget);
    rec.plans.push_back(std::move(plan));
  }
  choose(rec, overrun);
  return rec;
}

Recommendation advise(const AdviceRequest& request,
                      std::span<const Environment> environments) {
  return request.policy == Policy::deadline_aware
             ? advise_deadline(request, environments)
             : advise_budget(request, environments);
}

RelativeOutcome compare(const Recommendation& recommendation) {
  const PlacementPlan* local = nullptr;
  const PlacementPlan* cloud = nullptr;
  for (const auto& plan : recommendation.plans) {
    if (plan.environment == "local") local = &plan;
    if (plan.environment == "cloud") cloud = &plan;
  }
  if (!local || !cloud)
    throw InputError("comparison needs plans for both 'local' and 'cloud'");

  RelativeOutcome out;
  out.metric = recommendation.objective;
  const double local_value = objective_of(recommendation, *local);
  const double cloud_value = objective_of(recommendation, *cloud);
  if (!(local_value > 0.0))
    throw InputError("relative outcome undefined: local objective is not positive");
  out.value = (std::min(cloud_value, local_value) - local_value) / local_value;
  return out;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string render_recommendation(const Recommendation& rec) {
  std::ostringstream out;
  out << "recommendation\n";
  out << "  policy " << to_string(rec.policy) << "\n";
  out << "  objective " << rec.objective << "\n";
  out << "  chosen " << rec.chosen << "\n";
  if (!rec.closest.empty()) out << "  closest " << rec.closest << "\n";
  for (const auto& plan : rec.plans) {
    out << "plan " << plan.environment << "\n";
    out << "  proc_per_node";
    for (int n : plan.proc_per_node) out << " " << n;
    out << "\n";
    out << "  total_processors " << plan.total_processors << "\n";
    out << "  execution_hours " << format_double(plan.execution_hours) << "\n";
    out << "  turnaround_hours " << format_double(plan.turnaround_hours) << "\n";
    out << "  total_cost " << format_double(plan.cost) << "\n";
    out << "  feasible " << (plan.feasible ? "yes" : "no") << "\n";
    if (plan.extrapolated) out << "  extrapolated yes\n";
  }
  return out.str();
}

Recommendation parse_recommendation(std::string_view text) {
  std::istringstream in{std::string(text)};
  Recommendation rec;
  PlacementPlan* current = nullptr;
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    if (key == "recommendation") {
      seen_header = true;
      current = nullptr;
    } else if (key == "plan") {
      std::string env;
      fields >> env;
      rec.plans.emplace_back();
      current = &rec.plans.back();
      current->environment = env;
    } else if (!current) {
      if (key == "policy") {
        std::string p;
        fields >> p;
        rec.policy = parse_policy(p);
      } else if (key == "objective") {
        fields >> rec.objective;
      } else if (key == "chosen") {
        fields >> rec.chosen;
      } else if (key == "closest") {
        fields >> rec.closest;
      } else {
        throw IoError("unknown recommendation field '" + key + "'");
      }
    } else {
      if (key == "proc_per_node") {
        int n;
        while (fields >> n) current->proc_per_node.push_back(n);
      } else if (key == "total_processors") {
        fields >> current->total_processors;
      } else if (key == "execution_hours") {
        fields >> current->execution_hours;
      } else if (key == "turnaround_hours") {
        fields >> current->turnaround_hours;
      } else if (key == "total_cost") {
        fields >> current->cost;
      } else if (key == "feasible") {
        std::string v;
        fields >> v;
        current->feasible = v == "yes";
      } else if (key == "extrapolated") {
        std::string v;
        fields >> v;
        current->extrapolated = v == "yes";
      } else {
        throw IoError("unknown plan field '" + key + "'");
      }
    }
  }
  if (!seen_header) throw IoError("not a recommendation document");
  return rec;
}

}  // namespace burst

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "burst/cost.hpp"
#include "burst/profile.hpp"

namespace burst {

inline constexpr const char* kNoneFeasible = "none-feasible";

// Objective values within this relative distance are treated as tied;
// ties prefer the environment named "local", then input order.
inline constexpr double kTieTolerance = 1e-9;

/// A place a job can run: node-size menu, fitted profile, cost model, and a
/// fixed overhead before execution starts (queue wait on premise,
/// provisioning time in the cloud). `bill_overhead` says whether that
/// overhead shows up on the invoice; provisioning time typically does,
/// queue wait does not.
class Environment {
 public:
  Environment(std::string name, std::vector<int> node_sizes,
              const ApplicationProfile& profile, const CostModel& cost,
              double overhead_hours, bool bill_overhead);

  const std::string& name() const { return name_; }
  const std::vector<int>& node_sizes() const { return node_sizes_; }
  const ApplicationProfile& profile() const { return profile_; }  // in hours
  const CostModel& cost() const { return cost_; }
  double overhead_hours() const { return overhead_hours_; }
  bool bill_overhead() const { return bill_overhead_; }

 private:
  std::string name_;
  std::vector<int> node_sizes_;
  ApplicationProfile profile_;
  CostModel cost_;
  double overhead_hours_;
  bool bill_overhead_;
};

enum class Policy { deadline_aware, budget_aware };

const char* to_string(Policy policy);
Policy parse_policy(std::string_view text);

struct AdviceRequest {
  Policy policy = Policy::deadline_aware;
  std::optional<double> deadline_hours;  // required for deadline_aware
  std::optional<double> budget;          // required for budget_aware
};

struct PlacementPlan {
  std::string environment;
  std::vector<int> proc_per_node;
  int total_processors = 0;
  double execution_hours = 0.0;
  double turnaround_hours = 0.0;  // overhead + execution
  double cost = 0.0;
  bool feasible = false;
  bool extrapolated = false;  // profile evaluated outside its fitted range
};

struct Recommendation {
  Policy policy = Policy::deadline_aware;
  std::string objective;  // "cost" or "turnaround"
  std::vector<PlacementPlan> plans;
  std::string chosen;   // environment name, or kNoneFeasible
  std::string closest;  // nearest-miss environment when nothing is feasible
};

struct RelativeOutcome {
  std::string metric;  // matches the recommendation's objective
  double value = 0.0;  // (min(cloud, local) - local) / local, always <= 0
};

enum class Rounding { down_for_budget, up_for_deadline };

// Splits a fractional processor count over the allowed node sizes: greedy
// full nodes at the largest size, then the remainder rounded down (budget)
// or up (deadline) to the nearest allowed size. A remainder smaller than
// the smallest size is dropped in down mode unless the plan would come out
// empty, in which case one minimum-size node is kept so the job can run at
// all. Fractions within 1e-9 of an integer are snapped first.
std::vector<int> distribute_processors(double count, std::span<const int> sizes,
                                       Rounding rounding);

// Deadline-aware placement: subtract the overhead from the deadline, invert
// the profile for the processor count, round up to the node-size menu,
// recompute time and cost, and keep the cheapest environment that still
// meets the deadline.
Recommendation advise_deadline(const AdviceRequest& request,
                               std::span<const Environment> environments);

// Budget-aware placement: invert the coupled model for the achievable
// execution time, size the job for it, round down to the node-size menu,
// and keep the fastest environment whose recomputed cost stays within
// budget.
Recommendation advise_budget(const AdviceRequest& request,
                             std::span<const Environment> environments);

Recommendation advise(const AdviceRequest& request,
                      std::span<const Environment> environments);

// Relative local-vs-cloud outcome for a recommendation that covers both a
// "local" and a "cloud" plan. Requires a positive local objective.
RelativeOutcome compare(const Recommendation& recommendation);

// Structured-text round trip for recommendations (the CLI output format).
std::string render_recommendation(const Recommendation& rec);
Recommendation parse_recommendation(std::string_view text);

}  // namespace burst

#include "burst/baselines.hpp"

#include "burst/errors.hpp"

namespace burst {

const char* to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::always_local: return "always_local";
    case BaselineKind::always_cloud: return "always_cloud";
    case BaselineKind::random: return "random";
    case BaselineKind::worst_case: return "worst_case";
  }
  return "?";
}

BaselinePolicy::BaselinePolicy(BaselineKind kind, std::optional<std::uint64_t> seed)
    : kind_(kind) {
  if (kind == BaselineKind::random) {
    if (!seed)
      throw InputError("random baseline needs a seed; unseeded runs are not reproducible");
    seed_ = *seed;
  }
}

namespace {

// splitmix64: counter-based, so decisions depend only on (seed, index).
std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

const PlacementPlan& plan_named(const Recommendation& rec, const std::string& name) {
  for (const auto& plan : rec.plans)
    if (plan.environment == name) return plan;
  throw InputError("recommendation is missing a plan for '" + name + "'");
}

}  // namespace

std::string BaselinePolicy::decide(const Recommendation& recommendation,
                                   std::uint64_t request_index) const {
  const auto& local = plan_named(recommendation, "local");
  const auto& cloud = plan_named(recommendation, "cloud");
  switch (kind_) {
    case BaselineKind::always_local:
      return "local";
    case BaselineKind::always_cloud:
      return "cloud";
    case BaselineKind::random:
      return (mix(seed_, request_index) & 1) ? "cloud" : "local";
    case BaselineKind::worst_case: {
      if (recommendation.chosen == "local") return "cloud";
      if (recommendation.chosen == "cloud") return "local";
      // Advisor found nothing feasible: take the worse plan by objective.
      const bool deadline = recommendation.policy == Policy::deadline_aware;
      const double local_value = deadline ? local.cost : local.turnaround_hours;
      const double cloud_value = deadline ? cloud.cost : cloud.turnaround_hours;
      return cloud_value >= local_value ? "cloud" : "local";
    }
  }
  throw InputError("unknown baseline kind");
}

}  // namespace burst

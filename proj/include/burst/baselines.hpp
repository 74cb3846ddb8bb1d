#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "burst/advisor.hpp"

namespace burst {

enum class BaselineKind { always_local, always_cloud, random, worst_case };

const char* to_string(BaselineKind kind);

/// Fixed placement rules the advisor is measured against. `random` must be
/// seeded at construction so a sweep replays identically; its choice is a
/// pure function of (seed, request index), never of evaluation order.
class BaselinePolicy {
 public:
  explicit BaselinePolicy(BaselineKind kind,
                          std::optional<std::uint64_t> seed = std::nullopt);

  BaselineKind kind() const { return kind_; }

  // The environment this baseline submits to, given the advisor's
  // recommendation for the same request. worst_case picks whatever the
  // advisor rejected; if the advisor found nothing feasible it falls back
  // to the plan with the worse objective value.
  std::string decide(const Recommendation& recommendation,
                     std::uint64_t request_index) const;

 private:
  BaselineKind kind_;
  std::uint64_t seed_ = 0;
};

}  // namespace burst

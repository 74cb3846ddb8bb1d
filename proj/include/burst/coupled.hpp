#pragma once

#include "burst/cost.hpp"
#include "burst/profile.hpp"

namespace burst {

/// Couples an application profile with a cost model into a closed-form
/// relation between execution time and money:
///
///   C(T) = a * k * alpha * (T/a)^(1 + 1/b) / (1 + 1/b)
///
/// obtained by integrating the hourly rate along the processor count the
/// profile demands at each time budget. The profile is normalized to hours
/// so that `alpha` (currency per processor-hour) lines up with T.
///
/// The integral only converges for 1 + 1/b > 0; with b < 0 that means
/// b < -1. Construction rejects exponents in [-1, 0) loudly instead of
/// letting the evaluation produce NaNs.
class CoupledModel {
 public:
  CoupledModel(const ApplicationProfile& profile, const CostModel& cost);

  const ApplicationProfile& profile() const { return profile_; }  // in hours
  const CostModel& cost() const { return cost_; }

 private:
  ApplicationProfile profile_;
  CostModel cost_;
};

// C(T). Strictly increasing and continuous on (0, inf); rejects T <= 0.
double cost_of_time(const CoupledModel& model, double turnaround_hours);

// T(C): execution time achievable for `budget`. Exact inverse of
// cost_of_time; rejects non-positive budgets.
double time_of_cost(const CoupledModel& model, double budget);

}  // namespace burst

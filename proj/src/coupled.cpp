#include "burst/coupled.hpp"

#include <cmath>
#include <string>

#include "burst/errors.hpp"

namespace burst {

namespace {

double growth_exponent(const ApplicationProfile& profile) {
  return 1.0 + 1.0 / profile.exponent();
}

}  // namespace

CoupledModel::CoupledModel(const ApplicationProfile& profile, const CostModel& cost)
    : profile_(profile.converted_to(TimeUnit::hours)), cost_(cost) {
  if (!(growth_exponent(profile_) > 0.0))
    throw ModelDomainError(
        "coupled model requires 1 + 1/b > 0 (exponent b < -1); got b = " +
        std::to_string(profile_.exponent()) +
        ", for which the accumulated cost integral diverges");
}

double cost_of_time(const CoupledModel& model, double turnaround_hours) {
  if (!(turnaround_hours > 0.0) || !std::isfinite(turnaround_hours))
    throw InputError("turnaround must be positive");
  const double a = model.profile().scale();
  const double e = growth_exponent(model.profile());
  const double rate = model.cost().k() * model.cost().alpha();
  return a * rate * std::pow(turnaround_hours / a, e) / e;
}

double time_of_cost(const CoupledModel& model, double budget) {
  if (!(budget > 0.0) || !std::isfinite(budget))
    throw InputError("budget must be positive");
  const double a = model.profile().scale();
  const double e = growth_exponent(model.profile());
  const double rate = model.cost().k() * model.cost().alpha();
  return a * std::pow(budget * e / (a * rate), 1.0 / e);
}

}  // namespace burst

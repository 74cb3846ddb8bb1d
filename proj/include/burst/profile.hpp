#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "burst/units.hpp"

namespace burst {

// One measured run: total processor count and elapsed time.
struct TimingObservation {
  int processors = 0;
  double elapsed = 0.0;
  TimeUnit unit = TimeUnit::hours;
};

/// Power-law application profile: execution time t(P) = a * P^b for a job
/// on P processors. `a` is the single-processor time in `unit`; `b` is the
/// (negative) scaling exponent. Immutable after construction.
class ApplicationProfile {
 public:
  // Throws InputError unless a > 0 and b < 0.
  ApplicationProfile(double scale, double exponent, TimeUnit unit);

  double scale() const { return scale_; }           // a
  double exponent() const { return exponent_; }     // b
  TimeUnit unit() const { return unit_; }

  // Same curve expressed in another time unit (scales a, keeps b).
  ApplicationProfile converted_to(TimeUnit target) const;

  // Fit metadata, present on profiles produced by fit_profile or loaded
  // from files that carry it.
  std::optional<std::pair<int, int>> observed_range() const { return observed_range_; }
  std::optional<double> fit_residual() const { return fit_residual_; }
  void set_observed_range(int p_min, int p_max);
  void set_fit_residual(double rms) { fit_residual_ = rms; }

  // True when `processors` falls outside the range the fit actually saw.
  // Always false for profiles without range metadata.
  bool extrapolates_at(double processors) const;

 private:
  double scale_;
  double exponent_;
  TimeUnit unit_;
  std::optional<std::pair<int, int>> observed_range_;
  std::optional<double> fit_residual_;
};

// t = a * P^b, in the profile's unit. Rejects processors < 1.
double eval_time(const ApplicationProfile& profile, int processors);
double eval_time(const ApplicationProfile& profile, int processors, TimeUnit out);

// Fractional processor count meeting `time_budget` (in the profile's unit):
// P = (t/a)^(1/b). Rounding to an allocatable count is the caller's concern.
double required_processors(const ApplicationProfile& profile, double time_budget);

// Closed-form log-log linear regression: returns (a, b) in `target` units.
// Exact on noiseless power-law data; also the initializer for fit_profile.
std::pair<double, double> loglog_fit(std::span<const TimingObservation> observations,
                                     TimeUnit target);

// Nonlinear least squares fit of (a, b), Gauss-Newton with damping seeded by
// loglog_fit. Observations are converted to `target` first. Requires at least
// two observations over at least two distinct processor counts; throws
// InputError if the fitted exponent comes out non-negative.
ApplicationProfile fit_profile(std::span<const TimingObservation> observations,
                               TimeUnit target = TimeUnit::hours);

// Plain-text key-value serialization (a, b, time_unit, fit_residual,
// observed_p_range).
std::string render_profile(const ApplicationProfile& profile);
ApplicationProfile parse_profile(std::string_view text);
ApplicationProfile load_profile(const std::string& path);
void save_profile(const ApplicationProfile& profile, const std::string& path);

// Observation ingestion: delimited rows `processors,elapsed,unit`.
std::vector<TimingObservation> parse_observations(std::istream& in);
std::vector<TimingObservation> load_observations(const std::string& path);

}  // namespace burst

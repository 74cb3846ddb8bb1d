#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "burst/errors.hpp"
#include "burst/profile.hpp"
#include "support.hpp"

using namespace burst;
using testsupport::rel_diff;

TEST_CASE("profile construction enforces coefficient signs") {
  CHECK_THROWS_AS(ApplicationProfile(0.0, -1.0, TimeUnit::hours), InputError);
  CHECK_THROWS_AS(ApplicationProfile(-5.0, -1.0, TimeUnit::hours), InputError);
  CHECK_THROWS_AS(ApplicationProfile(10.0, 0.0, TimeUnit::hours), InputError);
  CHECK_THROWS_AS(ApplicationProfile(10.0, 0.5, TimeUnit::hours), InputError);
  CHECK_NOTHROW(ApplicationProfile(10.0, -0.5, TimeUnit::hours));
}

TEST_CASE("eval_time matches the power law") {
  ApplicationProfile local(1013.50, -1.58, TimeUnit::hours);
  // P = 1 yields exactly a.
  CHECK(eval_time(local, 1) == 1013.50);
  // Frozen from long-double evaluation of a * P^b.
  CHECK(rel_diff(eval_time(local, 10), 26.657766097859696) < 1e-12);

  ApplicationProfile cloud(7004.86, -2.06, TimeUnit::hours);
  CHECK(rel_diff(eval_time(cloud, 16), 23.169267065452234) < 1e-12);

  CHECK_THROWS_AS(eval_time(local, 0), InputError);
  CHECK_THROWS_AS(eval_time(local, -3), InputError);
}

TEST_CASE("eval_time converts to a requested unit") {
  ApplicationProfile p(2.0, -1.5, TimeUnit::hours);
  CHECK(eval_time(p, 1, TimeUnit::minutes) == doctest::Approx(120.0));
  CHECK(eval_time(p, 1, TimeUnit::seconds) == doctest::Approx(7200.0));
}

TEST_CASE("required_processors inverts the power law") {
  ApplicationProfile local(1013.50, -1.58, TimeUnit::hours);
  CHECK(rel_diff(required_processors(local, 1013.50), 1.0) < 1e-12);

  ApplicationProfile cloud(7004.86, -2.06, TimeUnit::hours);
  // Frozen from long-double (t/a)^(1/b).
  CHECK(rel_diff(required_processors(cloud, 20.0), 17.184258925961678) < 1e-12);
  // Round trip of the eval_time example.
  CHECK(rel_diff(required_processors(cloud, 23.169267065452234), 16.0) < 1e-12);

  CHECK_THROWS_AS(required_processors(local, 0.0), InputError);
  CHECK_THROWS_AS(required_processors(local, -1.0), InputError);
}

TEST_CASE("eval_time is strictly decreasing in P") {
  testsupport::Rng rng{11};
  for (int trial = 0; trial < 50; ++trial) {
    ApplicationProfile p(rng.in(1.0, 5000.0), rng.in(-3.0, -0.1), TimeUnit::hours);
    int lo = 1 + static_cast<int>(rng.in(0, 5000));
    int hi = lo + 1 + static_cast<int>(rng.in(0, 5000));
    CHECK(eval_time(p, lo) > eval_time(p, hi));
  }
}

TEST_CASE("round trip required_processors(eval_time(P)) = P") {
  ApplicationProfile cloud(7004.86, -2.06, TimeUnit::hours);
  ApplicationProfile local(1013.50, -1.58, TimeUnit::hours);
  for (int p : {1, 2, 7, 16, 44, 199, 1024, 10000}) {
    CHECK(rel_diff(required_processors(cloud, eval_time(cloud, p)), p) < 1e-9);
    CHECK(rel_diff(required_processors(local, eval_time(local, p)), p) < 1e-9);
  }
}

namespace {

std::vector<TimingObservation> synthesize(double a, double b, TimeUnit unit,
                                          const std::vector<int>& counts) {
  std::vector<TimingObservation> obs;
  for (int p : counts)
    obs.push_back({p, a * std::pow(p, b), unit});
  return obs;
}

}  // namespace

TEST_CASE("fit recovers exact power-law data") {
  const auto obs = synthesize(1000.0, -1.5, TimeUnit::hours, {1, 2, 4, 8, 16});
  const auto fitted = fit_profile(obs, TimeUnit::hours);
  CHECK(rel_diff(fitted.scale(), 1000.0) < 1e-6);
  CHECK(rel_diff(fitted.exponent(), -1.5) < 1e-6);
  REQUIRE(fitted.observed_range().has_value());
  CHECK(fitted.observed_range()->first == 1);
  CHECK(fitted.observed_range()->second == 16);
  REQUIRE(fitted.fit_residual().has_value());
  CHECK(*fitted.fit_residual() < 1e-9);
}

TEST_CASE("two points determine the law exactly") {
  std::vector<TimingObservation> obs = {{1, 100.0, TimeUnit::hours},
                                        {10, 10.0, TimeUnit::hours}};
  const auto fitted = fit_profile(obs, TimeUnit::hours);
  CHECK(rel_diff(fitted.scale(), 100.0) < 1e-9);
  CHECK(rel_diff(fitted.exponent(), -1.0) < 1e-9);
}

TEST_CASE("fit tolerates multiplicative noise") {
  const double true_a = 7004.86, true_b = -2.06;
  testsupport::Rng rng{77};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<TimingObservation> obs;
    for (int p : {1, 2, 4, 8, 10, 16, 24, 32, 40}) {
      const double noise = 1.0 + 0.02 * (2.0 * rng.next() - 1.0);
      obs.push_back({p, true_a * std::pow(p, true_b) * noise, TimeUnit::hours});
    }
    const auto fitted = fit_profile(obs, TimeUnit::hours);
    CHECK(rel_diff(fitted.scale(), true_a) < 0.05);
    CHECK(rel_diff(fitted.exponent(), true_b) < 0.05);
  }
}

TEST_CASE("refined fit stays near the log-log initializer on clean data") {
  testsupport::Rng rng{5};
  std::vector<TimingObservation> obs;
  for (int p : {1, 2, 4, 8, 16, 32}) {
    const double noise = 1.0 + 0.01 * (2.0 * rng.next() - 1.0);
    obs.push_back({p, 500.0 * std::pow(p, -1.3) * noise, TimeUnit::hours});
  }
  const auto [a0, b0] = loglog_fit(obs, TimeUnit::hours);
  const auto fitted = fit_profile(obs, TimeUnit::hours);
  CHECK(rel_diff(fitted.scale(), a0) < 0.02);
  CHECK(rel_diff(fitted.exponent(), b0) < 0.02);
}

TEST_CASE("fit rejects unusable data") {
  // too few observations
  std::vector<TimingObservation> one = {{4, 10.0, TimeUnit::hours}};
  CHECK_THROWS_AS(fit_profile(one, TimeUnit::hours), InputError);
  // degenerate: one distinct processor count
  std::vector<TimingObservation> same = {{4, 10.0, TimeUnit::hours},
                                         {4, 11.0, TimeUnit::hours}};
  CHECK_THROWS_AS(fit_profile(same, TimeUnit::hours), InputError);
  // non-scaling data: time grows with processors
  std::vector<TimingObservation> up = {{1, 10.0, TimeUnit::hours},
                                       {2, 20.0, TimeUnit::hours},
                                       {4, 40.0, TimeUnit::hours}};
  CHECK_THROWS_AS(fit_profile(up, TimeUnit::hours), InputError);
  // invalid rows
  std::vector<TimingObservation> bad = {{0, 10.0, TimeUnit::hours},
                                        {2, 20.0, TimeUnit::hours}};
  CHECK_THROWS_AS(fit_profile(bad, TimeUnit::hours), InputError);
}

TEST_CASE("unit conversion scales a and leaves b alone") {
  const auto obs = synthesize(48.0, -1.7, TimeUnit::hours, {1, 3, 9, 27});
  const auto hours = fit_profile(obs, TimeUnit::hours);
  const auto minutes = fit_profile(obs, TimeUnit::minutes);
  CHECK(rel_diff(minutes.scale(), hours.scale() * 60.0) < 1e-9);
  CHECK(rel_diff(minutes.exponent(), hours.exponent()) < 1e-9);

  const auto converted = hours.converted_to(TimeUnit::seconds);
  CHECK(rel_diff(converted.scale(), hours.scale() * 3600.0) < 1e-12);
  CHECK(converted.exponent() == hours.exponent());
  CHECK(rel_diff(eval_time(converted, 9), eval_time(hours, 9) * 3600.0) < 1e-12);
}

TEST_CASE("extrapolation flag reflects the observed range") {
  ApplicationProfile p(100.0, -1.2, TimeUnit::hours);
  CHECK_FALSE(p.extrapolates_at(100000));  // no range metadata
  p.set_observed_range(10, 40);
  CHECK(p.extrapolates_at(9));
  CHECK_FALSE(p.extrapolates_at(10));
  CHECK_FALSE(p.extrapolates_at(40));
  CHECK(p.extrapolates_at(41));
}

TEST_CASE("profile document round trip") {
  auto obs = synthesize(1013.5, -1.58, TimeUnit::minutes, {10, 20, 30, 40});
  const auto fitted = fit_profile(obs, TimeUnit::minutes);
  const auto parsed = parse_profile(render_profile(fitted));
  CHECK(parsed.scale() == fitted.scale());
  CHECK(parsed.exponent() == fitted.exponent());
  CHECK(parsed.unit() == fitted.unit());
  CHECK(parsed.observed_range() == fitted.observed_range());
  CHECK(*parsed.fit_residual() == *fitted.fit_residual());

  CHECK_THROWS_AS(parse_profile("a 5\n"), IoError);          // missing fields
  CHECK_THROWS_AS(parse_profile("bogus 1\n"), IoError);      // unknown key
  CHECK_THROWS_AS(load_profile("/nonexistent/p"), IoError);  // missing file
}

TEST_CASE("observation rows parse with per-row units") {
  std::istringstream in(
      "processors,elapsed,unit\n"
      "10,26.6,hours\n"
      "20,540.0,minutes\n"
      "# comment\n"
      "40,9000,seconds\n");
  const auto obs = parse_observations(in);
  REQUIRE(obs.size() == 3);
  CHECK(obs[0].processors == 10);
  CHECK(obs[0].unit == TimeUnit::hours);
  CHECK(obs[1].unit == TimeUnit::minutes);
  CHECK(obs[2].unit == TimeUnit::seconds);

  std::istringstream bad("processors,elapsed,unit\n4,1.0,fortnights\n");
  CHECK_THROWS_AS(parse_observations(bad), IoError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "burst/coupled.hpp"
#include "burst/errors.hpp"
#include "support.hpp"

using namespace burst;
using testsupport::QuadratureOracle;
using testsupport::rel_diff;

namespace {

CoupledModel reference_model() {
  return CoupledModel(ApplicationProfile(7004.86, -2.06, TimeUnit::hours),
                      CostModel(0.067, 1.0));
}

}  // namespace

TEST_CASE("construction rejects the divergent exponent regime") {
  CostModel cost(0.067, 1.0);
  CHECK_THROWS_AS(
      CoupledModel(ApplicationProfile(100.0, -0.5, TimeUnit::hours), cost),
      ModelDomainError);
  CHECK_THROWS_AS(
      CoupledModel(ApplicationProfile(100.0, -1.0, TimeUnit::hours), cost),
      ModelDomainError);
  CHECK_NOTHROW(CoupledModel(ApplicationProfile(100.0, -1.0001, TimeUnit::hours), cost));
}

TEST_CASE("cost_of_time closed form") {
  const auto model = reference_model();
  // T = a collapses the power term: C = a * alpha / (1 + 1/b). Frozen from
  // long-double arithmetic.
  CHECK(rel_diff(cost_of_time(model, 7004.86), 912.08563886792453) < 1e-12);
  // Frozen from the quadrature oracle at T = 20.
  CHECK(rel_diff(cost_of_time(model, 20.0), 44.750404093608127) < 1e-9);
  // cost vanishes with T
  CHECK(cost_of_time(model, 1e-15) < 1e-6);
  CHECK_THROWS_AS(cost_of_time(model, 0.0), InputError);
  CHECK_THROWS_AS(cost_of_time(model, -1.0), InputError);
}

TEST_CASE("the local ratio scales the coupled cost") {
  const auto cloud = reference_model();
  CoupledModel local(ApplicationProfile(7004.86, -2.06, TimeUnit::hours),
                     CostModel(0.067, 2.5));
  CHECK(rel_diff(cost_of_time(local, 20.0), 2.5 * cost_of_time(cloud, 20.0)) < 1e-12);
}

TEST_CASE("time_of_cost inverts cost_of_time") {
  const auto model = reference_model();
  CHECK(rel_diff(time_of_cost(model, 912.08563886792453), 7004.86) < 1e-9);
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    CHECK(rel_diff(time_of_cost(model, cost_of_time(model, t)), t) < 1e-9);
  }
  CHECK(rel_diff(time_of_cost(model, 44.750404093608127), 20.0) < 1e-9);
  CHECK_THROWS_AS(time_of_cost(model, 0.0), InputError);
  CHECK_THROWS_AS(time_of_cost(model, -5.0), InputError);
}

TEST_CASE("closed form agrees with adaptive quadrature") {
  testsupport::Rng rng{2024};
  for (int trial = 0; trial < 100; ++trial) {
    const double a = rng.in(100.0, 1e4);
    const double b = rng.in(-3.0, -1.1);
    const double alpha = rng.in(0.01, 0.2);
    const double t = rng.in(0.1, 100.0);
    CoupledModel model(ApplicationProfile(a, b, TimeUnit::hours),
                       CostModel(alpha, 1.0));
    QuadratureOracle oracle(a, b, alpha, 1.0);
    CHECK(rel_diff(cost_of_time(model, t), oracle.cost(t)) < 1e-8);
  }
}

TEST_CASE("cost_of_time and time_of_cost are strictly increasing") {
  const auto model = reference_model();
  double prev_cost = 0.0;
  for (double t = 0.5; t < 300.0; t *= 1.7) {
    const double c = cost_of_time(model, t);
    CHECK(c > prev_cost);
    prev_cost = c;
  }
  double prev_time = 0.0;
  for (double budget = 0.25; budget < 5000.0; budget *= 2.1) {
    const double t = time_of_cost(model, budget);
    CHECK(t > prev_time);
    prev_time = t;
  }
}

TEST_CASE("scaling a and T together scales cost by the same factor") {
  testsupport::Rng rng{8};
  for (int trial = 0; trial < 30; ++trial) {
    const double a = rng.in(100.0, 5000.0);
    const double b = rng.in(-3.0, -1.1);
    const double alpha = rng.in(0.01, 0.2);
    const double t = rng.in(0.5, 80.0);
    const double s = rng.in(0.1, 10.0);
    CoupledModel base(ApplicationProfile(a, b, TimeUnit::hours), CostModel(alpha, 1.0));
    CoupledModel scaled(ApplicationProfile(a * s, b, TimeUnit::hours),
                        CostModel(alpha, 1.0));
    CHECK(rel_diff(cost_of_time(scaled, t * s), s * cost_of_time(base, t)) < 1e-9);
  }
}

TEST_CASE("profiles in other units are normalized before coupling") {
  // 7004.86 hours expressed as minutes: identical model.
  CoupledModel hours(ApplicationProfile(7004.86, -2.06, TimeUnit::hours),
                     CostModel(0.067, 1.0));
  CoupledModel minutes(ApplicationProfile(7004.86 * 60.0, -2.06, TimeUnit::minutes),
                       CostModel(0.067, 1.0));
  CHECK(rel_diff(cost_of_time(minutes, 20.0), cost_of_time(hours, 20.0)) < 1e-12);
}

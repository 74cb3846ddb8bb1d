#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "burst/advisor.hpp"
#include "burst/baselines.hpp"

namespace burst {

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int points = 1;

  std::vector<double> values() const;  // linearly spaced, endpoints included
};

/// The evaluation grid. Every grid point carries one value per axis; both
/// placement policies and all baselines are evaluated at every point. The
/// local environment's hourly rate is price_ratio times the cloud rate;
/// queue and setup overheads are the given fractions of the deadline.
struct SweepConfig {
  GridAxis deadline{1.0, 100.0, 10};        // hours
  GridAxis budget{10.0, 100.0, 10};         // currency
  GridAxis queue_fraction{0.01, 0.50, 7};   // of the deadline (local wait)
  GridAxis setup_fraction{0.01, 0.50, 5};   // of the deadline (cloud provisioning)
  GridAxis price_ratio{0.7, 3.4, 8};        // local rate / cloud rate
  std::uint64_t seed = 1;                   // drives the random baseline
  bool bill_cloud_setup = true;
  bool bill_local_queue = false;

  std::size_t total_points() const;

  // Rejects axes outside the supported envelope (deadline [1,100], budget
  // [10,100], fractions [0.01,0.5], ratio [0.7,3.4]) unless
  // `allow_extended` is set; always rejects empty or inverted axes.
  void validate(bool allow_extended = false) const;

  // Stable hash of every field, stamped into output files so a result set
  // can be matched to the exact configuration that produced it.
  std::string fingerprint() const;
};

// `key = value` config-file round trip. Unknown keys are errors.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);
std::string render_sweep_config(const SweepConfig& config);

// Applies one `key = value` setting (the config-file vocabulary); used for
// command-line overrides on top of a loaded file.
void apply_config_setting(SweepConfig& config, std::string_view key,
                          std::string_view value);

/// The workload/provider inputs the sweep instantiates environments from.
/// Profiles may be in any unit; they are normalized to hours when each grid
/// point's environments are built.
struct SweepInputs {
  ApplicationProfile local_profile;
  ApplicationProfile cloud_profile;
  std::vector<int> local_sizes;
  std::vector<int> cloud_sizes;
  double alpha = 0.0;  // cloud-reference hourly slope, currency/(proc*hour)

  // Bundled demo workload: the seismic-imaging profiles fitted over 10-40
  // processors, the provider node menu {1,2,4,8,12,16}, an on-premise
  // cluster of up to 200-core nodes, and the 4GB-per-core price column.
  static SweepInputs demo();
};

// One decision policy's outcome at one grid point.
struct PolicyOutcome {
  std::string decision;          // "local", "cloud", or kNoneFeasible
  double cost = 0.0;             // of the decided plan (0 when none)
  double turnaround = 0.0;
  double relative_metric = 0.0;  // (objective - local objective) / local objective
};

struct SweepResult {
  std::uint64_t index = 0;  // linear grid index, row-major over the axes
  double deadline = 0.0;
  double budget = 0.0;
  double queue_fraction = 0.0;
  double setup_fraction = 0.0;
  double price_ratio = 0.0;
  Policy policy = Policy::deadline_aware;
  bool local_feasible = false;
  bool cloud_feasible = false;
  bool decided = false;  // advisor found at least one feasible plan
  PolicyOutcome advisor;
  PolicyOutcome always_local;
  PolicyOutcome always_cloud;
  PolicyOutcome random_pick;
  PolicyOutcome worst_case;
};

struct SweepRun {
  SweepConfig config;
  std::vector<SweepResult> deadline_results;
  std::vector<SweepResult> budget_results;
};

// Evaluates every grid point under both policies and all baselines.
// Deterministic: results depend only on config and inputs.
SweepRun run_sweep(const SweepConfig& config, const SweepInputs& inputs);

/// Distribution summary of the relative metric for one (price ratio,
/// decision policy) bucket, plus how often the advisor kept the job local
/// in that bucket. Undecided grid points are excluded and counted.
struct RatioAggregate {
  double ratio = 0.0;
  std::string policy_name;
  int count = 0;
  int excluded = 0;
  double min = 0.0, q1 = 0.0, median = 0.0, mean = 0.0, q3 = 0.0, max = 0.0;
  double local_win_fraction = 0.0;
};

std::vector<RatioAggregate> aggregate_by_ratio(std::span<const SweepResult> results);

// Smallest ratio bucket where the advisor sends a majority of decided
// points to the cloud; NaN when it never does.
double crossover_ratio(std::span<const RatioAggregate> aggregates);

// round(count * (1 + error)), floored at one processor. error in [-0.9, 1.0].
int inject_error(int processor_count, double error);

struct SensitivityRecord {
  std::uint64_t index = 0;
  Policy policy = Policy::deadline_aware;
  double error = 0.0;
  std::string accurate_decision;
  std::string inaccurate_decision;
  bool same_decision = false;
  bool delta_valid = false;     // false when the accurate run had no feasible plan
  double relative_delta = 0.0;  // (inaccurate objective - accurate) / accurate
};

/// One Table-style aggregation cell: every (policy, error) pair splits into
/// a same-decision and a different-decision group with mean/stddev of the
/// relative deltas and the group size.
struct SensitivityCell {
  Policy policy = Policy::deadline_aware;
  double error = 0.0;
  bool same_decision = false;
  double avg = 0.0;
  double stddev = 0.0;  // population
  int size = 0;
  double fraction = 0.0;  // size / decided points for this (policy, error)
  int excluded = 0;       // accurate-run-infeasible points, no delta defined
};

struct SensitivityRun {
  SweepConfig config;
  std::vector<double> errors;
  std::vector<SensitivityRecord> records;
  std::vector<SensitivityCell> table;
};

inline constexpr double kDefaultSensitivityErrors[] = {-0.9, -0.5, -0.1,
                                                       0.1, 0.5, 0.9};

// For each grid point and error level: take the accurate recommendation,
// perturb every plan's processor count by the error, recompute times and
// costs from the accurate profile at the perturbed counts, re-decide, and
// record whether the decision survived plus the relative objective delta.
// An inaccurate run that strands both environments infeasible scores as
// objective zero, i.e. a delta of exactly -1.
SensitivityRun run_sensitivity(const SweepConfig& config, const SweepInputs& inputs,
                               std::span<const double> errors);

// Output files. Every file starts with a `# config <fingerprint>` comment
// and a header row; numbers are written with full round-trip precision so
// aggregates recomputed from the raw files match byte for byte.
void write_sweep_raw(const SweepRun& run, const std::filesystem::path& dir);
void write_ratio_aggregates(const SweepRun& run, const std::filesystem::path& dir);
void write_sensitivity(const SensitivityRun& run, const std::filesystem::path& dir);

// Reads a raw results file back (sweep_deadline_raw.csv / sweep_budget_raw.csv).
std::vector<SweepResult> read_sweep_raw(const std::filesystem::path& file);

std::string render_ratio_aggregates(std::span<const RatioAggregate> aggregates,
                                    const std::string& fingerprint);

}  // namespace burst

// burst-advisor: decides whether an HPC job should run on the local cluster
// or burst to a cloud provider, from fitted scaling profiles and linear cost
// models. Also drives the policy-comparison sweep and the profile-inaccuracy
// study behind the library.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "burst/advisor.hpp"
#include "burst/baselines.hpp"
#include "burst/coupled.hpp"
#include "burst/cost.hpp"
#include "burst/errors.hpp"
#include "burst/logstore.hpp"
#include "burst/profile.hpp"
#include "burst/sweep.hpp"

namespace {

// Process exit statuses.
constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kNoneFeasibleStatus = 2;
constexpr int kIoErrorStatus = 3;
constexpr int kDomainErrorStatus = 4;

bool g_verbose = false;

void note(const std::string& message) {
  if (g_verbose) std::cerr << "note: " << message << "\n";
}

struct FitProfileArgs {
  std::string observations;
  std::string output;
  std::string unit = "hours";
};

int run_fit_profile(const FitProfileArgs& args) {
  const auto observations = burst::load_observations(args.observations);
  note("loaded " + std::to_string(observations.size()) + " observations");
  const auto unit = burst::parse_time_unit(args.unit);
  const auto profile = burst::fit_profile(observations, unit);
  burst::save_profile(profile, args.output);
  std::printf("fitted profile: a=%.6g b=%.6g (%s)\n", profile.scale(),
              profile.exponent(), burst::to_string(profile.unit()));
  if (profile.fit_residual())
    std::printf("rms residual: %.6g\n", *profile.fit_residual());
  if (profile.observed_range())
    std::printf("observed processors: %d..%d\n", profile.observed_range()->first,
                profile.observed_range()->second);
  return kOk;
}

struct FitCostArgs {
  std::string prices;
  std::string output;
  double price_ratio = 1.0;
};

int run_fit_cost(const FitCostArgs& args) {
  const auto table = burst::load_price_table(args.prices);
  const auto fit = burst::fit_alpha(table);
  burst::save_cost_model(burst::CostModel(fit.alpha, args.price_ratio), args.output);
  std::printf("price table: %s (%zu rows, %s)\n", table.memory_label().c_str(),
              table.rows().size(), table.currency().c_str());
  std::printf("alpha (slope through origin): %.6g\n", fit.alpha);
  std::printf("unconstrained fit: slope %.6g, intercept %.6g\n",
              fit.unconstrained_slope, fit.unconstrained_intercept);
  std::printf("worst row residual: %.2f%%\n", fit.max_relative_residual * 100.0);
  return kOk;
}

struct AdviseArgs {
  std::string policy;
  std::optional<double> deadline;
  std::optional<double> budget;
  std::string local_profile;
  std::string cloud_profile;
  std::optional<double> alpha;
  std::string prices;
  double price_ratio = 1.0;
  double queue_time = 0.0;
  double setup_time = 0.0;
  std::vector<int> cloud_sizes = {1, 2, 4, 8, 12, 16};
  int local_max = 200;
  bool bill_setup = true;
  bool bill_queue = false;
  std::string output;
};

double resolve_alpha(const std::optional<double>& alpha, const std::string& prices) {
  if (alpha && !prices.empty())
    throw burst::InputError("give either --alpha or --prices, not both");
  if (alpha) {
    if (!(*alpha > 0.0)) throw burst::InputError("--alpha must be positive");
    return *alpha;
  }
  if (prices.empty())
    throw burst::InputError("either --alpha or --prices is required");
  return burst::fit_alpha(burst::load_price_table(prices)).alpha;
}

int run_advise(const AdviseArgs& args) {
  const auto policy = burst::parse_policy(args.policy);
  if (policy == burst::Policy::deadline_aware && !args.deadline)
    throw burst::InputError("--policy deadline requires --deadline");
  if (policy == burst::Policy::budget_aware && !args.budget)
    throw burst::InputError("--policy budget requires --budget");

  const double alpha = resolve_alpha(args.alpha, args.prices);
  const auto local_profile = burst::load_profile(args.local_profile);
  const auto cloud_profile = burst::load_profile(args.cloud_profile);
  if (args.local_max < 1) throw burst::InputError("--local-max must be at least 1");
  std::vector<int> local_sizes(static_cast<std::size_t>(args.local_max));
  std::iota(local_sizes.begin(), local_sizes.end(), 1);

  std::vector<burst::Environment> environments;
  environments.emplace_back("local", std::move(local_sizes), local_profile,
                            burst::CostModel(alpha, args.price_ratio),
                            args.queue_time, args.bill_queue);
  environments.emplace_back("cloud", args.cloud_sizes, cloud_profile,
                            burst::CostModel(alpha, 1.0), args.setup_time,
                            args.bill_setup);

  burst::AdviceRequest request{policy, args.deadline, args.budget};
  const auto recommendation = burst::advise(request, environments);
  const auto text = burst::render_recommendation(recommendation);
  std::fputs(text.c_str(), stdout);
  for (const auto& plan : recommendation.plans)
    if (plan.extrapolated)
      std::cerr << "warning: " << plan.environment
                << " plan evaluates the profile outside its fitted range\n";
  if (!args.output.empty()) {
    std::ofstream out(args.output);
    if (!out) throw burst::IoError("cannot write '" + args.output + "'");
    out << text;
  }
  return recommendation.chosen == burst::kNoneFeasible ? kNoneFeasibleStatus : kOk;
}

struct HarnessArgs {
  std::string output_dir;
  std::string config;
  std::vector<std::string> overrides;
  bool allow_extended = false;
  std::string local_profile;
  std::string cloud_profile;
  std::optional<double> alpha;
  std::string prices;
  std::vector<double> errors{std::begin(burst::kDefaultSensitivityErrors),
                             std::end(burst::kDefaultSensitivityErrors)};
};

burst::SweepConfig resolve_config(const HarnessArgs& args) {
  burst::SweepConfig config;
  if (!args.config.empty()) config = burst::load_sweep_config(args.config);
  for (const auto& override_text : args.overrides) {
    const auto eq = override_text.find('=');
    if (eq == std::string::npos)
      throw burst::InputError("--set expects key=value, got '" + override_text + "'");
    burst::apply_config_setting(config, override_text.substr(0, eq),
                                override_text.substr(eq + 1));
  }
  config.validate(args.allow_extended);
  return config;
}

burst::SweepInputs resolve_inputs(const HarnessArgs& args) {
  burst::SweepInputs inputs = burst::SweepInputs::demo();
  if (args.local_profile.empty() != args.cloud_profile.empty())
    throw burst::InputError("--local-profile and --cloud-profile go together");
  if (!args.local_profile.empty()) {
    inputs.local_profile = burst::load_profile(args.local_profile);
    inputs.cloud_profile = burst::load_profile(args.cloud_profile);
  }
  if (args.alpha || !args.prices.empty())
    inputs.alpha = resolve_alpha(args.alpha, args.prices);
  return inputs;
}

std::filesystem::path prepare_output_dir(const std::string& dir) {
  std::filesystem::path path(dir);
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec || !std::filesystem::is_directory(path))
    throw burst::IoError("cannot create output directory '" + dir + "'");
  return path;
}

int run_sweep_command(const HarnessArgs& args) {
  const auto config = resolve_config(args);
  const auto inputs = resolve_inputs(args);
  const auto dir = prepare_output_dir(args.output_dir);
  const auto run = burst::run_sweep(config, inputs);
  burst::write_sweep_raw(run, dir);
  burst::write_ratio_aggregates(run, dir);

  std::printf("sweep complete: %zu grid points per policy (config %s)\n",
              config.total_points(), config.fingerprint().c_str());
  for (const std::string policy : {"deadline", "budget"}) {
    const auto& results =
        policy == "deadline" ? run.deadline_results : run.budget_results;
    const auto aggregates = burst::aggregate_by_ratio(results);
    int excluded = 0;
    for (const auto& agg : aggregates)
      if (agg.policy_name == "advisor") excluded += agg.excluded;
    std::printf("%s-aware: advisor keeps the job local\n", policy.c_str());
    for (const auto& agg : aggregates) {
      if (agg.policy_name != "advisor") continue;
      std::printf("  ratio %-8.4g %5.1f%% of %d decided\n", agg.ratio,
                  agg.local_win_fraction * 100.0, agg.count);
    }
    const double crossover = burst::crossover_ratio(aggregates);
    if (std::isfinite(crossover))
      std::printf("  cloud majority from ratio %.4g\n", crossover);
    else
      std::printf("  cloud never wins a majority in the swept ratios\n");
    if (excluded > 0)
      std::printf("  %d infeasible points excluded from aggregates\n", excluded);
  }
  std::printf("wrote sweep_deadline_raw.csv sweep_budget_raw.csv "
              "deadline_by_ratio.csv budget_by_ratio.csv in %s\n",
              dir.string().c_str());
  return kOk;
}

int run_sensitivity_command(const HarnessArgs& args) {
  const auto config = resolve_config(args);
  const auto inputs = resolve_inputs(args);
  const auto dir = prepare_output_dir(args.output_dir);
  const auto run = burst::run_sensitivity(config, inputs, args.errors);
  burst::write_sensitivity(run, dir);

  std::printf("sensitivity complete: %zu grid points x %zu errors x 2 policies "
              "(config %s)\n",
              config.total_points(), run.errors.size(), config.fingerprint().c_str());
  std::printf("%-15s %6s %-10s %8s %8s %8s %6s\n", "policy", "error", "decision",
              "avg", "std", "size", "share");
  for (const auto& cell : run.table) {
    std::printf("%-15s %+6.2f %-10s %+8.3f %8.3f %8d %5.1f%%\n",
                burst::to_string(cell.policy), cell.error,
                cell.same_decision ? "same" : "different", cell.avg, cell.stddev,
                cell.size, cell.fraction * 100.0);
  }
  std::printf("wrote sensitivity_table.csv in %s\n", dir.string().c_str());
  return kOk;
}

struct LogAppendArgs {
  std::string store;
  std::string environment;
  int processors = 0;
  double elapsed = 0.0;
  std::string unit = "hours";
  std::string tag;
  std::string timestamp;
};

std::string resolve_store(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("BURST_LOG_STORE"); env && *env) return env;
  throw burst::InputError("no log store given (use --store or BURST_LOG_STORE)");
}

int run_log_append(const LogAppendArgs& args) {
  burst::ExecutionRecord record;
  record.environment = args.environment;
  record.processors = args.processors;
  record.elapsed = args.elapsed;
  record.unit = burst::parse_time_unit(args.unit);
  record.job_tag = args.tag;
  record.unix_seconds = args.timestamp.empty()
                            ? static_cast<std::int64_t>(std::time(nullptr))
                            : burst::parse_timestamp(args.timestamp);
  burst::LogStore store(resolve_store(args.store));
  const auto count = store.append(record);
  std::printf("appended; store now holds %zu records\n", count);
  return kOk;
}

struct RefitArgs {
  std::string store;
  std::string environment;
  std::string output;
  std::string unit = "hours";
};

int run_refit(const RefitArgs& args) {
  burst::LogStore store(resolve_store(args.store));
  const auto profile =
      store.refit(args.environment, burst::parse_time_unit(args.unit));
  burst::save_profile(profile, args.output);
  std::printf("refitted %s: a=%.6g b=%.6g (%s)\n", args.environment.c_str(),
              profile.scale(), profile.exponent(), burst::to_string(profile.unit()));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"advises where to run an HPC job: local cluster or cloud"};
  app.require_subcommand(1);
  app.add_flag("--verbose", g_verbose, "extra notes on stderr");

  FitProfileArgs fit_profile_args;
  auto* fit_profile_cmd =
      app.add_subcommand("fit-profile", "fit a scaling profile from timings");
  fit_profile_cmd->add_option("--observations", fit_profile_args.observations,
                              "csv of processors,elapsed,unit")->required();
  fit_profile_cmd->add_option("--output", fit_profile_args.output, "profile file")
      ->required();
  fit_profile_cmd->add_option("--unit", fit_profile_args.unit,
                              "unit of the fitted coefficients");

  FitCostArgs fit_cost_args;
  auto* fit_cost_cmd =
      app.add_subcommand("fit-cost", "fit the hourly-rate slope from a price list");
  fit_cost_cmd->add_option("--prices", fit_cost_args.prices,
                           "csv of cores,cost_per_hour")->required();
  fit_cost_cmd->add_option("--output", fit_cost_args.output, "cost model file")
      ->required();
  fit_cost_cmd->add_option("--price-ratio", fit_cost_args.price_ratio,
                           "local/cloud rate multiplier stored in the model");

  AdviseArgs advise_args;
  auto* advise_cmd = app.add_subcommand("advise", "recommend a placement");
  advise_cmd->add_option("--policy", advise_args.policy, "deadline or budget")
      ->required();
  advise_cmd->add_option("--deadline", advise_args.deadline, "deadline in hours");
  advise_cmd->add_option("--budget", advise_args.budget, "budget in currency");
  advise_cmd->add_option("--local-profile", advise_args.local_profile,
                         "local profile file")->required();
  advise_cmd->add_option("--cloud-profile", advise_args.cloud_profile,
                         "cloud profile file")->required();
  advise_cmd->add_option("--alpha", advise_args.alpha, "hourly-rate slope");
  advise_cmd->add_option("--prices", advise_args.prices,
                         "price csv to fit the slope from");
  advise_cmd->add_option("--price-ratio", advise_args.price_ratio,
                         "local rate as a multiple of the cloud rate");
  advise_cmd->add_option("--queue-time", advise_args.queue_time,
                         "local queue wait, hours");
  advise_cmd->add_option("--setup-time", advise_args.setup_time,
                         "cloud provisioning time, hours");
  advise_cmd->add_option("--cloud-sizes", advise_args.cloud_sizes,
                         "allowed processors per cloud node")->delimiter(',');
  advise_cmd->add_option("--local-max", advise_args.local_max,
                         "local nodes come in sizes 1..N");
  advise_cmd->add_option("--bill-setup", advise_args.bill_setup,
                         "cloud setup time is billed");
  advise_cmd->add_option("--bill-queue", advise_args.bill_queue,
                         "local queue time is billed");
  advise_cmd->add_option("--output", advise_args.output,
                         "also write the recommendation to this file");

  HarnessArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "run the policy-comparison grid");
  HarnessArgs sensitivity_args;
  auto* sensitivity_cmd =
      app.add_subcommand("sensitivity", "run the profile-inaccuracy study");
  for (auto [cmd, args] : {std::pair{sweep_cmd, &sweep_args},
                           std::pair{sensitivity_cmd, &sensitivity_args}}) {
    cmd->add_option("--output-dir", args->output_dir, "directory for csv outputs")
        ->required();
    cmd->add_option("--config", args->config, "key = value config file");
    cmd->add_option("--set", args->overrides, "override, e.g. --set seed=7")
        ->take_all();
    cmd->add_flag("--allow-extended-ranges", args->allow_extended,
                  "permit grids outside the supported envelope");
    cmd->add_option("--local-profile", args->local_profile, "local profile file");
    cmd->add_option("--cloud-profile", args->cloud_profile, "cloud profile file");
    cmd->add_option("--alpha", args->alpha, "hourly-rate slope");
    cmd->add_option("--prices", args->prices, "price csv to fit the slope from");
  }
  sensitivity_cmd->add_option("--errors", sensitivity_args.errors,
                              "relative profile errors in [-0.9, 1.0]")
      ->delimiter(',');

  LogAppendArgs log_args;
  auto* log_cmd = app.add_subcommand("log-append", "record one execution");
  log_cmd->add_option("--store", log_args.store, "log file (or BURST_LOG_STORE)");
  log_cmd->add_option("--environment", log_args.environment, "environment label")
      ->required();
  log_cmd->add_option("--processors", log_args.processors, "total processors")
      ->required();
  log_cmd->add_option("--elapsed", log_args.elapsed, "elapsed time")->required();
  log_cmd->add_option("--unit", log_args.unit, "seconds|minutes|hours");
  log_cmd->add_option("--tag", log_args.tag, "free-form job tag");
  log_cmd->add_option("--timestamp", log_args.timestamp,
                      "ISO-8601 UTC; defaults to now");

  RefitArgs refit_args;
  auto* refit_cmd =
      app.add_subcommand("refit", "fit a profile from logged executions");
  refit_cmd->add_option("--store", refit_args.store, "log file (or BURST_LOG_STORE)");
  refit_cmd->add_option("--environment", refit_args.environment, "environment label")
      ->required();
  refit_cmd->add_option("--output", refit_args.output, "profile file")->required();
  refit_cmd->add_option("--unit", refit_args.unit, "unit of the fitted profile");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (app.got_subcommand(fit_profile_cmd)) return run_fit_profile(fit_profile_args);
    if (app.got_subcommand(fit_cost_cmd)) return run_fit_cost(fit_cost_args);
    if (app.got_subcommand(advise_cmd)) return run_advise(advise_args);
    if (app.got_subcommand(sweep_cmd)) return run_sweep_command(sweep_args);
    if (app.got_subcommand(sensitivity_cmd))
      return run_sensitivity_command(sensitivity_args);
    if (app.got_subcommand(log_cmd)) return run_log_append(log_args);
    if (app.got_subcommand(refit_cmd)) return run_refit(refit_args);
  } catch (const burst::ModelDomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainErrorStatus;
  } catch (const burst::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoErrorStatus;
  } catch (const burst::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

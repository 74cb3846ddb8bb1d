#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace burst {

struct PriceRow {
  int cores = 0;
  double cost_per_hour = 0.0;
};

/// Provider price list for one memory configuration: hourly cost by core
/// count. Rows must be strictly increasing in both columns.
class PriceTable {
 public:
  PriceTable(std::vector<PriceRow> rows, std::string memory_label,
             std::string currency = "USD");

  const std::vector<PriceRow>& rows() const { return rows_; }
  const std::string& memory_label() const { return memory_label_; }
  const std::string& currency() const { return currency_; }

 private:
  std::vector<PriceRow> rows_;
  std::string memory_label_;
  std::string currency_;
};

struct AlphaFit {
  double alpha = 0.0;                  // least-squares slope through the origin
  double unconstrained_slope = 0.0;    // diagnostics: what a free-intercept fit
  double unconstrained_intercept = 0.0;  // would have produced
  double max_relative_residual = 0.0;  // worst |alpha*P - C|/C over the rows
};

// Fits the hourly rate C_h = alpha * P through the origin (the intercept is
// dropped; the report records what it would have been). Needs >= 2 rows.
AlphaFit fit_alpha(const PriceTable& table);

/// Linear infrastructure cost model. The effective hourly rate for P
/// processors is k * alpha * P, where k is the price-ratio multiplier
/// relative to the reference (cloud) model; the reference uses k = 1.
class CostModel {
 public:
  explicit CostModel(double alpha, double k = 1.0);

  double alpha() const { return alpha_; }
  double k() const { return k_; }

 private:
  double alpha_;
  double k_;
};

enum class Billing {
  continuous,    // C = T * k * alpha * P
  hour_ceiling,  // T rounded up to whole hours before charging
};

// k * alpha * P. Rejects processors < 1.
double hourly_rate(const CostModel& model, int processors);

// Total cost for running P processors for `turnaround_hours`. Rejects
// non-positive turnaround; cost tends to zero with the turnaround.
double total_cost(const CostModel& model, int processors, double turnaround_hours,
                  Billing billing = Billing::continuous);

// Price-table ingestion: header `cores,cost_per_hour`, one row per offering.
// An optional `# memory_per_core <label>` comment names the configuration;
// otherwise `fallback_label` is used.
PriceTable parse_price_table(std::istream& in, const std::string& fallback_label);
PriceTable load_price_table(const std::string& path);

// Key-value cost-model document (fields alpha, k), the fit-cost output.
std::string render_cost_model(const CostModel& model);
CostModel parse_cost_model(std::string_view text);
CostModel load_cost_model(const std::string& path);
void save_cost_model(const CostModel& model, const std::string& path);

}  // namespace burst

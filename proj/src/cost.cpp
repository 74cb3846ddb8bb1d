#include "burst/cost.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>

#include "burst/errors.hpp"

namespace burst {

PriceTable::PriceTable(std::vector<PriceRow> rows, std::string memory_label,
                       std::string currency)
    : rows_(std::move(rows)),
      memory_label_(std::move(memory_label)),
      currency_(std::move(currency)) {
  if (rows_.empty()) throw InputError("price table has no rows");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].cores < 1) throw InputError("price table core counts must be positive");
    if (!(rows_[i].cost_per_hour > 0.0))
      throw InputError("price table costs must be positive");
    if (i > 0 && rows_[i].cores <= rows_[i - 1].cores)
      throw InputError("price table core counts must be strictly increasing");
    if (i > 0 && rows_[i].cost_per_hour <= rows_[i - 1].cost_per_hour)
      throw InputError("price table costs must be strictly increasing");
  }
}

AlphaFit fit_alpha(const PriceTable& table) {
  const auto& rows = table.rows();
  if (rows.size() < 2)
    throw InputError("fitting a rate slope needs at least two price rows");

  AlphaFit fit;
  double spc = 0.0, spp = 0.0, sp = 0.0, sc = 0.0;
  const double n = static_cast<double>(rows.size());
  for (const auto& row : rows) {
    const double p = static_cast<double>(row.cores);
    spc += p * row.cost_per_hour;
    spp += p * p;
    sp += p;
    sc += row.cost_per_hour;
  }
  fit.alpha = spc / spp;
  fit.unconstrained_slope = (n * spc - sp * sc) / (n * spp - sp * sp);
  fit.unconstrained_intercept = (sc - fit.unconstrained_slope * sp) / n;
  for (const auto& row : rows) {
    const double predicted = fit.alpha * row.cores;
    fit.max_relative_residual =
        std::max(fit.max_relative_residual,
                 std::abs(predicted - row.cost_per_hour) / row.cost_per_hour);
  }
  return fit;
}

CostModel::CostModel(double alpha, double k) : alpha_(alpha), k_(k) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InputError("cost model slope must be positive");
  if (!(k > 0.0) || !std::isfinite(k))
    throw InputError("price ratio must be positive");
}

double hourly_rate(const CostModel& model, int processors) {
  if (processors < 1) throw InputError("processor count must be at least 1");
  return model.k() * model.alpha() * static_cast<double>(processors);
}

double total_cost(const CostModel& model, int processors, double turnaround_hours,
                  Billing billing) {
  if (!(turnaround_hours > 0.0) || !std::isfinite(turnaround_hours))
    throw InputError("turnaround must be positive");
  const double billed = billing == Billing::hour_ceiling
                            ? std::ceil(turnaround_hours)
                            : turnaround_hours;
  return billed * hourly_rate(model, processors);
}

PriceTable parse_price_table(std::istream& in, const std::string& fallback_label) {
  std::vector<PriceRow> rows;
  std::string label = fallback_label;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string key;
      meta >> key;
      if (key == "memory_per_core") meta >> label;
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      if (line.find("cores") != std::string::npos) continue;
    }
    std::istringstream fields(line);
    std::string cores, cost;
    if (!std::getline(fields, cores, ',') || !std::getline(fields, cost))
      throw IoError("price row needs cores,cost_per_hour: '" + line + "'");
    try {
      rows.push_back({std::stoi(cores), std::stod(cost)});
    } catch (const std::exception& e) {
      throw IoError("bad price row '" + line + "': " + e.what());
    }
  }
  try {
    return PriceTable(std::move(rows), label);
  } catch (const InputError& e) {
    throw IoError(std::string("invalid price table: ") + e.what());
  }
}

PriceTable load_price_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open price table '" + path + "'");
  const auto stem = std::filesystem::path(path).stem().string();
  return parse_price_table(in, stem);
}

std::string render_cost_model(const CostModel& model) {
  char alpha[40], k[40];
  std::snprintf(alpha, sizeof alpha, "%.17g", model.alpha());
  std::snprintf(k, sizeof k, "%.17g", model.k());
  std::string out = "# cost model v1\n";
  out += std::string("alpha ") + alpha + "\n";
  out += std::string("k ") + k + "\n";
  return out;
}

CostModel parse_cost_model(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  double alpha = 0.0, k = 1.0;
  bool have_alpha = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    if (key == "alpha") {
      fields >> alpha;
      have_alpha = true;
    } else if (key == "k") {
      fields >> k;
    } else {
      throw IoError("unknown cost model field '" + key + "'");
    }
    if (fields.fail()) throw IoError("malformed cost model line '" + line + "'");
  }
  if (!have_alpha) throw IoError("cost model document must define alpha");
  return CostModel(alpha, k);
}

CostModel load_cost_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open cost model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_cost_model(buf.str());
  } catch (const InputError& e) {
    throw IoError("invalid cost model in '" + path + "': " + e.what());
  }
}

void save_cost_model(const CostModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write cost model file '" + path + "'");
  out << render_cost_model(model);
  if (!out) throw IoError("failed writing cost model file '" + path + "'");
}

}  // namespace burst

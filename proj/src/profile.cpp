#include "burst/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "burst/errors.hpp"

namespace burst {

ApplicationProfile::ApplicationProfile(double scale, double exponent, TimeUnit unit)
    : scale_(scale), exponent_(exponent), unit_(unit) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw InputError("profile scale coefficient must be positive");
  if (!(exponent < 0.0) || !std::isfinite(exponent))
    throw InputError("profile exponent must be negative (time must shrink with processors)");
}

ApplicationProfile ApplicationProfile::converted_to(TimeUnit target) const {
  ApplicationProfile out(convert_time(scale_, unit_, target), exponent_, target);
  out.observed_range_ = observed_range_;
  if (fit_residual_)
    out.fit_residual_ = convert_time(*fit_residual_, unit_, target);
  return out;
}

void ApplicationProfile::set_observed_range(int p_min, int p_max) {
  if (p_min < 1 || p_max < p_min)
    throw InputError("observed processor range must satisfy 1 <= min <= max");
  observed_range_ = {p_min, p_max};
}

bool ApplicationProfile::extrapolates_at(double processors) const {
  if (!observed_range_) return false;
  return processors < observed_range_->first || processors > observed_range_->second;
}

double eval_time(const ApplicationProfile& profile, int processors) {
  if (processors < 1)
    throw InputError("processor count must be at least 1");
  return profile.scale() * std::pow(static_cast<double>(processors), profile.exponent());
}

double eval_time(const ApplicationProfile& profile, int processors, TimeUnit out) {
  return convert_time(eval_time(profile, processors), profile.unit(), out);
}

double required_processors(const ApplicationProfile& profile, double time_budget) {
  if (!(time_budget > 0.0) || !std::isfinite(time_budget))
    throw InputError("time budget must be positive");
  return std::pow(time_budget / profile.scale(), 1.0 / profile.exponent());
}

namespace {

struct FitData {
  std::vector<double> p;  // processor counts
  std::vector<double> t;  // elapsed, in the target unit
};

FitData prepare(std::span<const TimingObservation> observations, TimeUnit target) {
  if (observations.size() < 2)
    throw InputError("fitting needs at least two observations");
  FitData data;
  data.p.reserve(observations.size());
  data.t.reserve(observations.size());
  for (const auto& obs : observations) {
    if (obs.processors < 1)
      throw InputError("observation processor count must be at least 1");
    if (!(obs.elapsed > 0.0) || !std::isfinite(obs.elapsed))
      throw InputError("observation elapsed time must be positive");
    data.p.push_back(static_cast<double>(obs.processors));
    data.t.push_back(convert_time(obs.elapsed, obs.unit, target));
  }
  const double first = data.p.front();
  if (std::all_of(data.p.begin(), data.p.end(),
                  [first](double v) { return v == first; }))
    throw InputError("fitting needs at least two distinct processor counts");
  return data;
}

double sum_squared_error(const FitData& d, double a, double b) {
  double sse = 0.0;
  for (std::size_t i = 0; i < d.p.size(); ++i) {
    const double r = a * std::pow(d.p[i], b) - d.t[i];
    sse += r * r;
  }
  return sse;
}

}  // namespace

std::pair<double, double> loglog_fit(std::span<const TimingObservation> observations,
                                     TimeUnit target) {
  const FitData d = prepare(observations, target);
  const std::size_t n = d.p.size();
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += std::log(d.p[i]);
    mean_y += std::log(d.t[i]);
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(d.p[i]) - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log(d.t[i]) - mean_y);
  }
  const double b = sxy / sxx;
  const double a = std::exp(mean_y - b * mean_x);
  return {a, b};
}

ApplicationProfile fit_profile(std::span<const TimingObservation> observations,
                               TimeUnit target) {
  const FitData d = prepare(observations, target);
  auto [a, b] = loglog_fit(observations, target);

  // Damped Gauss-Newton refinement of the nonlinear residuals, seeded by
  // the log-log solution (already exact for noiseless data).
  double sse = sum_squared_error(d, a, b);
  double lambda = 1e-3;
  for (int iter = 0; iter < 100; ++iter) {
    double jtj00 = 0.0, jtj01 = 0.0, jtj11 = 0.0, jtr0 = 0.0, jtr1 = 0.0;
    for (std::size_t i = 0; i < d.p.size(); ++i) {
      const double pb = std::pow(d.p[i], b);
      const double r = a * pb - d.t[i];
      const double j0 = pb;
      const double j1 = a * pb * std::log(d.p[i]);
      jtj00 += j0 * j0;
      jtj01 += j0 * j1;
      jtj11 += j1 * j1;
      jtr0 += j0 * r;
      jtr1 += j1 * r;
    }
    bool stepped = false;
    for (int attempt = 0; attempt < 12 && !stepped; ++attempt) {
      const double m00 = jtj00 * (1.0 + lambda);
      const double m11 = jtj11 * (1.0 + lambda);
      const double det = m00 * m11 - jtj01 * jtj01;
      if (det == 0.0 || !std::isfinite(det)) break;
      const double da = (-jtr0 * m11 + jtr1 * jtj01) / det;
      const double db = (-jtr1 * m00 + jtr0 * jtj01) / det;
      const double na = a + da;
      const double nb = b + db;
      if (na > 0.0 && std::isfinite(nb)) {
        const double nsse = sum_squared_error(d, na, nb);
        if (nsse <= sse) {
          const double rel_change =
              std::max(std::abs(da) / a, std::abs(db) / std::max(std::abs(b), 1e-30));
          a = na;
          b = nb;
          sse = nsse;
          lambda = std::max(lambda / 3.0, 1e-12);
          stepped = true;
          if (rel_change < 1e-13) iter = 100;
          break;
        }
      }
      lambda *= 10.0;
    }
    if (!stepped) break;
  }

  if (!(b < 0.0))
    throw InputError("fitted exponent is non-negative; data does not scale down with processors");
  if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw InputError("fit did not converge to a valid profile");

  ApplicationProfile profile(a, b, target);
  const auto [pmin, pmax] = std::minmax_element(d.p.begin(), d.p.end());
  profile.set_observed_range(static_cast<int>(*pmin), static_cast<int>(*pmax));
  profile.set_fit_residual(std::sqrt(sse / static_cast<double>(d.p.size())));
  return profile;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string render_profile(const ApplicationProfile& profile) {
  std::ostringstream out;
  out << "# application profile v1\n";
  out << "a " << format_double(profile.scale()) << "\n";
  out << "b " << format_double(profile.exponent()) << "\n";
  out << "time_unit " << to_string(profile.unit()) << "\n";
  if (profile.fit_residual())
    out << "fit_residual " << format_double(*profile.fit_residual()) << "\n";
  if (profile.observed_range())
    out << "observed_p_range " << profile.observed_range()->first << " "
        << profile.observed_range()->second << "\n";
  return out.str();
}

ApplicationProfile parse_profile(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  double a = 0.0, b = 0.0, residual = 0.0;
  bool have_a = false, have_b = false, have_unit = false, have_residual = false;
  int pmin = 0, pmax = 0;
  bool have_range = false;
  TimeUnit unit = TimeUnit::hours;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    if (key == "a") {
      fields >> a;
      have_a = true;
    } else if (key == "b") {
      fields >> b;
      have_b = true;
    } else if (key == "time_unit") {
      std::string u;
      fields >> u;
      unit = parse_time_unit(u);
      have_unit = true;
    } else if (key == "fit_residual") {
      fields >> residual;
      have_residual = true;
    } else if (key == "observed_p_range") {
      fields >> pmin >> pmax;
      have_range = true;
    } else {
      throw IoError("unknown profile field '" + key + "'");
    }
    if (fields.fail())
      throw IoError("malformed profile line '" + line + "'");
  }
  if (!have_a || !have_b || !have_unit)
    throw IoError("profile document must define a, b and time_unit");
  ApplicationProfile profile(a, b, unit);
  if (have_residual) profile.set_fit_residual(residual);
  if (have_range) profile.set_observed_range(pmin, pmax);
  return profile;
}

ApplicationProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open profile file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_profile(buf.str());
  } catch (const InputError& e) {
    throw IoError("invalid profile in '" + path + "': " + e.what());
  }
}

void save_profile(const ApplicationProfile& profile, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write profile file '" + path + "'");
  out << render_profile(profile);
  if (!out) throw IoError("failed writing profile file '" + path + "'");
}

std::vector<TimingObservation> parse_observations(std::istream& in) {
  std::vector<TimingObservation> out;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.find("processors") != std::string::npos) continue;  // header row
    }
    std::istringstream fields(line);
    std::string procs, elapsed, unit;
    if (!std::getline(fields, procs, ',') || !std::getline(fields, elapsed, ',') ||
        !std::getline(fields, unit))
      throw IoError("observation row needs processors,elapsed,unit: '" + line + "'");
    try {
      TimingObservation obs;
      obs.processors = std::stoi(procs);
      obs.elapsed = std::stod(elapsed);
      // tolerate surrounding whitespace on the unit column
      const auto first = unit.find_first_not_of(" \t\r");
      const auto last = unit.find_last_not_of(" \t\r");
      if (first == std::string::npos) throw InputError("empty unit");
      obs.unit = parse_time_unit(std::string_view(unit).substr(first, last - first + 1));
      out.push_back(obs);
    } catch (const std::exception& e) {
      throw IoError("bad observation row '" + line + "': " + e.what());
    }
  }
  return out;
}

std::vector<TimingObservation> load_observations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open observations file '" + path + "'");
  return parse_observations(in);
}

}  // namespace burst

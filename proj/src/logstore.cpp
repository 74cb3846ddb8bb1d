#include "burst/logstore.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "burst/errors.hpp"

namespace burst {

namespace {

constexpr const char* kHeader = "# execution log v1";

void validate(const ExecutionRecord& record) {
  if (record.environment.empty())
    throw InputError("execution record needs an environment label");
  if (record.environment.find('\t') != std::string::npos ||
      record.job_tag.find('\t') != std::string::npos ||
      record.environment.find('\n') != std::string::npos ||
      record.job_tag.find('\n') != std::string::npos)
    throw InputError("labels must not contain tabs or newlines");
  if (record.processors < 1)
    throw InputError("execution record processors must be at least 1");
  if (!(record.elapsed > 0.0) || !std::isfinite(record.elapsed))
    throw InputError("execution record elapsed time must be positive");
}

}  // namespace

std::string render_timestamp(std::int64_t unix_seconds) {
  std::time_t t = static_cast<std::time_t>(unix_seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::int64_t parse_timestamp(std::string_view iso_utc) {
  std::tm tm{};
  int y, mo, d, h, mi, s;
  if (std::sscanf(std::string(iso_utc).c_str(), "%d-%d-%dT%d:%d:%dZ", &y, &mo, &d,
                  &h, &mi, &s) != 6)
    throw InputError("timestamp must be ISO-8601 UTC (YYYY-MM-DDTHH:MM:SSZ)");
  tm.tm_year = y - 1900;
  tm.tm_mon = mo - 1;
  tm.tm_mday = d;
  tm.tm_hour = h;
  tm.tm_min = mi;
  tm.tm_sec = s;
  return static_cast<std::int64_t>(timegm(&tm));
}

LogStore::LogStore(std::filesystem::path file) : path_(std::move(file)) {}

std::size_t LogStore::append(const ExecutionRecord& record) {
  validate(record);
  const bool fresh = !std::filesystem::exists(path_);
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) throw IoError("cannot open log store '" + path_.string() + "' for append");
  if (fresh) out << kHeader << "\n";
  char elapsed[40];
  std::snprintf(elapsed, sizeof elapsed, "%.17g", record.elapsed);
  out << record.environment << "\t" << record.processors << "\t" << elapsed << "\t"
      << to_string(record.unit) << "\t" << render_timestamp(record.unix_seconds)
      << "\t" << record.job_tag << "\n";
  out.flush();
  if (!out) throw IoError("failed appending to log store '" + path_.string() + "'");
  return count();
}

std::vector<ExecutionRecord> LogStore::scan() const {
  std::vector<ExecutionRecord> records;
  std::ifstream in(path_);
  if (!in) {
    if (!std::filesystem::exists(path_)) return records;
    throw IoError("cannot read log store '" + path_.string() + "'");
  }
  std::string line;
  bool header_checked = false;
  while (std::getline(in, line)) {
    if (!header_checked) {
      header_checked = true;
      if (line.rfind("# execution log", 0) != 0)
        throw IoError("'" + path_.string() + "' is not an execution log (missing header)");
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    ExecutionRecord record;
    std::string procs, elapsed, unit, timestamp;
    if (!std::getline(fields, record.environment, '\t') ||
        !std::getline(fields, procs, '\t') || !std::getline(fields, elapsed, '\t') ||
        !std::getline(fields, unit, '\t') || !std::getline(fields, timestamp, '\t'))
      throw IoError("malformed log record '" + line + "'");
    std::getline(fields, record.job_tag, '\t');  // optional trailing field
    try {
      record.processors = std::stoi(procs);
      record.elapsed = std::stod(elapsed);
      record.unit = parse_time_unit(unit);
      record.unix_seconds = parse_timestamp(timestamp);
    } catch (const std::exception& e) {
      throw IoError("bad log record '" + line + "': " + e.what());
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::size_t LogStore::count() const { return scan().size(); }

ApplicationProfile LogStore::refit(const std::string& environment,
                                   TimeUnit unit) const {
  std::vector<TimingObservation> observations;
  for (const auto& record : scan()) {
    if (record.environment != environment) continue;
    observations.push_back({record.processors, record.elapsed, record.unit});
  }
  if (observations.size() < 2)
    throw InputError("log store has fewer than two records for environment '" +
                     environment + "'");
  return fit_profile(observations, unit);
}

}  // namespace burst

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "burst/profile.hpp"

namespace burst {

struct ExecutionRecord {
  std::string environment;
  int processors = 0;
  double elapsed = 0.0;
  TimeUnit unit = TimeUnit::hours;
  std::int64_t unix_seconds = 0;  // UTC
  std::string job_tag;            // optional, may be empty
};

std::string render_timestamp(std::int64_t unix_seconds);   // ISO-8601 Z
std::int64_t parse_timestamp(std::string_view iso_utc);

/// Append-only flat-file store of execution records, the history profiles
/// are refitted from. One tab-delimited record per line under a version
/// header. Records are never rewritten; one writer at a time.
class LogStore {
 public:
  explicit LogStore(std::filesystem::path file);

  const std::filesystem::path& path() const { return path_; }

  // Validates and durably appends; returns the new record count.
  std::size_t append(const ExecutionRecord& record);

  std::vector<ExecutionRecord> scan() const;  // empty if the file is absent
  std::size_t count() const;

  // fit_profile over this environment's records, normalized to `unit`.
  ApplicationProfile refit(const std::string& environment,
                           TimeUnit unit = TimeUnit::hours) const;

 private:
  std::filesystem::path path_;
};

}  // namespace burst

#include "burst/units.hpp"

#include "burst/errors.hpp"

namespace burst {

double hours_per(TimeUnit u) {
  switch (u) {
    case TimeUnit::seconds: return 1.0 / 3600.0;
    case TimeUnit::minutes: return 1.0 / 60.0;
    case TimeUnit::hours: return 1.0;
  }
  throw InputError("unknown time unit");
}

double convert_time(double value, TimeUnit from, TimeUnit to) {
  if (from == to) return value;
  return value * (hours_per(from) / hours_per(to));
}

const char* to_string(TimeUnit u) {
  switch (u) {
    case TimeUnit::seconds: return "seconds";
    case TimeUnit::minutes: return "minutes";
    case TimeUnit::hours: return "hours";
  }
  return "?";
}

TimeUnit parse_time_unit(std::string_view text) {
  if (text == "seconds" || text == "s" || text == "sec") return TimeUnit::seconds;
  if (text == "minutes" || text == "m" || text == "min") return TimeUnit::minutes;
  if (text == "hours" || text == "h" || text == "hr") return TimeUnit::hours;
  throw InputError("unknown time unit '" + std::string(text) + "'");
}

}  // namespace burst

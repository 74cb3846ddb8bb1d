#pragma once

#include <string>
#include <string_view>

namespace burst {

enum class TimeUnit { seconds, minutes, hours };

// Hours represented by one unit of `u` (seconds -> 1/3600, ...).
double hours_per(TimeUnit u);

double convert_time(double value, TimeUnit from, TimeUnit to);

const char* to_string(TimeUnit u);
TimeUnit parse_time_unit(std::string_view text);  // throws InputError

}  // namespace burst

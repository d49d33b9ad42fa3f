#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mcplab {

/// Closed grid lo..hi with `count` points; count == 1 means {lo}.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;

  std::vector<double> values() const;
  std::string to_string() const;  // "lo:hi:count", round-trips
};

/// Parses "lo:hi:count" or a single number. Locale independent.
Range parse_range(std::string_view text);
double parse_double(std::string_view text);

}  // namespace mcplab

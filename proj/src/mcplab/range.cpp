#include "mcplab/range.hpp"

#include <charconv>
#include <cmath>

#include "mcplab/errors.hpp"

namespace mcplab {

std::vector<double> Range::values() const {
  if (count < 1) throw DomainError("range count must be >= 1");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
  out.back() = hi;
  return out;
}

std::string Range::to_string() const {
  char buf[96];
  auto put = [&](char* p, double v) { return std::to_chars(p, buf + sizeof buf, v).ptr; };
  char* p = put(buf, lo);
  *p++ = ':';
  p = put(p, hi);
  *p++ = ':';
  p = std::to_chars(p, buf + sizeof buf, count).ptr;
  return std::string(buf, p);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw DomainError("not a finite number: '" + std::string(text) + "'");
  return v;
}

Range parse_range(std::string_view text) {
  const auto a = text.find(':');
  if (a == std::string_view::npos) {
    const double v = parse_double(text);
    return {v, v, 1};
  }
  const auto b = text.find(':', a + 1);
  if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos)
    throw DomainError("range must be lo:hi:count, got '" + std::string(text) + "'");
  Range r;
  r.lo = parse_double(text.substr(0, a));
  r.hi = parse_double(text.substr(a + 1, b - a - 1));
  const std::string_view cnt = text.substr(b + 1);
  auto [ptr, ec] = std::from_chars(cnt.data(), cnt.data() + cnt.size(), r.count);
  if (ec != std::errc() || ptr != cnt.data() + cnt.size() || r.count < 1)
    throw DomainError("range count must be a positive integer, got '" + std::string(cnt) + "'");
  if (r.count > 1 && !(r.hi >= r.lo)) throw DomainError("range needs lo <= hi");
  return r;
}

}  // namespace mcplab

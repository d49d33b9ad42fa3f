#include <doctest.h>

#include "mcplab/errors.hpp"
#include "mcplab/range.hpp"

using mcplab::parse_range;

TEST_CASE("range parsing") {
  const auto r = parse_range("-3:3:7");
  CHECK(r.lo == -3.0);
  CHECK(r.hi == 3.0);
  CHECK(r.count == 7);
  const auto v = r.values();
  REQUIRE(v.size() == 7);
  CHECK(v.front() == -3.0);
  CHECK(v[3] == doctest::Approx(0.0));
  CHECK(v.back() == 3.0);

  const auto single = parse_range("0.25");
  CHECK(single.count == 1);
  CHECK(single.values() == std::vector<double>{0.25});
  CHECK(parse_range("1e-3:2.5e-1:3").hi == 0.25);
}

TEST_CASE("range round trip") {
  const mcplab::Range r{0.05, 0.95, 50};
  const auto back = parse_range(r.to_string());
  CHECK(back.lo == r.lo);
  CHECK(back.hi == r.hi);
  CHECK(back.count == r.count);
}

TEST_CASE("malformed ranges are rejected") {
  for (const char* bad : {"", "a:b:c", "1:2", "1:2:0", "1:2:3:4", "2:1:5", "1:2:x", "1,5", "nan", "inf"})
    CHECK_THROWS_AS(parse_range(bad), mcplab::DomainError);
}

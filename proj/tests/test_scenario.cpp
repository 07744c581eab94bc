#include <doctest.h>

#include "ucmbl/scenario.hpp"

using namespace ucmbl;

namespace {
const char* kRestConfig = R"(# minimal rest scenario
name = rest
grid.n1 = 16
grid.n2 = 17
grid.L = 8
T = 0.5
profiles.u0 = zero
profiles.u_inf = zero
profiles.C = identity
profiles.C11_inf = constant
profiles.C11_inf.value = 1
profiles.P = zero
)";
}

TEST_CASE("minimal rest config parses with defaults") {
  const Scenario s = parse_config(kRestConfig);
  CHECK(s.name == "rest");
  CHECK(s.grid.n1 == 16);
  CHECK(s.grid.n2 == 17);
  CHECK(s.T == 0.5);
  CHECK(s.numerics.cfl == 0.5);
  CHECK(s.numerics.sigma == 0.0);
  CHECK(s.u0.name == "zero");
  const ScenarioFields f = build_fields(s);
  CHECK(f.C0 == 1.0);
  for (double v : f.u0.v) CHECK(v == 0.0);
}

TEST_CASE("parse failures carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_config("grid.n1 = 16\nbogus_key = 3\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_AS(parse_config("grid.n1 = sixteen\n"), ParseError);
  CHECK_THROWS_AS(parse_config("grid.n1\n"), ParseError);
  CHECK_THROWS_AS(parse_config("profiles.wrong = zero\n"), ParseError);
}

TEST_CASE("validation failures name the violated invariant") {
  std::string cfg(kRestConfig);
  SUBCASE("initial velocity must vanish at the wall") {
    cfg += "profiles.u0 = uniform\nprofiles.u0.value = 0.1\n";
    cfg += "profiles.u_inf = sine\n";
    CHECK_THROWS_WITH_AS(parse_config(cfg), doctest::Contains("wall"),
                         ValidationError);
  }
  SUBCASE("initial velocity must match the far field at the top") {
    cfg += "profiles.u_inf = sine\nprofiles.u_inf.eps = 0.5\n";
    CHECK_THROWS_WITH_AS(parse_config(cfg), doctest::Contains("top"),
                         ValidationError);
  }
  SUBCASE("C11 must approach its declared limit") {
    cfg += "profiles.C11_inf.value = 2\n";
    CHECK_THROWS_WITH_AS(parse_config(cfg), doctest::Contains("C11"),
                         ValidationError);
  }
  SUBCASE("numerics ranges") {
    cfg += "numerics.cfl = 1.5\n";
    CHECK_THROWS_AS(parse_config(cfg), ValidationError);
  }
}

TEST_CASE("serialization round-trips") {
  std::string cfg(kRestConfig);
  cfg += "profiles.u_inf = sine\nprofiles.u_inf.eps = 0.012345678901234567\n";
  cfg += "profiles.u0 = shear\nnumerics.snapshot_stride = 5\n";
  const Scenario a = parse_config(cfg);
  const std::string ser = serialize_config(a);
  const Scenario b = parse_config(ser);
  CHECK(serialize_config(b) == ser);
  CHECK(b.u_inf.param("eps", 0.0) == a.u_inf.param("eps", 1.0));
  CHECK(b.numerics.snapshot_stride == 5);
}

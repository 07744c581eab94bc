#include <doctest.h>

#include <cmath>
#include <random>

#include "ucmbl/grid.hpp"

using namespace ucmbl;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

ScalarField sample(const Grid& g, double (*f)(double, double)) {
  ScalarField out(g);
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i) out(i, j) = f(g.xi1(i), g.xi2(j));
  return out;
}

ScalarField random_field(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScalarField out(g);
  for (double& v : out.v) v = u(rng);
  return out;
}
}  // namespace

TEST_CASE("grid construction validates its bounds") {
  CHECK_THROWS_AS(Grid(4, 64, 8.0), ValidationError);
  CHECK_THROWS_AS(Grid(64, 64, 1.0), ValidationError);
  const Grid g(64, 65, 8.0);
  CHECK(g.h1 == doctest::Approx(1.0 / 64));
  CHECK(g.h2 == doctest::Approx(0.125));
}

TEST_CASE("streamwise difference") {
  const Grid g(256, 8, 8.0);
  SUBCASE("annihilates constants and xi2-only fields") {
    ScalarField c(g);
    c.fill(3.25);
    CHECK(linf_norm(d_xi1(c)) == 0.0);
    const ScalarField f = sample(g, [](double, double y) { return y; });
    CHECK(linf_norm(d_xi1(f)) == 0.0);
  }
  SUBCASE("second-order accurate on a sine with the Taylor bound") {
    const ScalarField f =
        sample(g, [](double x, double) { return std::sin(kTwoPi * x); });
    const ScalarField df = d_xi1(f);
    double worst = 0.0;
    for (int i = 0; i < g.n1; ++i) {
      worst = std::max(worst, std::abs(df(i, 0) -
                                       kTwoPi * std::cos(kTwoPi * g.xi1(i))));
    }
    const double bound =
        kTwoPi * kTwoPi * kTwoPi * g.h1 * g.h1 / 6.0 * 1.0000001;
    CHECK(worst <= bound);
  }
  SUBCASE("commutes with the periodic shift") {
    const ScalarField f = random_field(g, 42);
    ScalarField shifted(g);
    const int roll = 17;
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < g.n1; ++i)
        shifted((i + roll) % g.n1, j) = f(i, j);
    const ScalarField a = d_xi1(shifted);
    const ScalarField b = d_xi1(f);
    double worst = 0.0;
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < g.n1; ++i)
        worst = std::max(worst, std::abs(a((i + roll) % g.n1, j) - b(i, j)));
    CHECK(worst == 0.0);
  }
}

TEST_CASE("wall-normal difference") {
  SUBCASE("annihilates constants, exact on linear fields") {
    const Grid g(8, 64, 8.0);
    ScalarField c(g);
    c.fill(-1.5);
    CHECK(linf_norm(d_xi2(c)) == 0.0);
    const ScalarField f = sample(g, [](double, double y) { return y; });
    const ScalarField df = d_xi2(f);
    double worst = 0.0;
    for (double v : df.v) worst = std::max(worst, std::abs(v - 1.0));
    CHECK(worst <= 1e-13);
  }
  SUBCASE("second-order under refinement, boundary rows included") {
    auto err = [](int n2) {
      const Grid g(8, n2, 8.0);
      const ScalarField f =
          sample(g, [](double, double y) { return std::exp(-y); });
      const ScalarField df = d_xi2(f);
      double worst = 0.0;
      for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i)
          worst = std::max(worst,
                           std::abs(df(i, j) + std::exp(-g.xi2(j))));
      return worst;
    };
    const double e1 = err(129), e2 = err(257);
    CHECK(e1 / e2 > 3.0);
    CHECK(e1 / e2 < 5.0);
  }
}

TEST_CASE("grid quadrature") {
  SUBCASE("zero and constant fields") {
    const Grid g(32, 33, 8.0);
    ScalarField z(g);
    CHECK(l2_norm(z) == 0.0);
    ScalarField one(g);
    one.fill(1.0);
    CHECK(l2_norm(one) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-13));
  }
  SUBCASE("matches a closed-form integral under refinement") {
    auto norm_of = [](int n) {
      const Grid g(n, n + 1, 8.0);
      const ScalarField f = sample(g, [](double x, double y) {
        return std::sin(kTwoPi * x) * std::exp(-y);
      });
      return l2_norm(f);
    };
    const double L = 8.0;
    const double exact = std::sqrt(0.5 * (1.0 - std::exp(-2.0 * L)) / 2.0);
    const double e1 = std::abs(norm_of(64) - exact);
    const double e2 = std::abs(norm_of(128) - exact);
    CHECK(e2 < 2e-3);
    CHECK(e1 / e2 > 3.0);
  }
  SUBCASE("summation by parts has no streamwise boundary term") {
    const Grid g(64, 16, 8.0);
    const ScalarField f = random_field(g, 1);
    const ScalarField h = random_field(g, 2);
    const double defect = inner(d_xi1(f), h) + inner(f, d_xi1(h));
    CHECK(std::abs(defect) <= 1e-13);
  }
  SUBCASE("norm axioms on random fields") {
    const Grid g(32, 16, 8.0);
    const ScalarField f = random_field(g, 3);
    const ScalarField h = random_field(g, 4);
    ScalarField af = f;
    for (double& v : af.v) v *= -2.5;
    CHECK(l2_norm(af) == doctest::Approx(2.5 * l2_norm(f)).epsilon(1e-13));
    ScalarField s = f;
    for (int k = 0; k < g.size(); ++k) s.v[k] += h.v[k];
    CHECK(l2_norm(s) <= l2_norm(f) + l2_norm(h) + 1e-13);
  }
}

#include <doctest.h>

#include <cmath>

#include "ucmbl/homogenization.hpp"

using namespace ucmbl;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

TEST_CASE("cutoff profile") {
  CHECK(cutoff_chi(0.0) == 1.0);
  CHECK(cutoff_chi(0.5) == 1.0);
  CHECK(cutoff_chi(1.0) == 1.0);
  CHECK(cutoff_chi(1.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cutoff_chi(2.0) == 0.0);
  CHECK(cutoff_chi(3.0) == 0.0);
  // monotone on the ramp
  double prev = 1.0;
  for (double s = 1.0; s <= 2.0; s += 0.01) {
    const double c = cutoff_chi(s);
    CHECK(c <= prev + 1e-15);
    prev = c;
  }
}

TEST_CASE("lifting assembly") {
  const Grid g(32, 65, 8.0);
  const int n1 = g.n1;

  SUBCASE("rest data gives a zero lifting") {
    ScalarField u0(g), Y(g), Ytt(g);
    std::vector<double> gz(n1, 0.0), u_inf(n1, 0.0);
    build_Y(g, gz, gz, u0, u_inf, 0.7, Y, Ytt);
    CHECK(linf_norm(Y) == 0.0);
    CHECK(linf_norm(Ytt) == 0.0);
  }

  SUBCASE("vanishes at t = 0 for any data") {
    ScalarField u0(g), Y(g), Ytt(g);
    std::vector<double> gz(n1, 0.0), gtt(n1), u_inf(n1);
    for (int i = 0; i < n1; ++i) {
      gtt[i] = std::cos(kTwoPi * g.xi1(i));
      u_inf[i] = 0.01 * std::sin(kTwoPi * g.xi1(i));
    }
    for (int j = 1; j < g.n2; ++j)
      for (int i = 0; i < n1; ++i)
        u0(i, j) = u_inf[i] * (1.0 - std::exp(-g.xi2(j) * g.xi2(j)));
    build_Y(g, gz, gtt, u0, u_inf, 0.0, Y, Ytt);
    CHECK(linf_norm(Y) == 0.0);
  }

  SUBCASE("matches the formula at probe nodes") {
    ScalarField u0(g), Y(g), Ytt(g);
    std::vector<double> grow(n1), gtt(n1), u_inf(n1, 0.0);
    for (int i = 0; i < n1; ++i) {
      grow[i] = 0.02 * std::sin(kTwoPi * g.xi1(i));
      gtt[i] = -0.3 * std::cos(kTwoPi * g.xi1(i));
    }
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < n1; ++i) {
        const double y = g.xi2(j);
        u0(i, j) = std::sin(kTwoPi * g.xi1(i)) *
                   (1.0 - std::exp(-y * y)) * std::exp(-y);
      }
    const double t = 0.3;
    build_Y(g, grow, gtt, u0, u_inf, t, Y, Ytt);
    for (const auto& [pi, pj] : {std::pair{3, 0}, {11, 5}, {20, 30}}) {
      const double chi = cutoff_chi(g.xi2(pj));
      const double expect = grow[pi] * chi + t * u0(pi, pj);
      CHECK(Y(pi, pj) == doctest::Approx(expect).epsilon(1e-14));
      CHECK(Ytt(pi, pj) ==
            doctest::Approx(gtt[pi] * chi).epsilon(1e-14));
    }
    // the wall row reduces to g itself, which is what cancels the
    // boundary value of the lifted unknown
    for (int i = 0; i < n1; ++i)
      CHECK(Y(i, 0) == doctest::Approx(grow[i]).epsilon(1e-15));
  }

  SUBCASE("rejects initial data that slips at the wall") {
    ScalarField u0(g), Y(g), Ytt(g);
    u0.fill(0.1);
    std::vector<double> gz(n1, 0.0), u_inf(n1, 0.1);
    CHECK_THROWS_AS(build_Y(g, gz, gz, u0, u_inf, 0.5, Y, Ytt),
                    CompatibilityViolationError);
  }
}

TEST_CASE("stress-divergence mismatch") {
  const Grid g(64, 65, 8.0);
  const int n1 = g.n1;
  std::vector<double> c11_inf(n1), dev(n1, 0.0);
  for (int i = 0; i < n1; ++i)
    c11_inf[i] = 2.0 + 0.5 * std::sin(kTwoPi * g.xi1(i));

  SUBCASE("cancels exactly when C matches its far-field limit in depth") {
    std::vector<SymTensor2> C(g.size());
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < n1; ++i)
        C[g.idx(i, j)] = SymTensor2{c11_inf[i], 0.0, 1.0};
    ScalarField X(g), psi(g);
    build_Psi(g, X, dev, C, c11_inf, ProfileSpec{"zero", {}}, 0.4, psi);
    CHECK(linf_norm(psi) <= 1e-14);
  }

  SUBCASE("constant pressure gradient drops out") {
    std::vector<SymTensor2> C(g.size());
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < n1; ++i)
        C[g.idx(i, j)] = SymTensor2{c11_inf[i], 0.0, 1.0};
    ScalarField X(g), psi(g);
    for (int k = 0; k < g.size(); ++k) X.v[k] = 0.02 * (k % 7);
    build_Psi(g, X, dev, C, c11_inf, ProfileSpec{"constant", {{"p0", 0.7}}},
              0.4, psi);
    CHECK(linf_norm(psi) <= 1e-14);
  }

  SUBCASE("localized bump expands term by term") {
    auto psi_err = [&](int n) {
      const Grid gg(n, n + 1, 8.0);
      std::vector<double> ci(n), dv(n, 0.0);
      for (int i = 0; i < n; ++i)
        ci[i] = 2.0 + 0.5 * std::sin(kTwoPi * gg.xi1(i));
      std::vector<SymTensor2> C(gg.size());
      for (int j = 0; j < gg.n2; ++j)
        for (int i = 0; i < n; ++i) {
          const double y = gg.xi2(j);
          C[gg.idx(i, j)] = SymTensor2{
              ci[i] + 0.5 * std::cos(kTwoPi * gg.xi1(i)) * std::exp(-y * y),
              0.0, 1.0};
        }
      ScalarField X(gg), psi(gg);
      build_Psi(gg, X, dv, C, ci, ProfileSpec{"zero", {}}, 0.0, psi);
      // with a resting far field the mismatch reduces to
      // d/dxi1 (C11 - C11_inf)
      double worst = 0.0;
      for (int j = 0; j < gg.n2; ++j)
        for (int i = 0; i < n; ++i) {
          const double y = gg.xi2(j);
          const double exact = -0.5 * kTwoPi *
                               std::sin(kTwoPi * gg.xi1(i)) *
                               std::exp(-y * y);
          worst = std::max(worst, std::abs(psi(i, j) - exact));
        }
      return worst;
    };
    const double e64 = psi_err(64), e128 = psi_err(128);
    CHECK(e128 < 5e-3);
    CHECK(e64 / e128 > 3.0);
  }
}

TEST_CASE("forcing assembly") {
  const Grid g(32, 65, 8.0);
  const int n1 = g.n1;

  SUBCASE("rest scenario forces nothing") {
    ScenarioFields f;
    f.grid = g;
    f.u0 = ScalarField(g);
    f.u_inf.assign(n1, 0.0);
    f.c11_inf.assign(n1, 1.0);
    f.C.assign(g.size(), SymTensor2{1, 0, 1});
    f.C0 = 1.0;
    ForcingAssembler fa(g, f, ProfileSpec{"zero", {}});
    ScalarField xbar(g), phi(g);
    std::vector<double> zero(n1, 0.0);
    fa.build_Phi(xbar, zero, zero, zero, 0.35, phi);
    CHECK(linf_norm(phi) == 0.0);
  }

  SUBCASE("initial forcing matches the assembled pieces") {
    ScenarioFields f;
    f.grid = g;
    f.u0 = ScalarField(g);
    f.u_inf.assign(n1, 0.0);
    f.c11_inf.assign(n1, 1.0);
    f.C.assign(g.size(), SymTensor2{1, 0, 1});
    f.C0 = 1.0;
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < n1; ++i) {
        const double y = g.xi2(j);
        f.u0(i, j) = 0.01 * std::sin(kTwoPi * g.xi1(i)) *
                     (1.0 - std::exp(-y * y)) * std::exp(-y * y);
      }
    ForcingAssembler fa(g, f, ProfileSpec{"zero", {}});
    ScalarField xbar(g), phi(g);
    std::vector<double> zero(n1, 0.0), gtt(n1);
    for (int i = 0; i < n1; ++i)
      gtt[i] = 0.2 * std::cos(kTwoPi * g.xi1(i));
    fa.build_Phi(xbar, zero, gtt, zero, 0.0, phi);
    // at t = 0 the lifting vanishes, so phi = psi(0) - g_tt * chi; with
    // identity C and a flat far field psi(0) = 0
    const std::vector<double> chi = chi_column(g);
    double worst = 0.0;
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < n1; ++i)
        worst = std::max(worst,
                         std::abs(phi(i, j) + gtt[i] * chi[j]));
    CHECK(worst <= 1e-13);
  }

  SUBCASE("forcing inherits the decay of the data") {
    ScenarioFields f;
    f.grid = g;
    f.u0 = ScalarField(g);
    f.u_inf.assign(n1, 0.0);
    f.c11_inf.assign(n1, 2.0);
    f.C.resize(g.size());
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < n1; ++i) {
        const double y = g.xi2(j);
        f.C[g.idx(i, j)] = SymTensor2{
            2.0 + 0.5 * std::sin(kTwoPi * g.xi1(i)) * std::exp(-y * y), 0.0,
            1.0};
        f.u0(i, j) = 0.01 * std::sin(kTwoPi * g.xi1(i)) *
                     (1.0 - std::exp(-y * y)) * std::exp(-y * y);
      }
    f.C0 = 1.0;
    ForcingAssembler fa(g, f, ProfileSpec{"zero", {}});
    ScalarField xbar(g), phi(g);
    std::vector<double> grow(n1), gtt(n1), dev(n1);
    for (int i = 0; i < n1; ++i) {
      grow[i] = 0.005 * std::sin(kTwoPi * g.xi1(i));
      dev[i] = -grow[i];
      gtt[i] = 0.1 * std::cos(kTwoPi * g.xi1(i));
    }
    fa.build_Phi(xbar, grow, gtt, dev, 0.4, phi);
    double tail = 0.0;
    for (int j = 0; j < g.n2; ++j) {
      if (g.xi2(j) <= 6.0) continue;
      for (int i = 0; i < n1; ++i)
        tail = std::max(tail, std::abs(phi(i, j)));
    }
    CHECK(tail <= 1e-8);
    CHECK(linf_norm(phi) > 1e-3);  // and it is not trivially zero
  }
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "ucmbl/reconstruction.hpp"

using namespace ucmbl;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

TEST_CASE("identity map") {
  const Grid g(32, 33, 8.0);
  ScalarField xdev(g);
  const ScalarField ydev = recover_y(xdev);
  CHECK(linf_norm(ydev) == 0.0);
  const DeformationField F = deformation_gradient(xdev, ydev);
  CHECK(F.max_det_err == 0.0);
}

TEST_CASE("linear shear map is reproduced exactly") {
  const Grid g(32, 33, 8.0);
  const double gamma = 0.4;
  ScalarField xdev(g);
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i) xdev(i, j) = gamma * g.xi2(j);
  const ScalarField ydev = recover_y(xdev);
  CHECK(linf_norm(ydev) <= 1e-12);
  const DeformationField F = deformation_gradient(xdev, ydev);
  for (int k = 0; k < g.size(); ++k) {
    CHECK(F.f11[k] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(F.f12[k] == doctest::Approx(gamma).epsilon(1e-12));
    CHECK(std::abs(F.f21[k]) <= 1e-12);
  }
  CHECK(F.max_det_err <= 1e-12);
}

TEST_CASE("transport march keeps the Jacobian identity at second order") {
  auto residual_at = [](int n) {
    const Grid g(n, n, 8.0);
    ScalarField xdev(g);
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < g.n1; ++i)
        xdev(i, j) = 0.01 * std::sin(kTwoPi * g.xi1(i)) *
                     (1.0 - std::exp(-g.xi2(j)));
    const ScalarField ydev = recover_y(xdev);
    return linf_norm(jacobian_residual(xdev, ydev));
  };
  const double r128 = residual_at(128);
  const double r256 = residual_at(256);
  CHECK(r128 < 1e-4);
  CHECK(r128 / r256 > 3.0);
  CHECK(r128 / r256 < 5.5);
}

TEST_CASE("near-singular maps are rejected") {
  const Grid g(64, 33, 8.0);
  ScalarField xdev(g);
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i)
      xdev(i, j) = -0.95 / kTwoPi * std::sin(kTwoPi * g.xi1(i));
  CHECK_THROWS_AS(recover_y(xdev), DegenerateMapError);
}

TEST_CASE("stress congruence") {
  const Grid g(16, 17, 8.0);
  SUBCASE("identity deformation returns C itself") {
    ScalarField xdev(g), ydev(g);
    const DeformationField F = deformation_gradient(xdev, ydev);
    std::vector<SymTensor2> C(g.size(), SymTensor2{2.0, 0.3, 1.5});
    const std::vector<SymTensor2> S = recover_stress(F, C);
    for (int k = 0; k < g.size(); ++k) {
      CHECK(S[k].a11 == doctest::Approx(2.0).epsilon(1e-14));
      CHECK(S[k].a12 == doctest::Approx(0.3).epsilon(1e-14));
      CHECK(S[k].a22 == doctest::Approx(1.5).epsilon(1e-14));
    }
  }
  SUBCASE("simple shear of the identity tensor") {
    const double gamma = 0.7;
    DeformationField F;
    F.grid = g;
    const int n = g.size();
    F.f11.assign(n, 1.0);
    F.f12.assign(n, gamma);
    F.f21.assign(n, 0.0);
    F.f22.assign(n, 1.0);
    F.det.assign(n, 1.0);
    const std::vector<SymTensor2> C(n, SymTensor2{1, 0, 1});
    const std::vector<SymTensor2> S = recover_stress(F, C);
    CHECK(S[0].a11 == doctest::Approx(1.0 + gamma * gamma));
    CHECK(S[0].a12 == doctest::Approx(gamma));
    CHECK(S[0].a22 == doctest::Approx(1.0));
  }
  SUBCASE("determinant multiplicativity and positivity on random data") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    DeformationField F;
    F.grid = g;
    const int n = g.size();
    F.f11.resize(n);
    F.f12.resize(n);
    F.f21.resize(n);
    F.f22.resize(n);
    F.det.assign(n, 1.0);
    std::vector<SymTensor2> C(n);
    for (int k = 0; k < n; ++k) {
      // volume-preserving deformation: [[a, b],[c, (1+bc)/a]]
      const double a = 1.0 + 0.4 * u(rng);
      const double b = u(rng), c = u(rng);
      F.f11[k] = a;
      F.f12[k] = b;
      F.f21[k] = c;
      F.f22[k] = (1.0 + b * c) / a;
      const double e1 = 0.5 + u(rng) + 0.6, e2 = 0.5 + u(rng) + 0.6;
      const double th = kTwoPi * (u(rng) + 0.5);
      const double ct = std::cos(th), st = std::sin(th);
      C[k] = SymTensor2{e1 * ct * ct + e2 * st * st, (e1 - e2) * ct * st,
                        e1 * st * st + e2 * ct * ct};
    }
    const std::vector<SymTensor2> S = recover_stress(F, C);
    for (int k = 0; k < n; ++k) {
      CHECK(is_psd(S[k], 1e-12));
      CHECK(std::abs(det2(S[k]) - det2(C[k])) <= 1e-12 * (1.0 + det2(C[k])));
    }
  }
}

TEST_CASE("velocity recovery from stored maps") {
  const Grid g(16, 17, 8.0);
  SUBCASE("constant maps give zero velocities") {
    std::vector<MapSnapshot> maps(4);
    for (int s = 0; s < 4; ++s) {
      maps[s].xdev = ScalarField(g);
      maps[s].ydev = ScalarField(g);
      maps[s].t = 0.1 * s;
    }
    std::vector<ScalarField> u, v;
    recover_velocities(maps, u, v);
    for (const auto& f : u) CHECK(linf_norm(f) == 0.0);
    for (const auto& f : v) CHECK(linf_norm(f) == 0.0);
  }
  SUBCASE("quadratic-in-time maps are differentiated exactly") {
    std::vector<MapSnapshot> maps(5);
    const double times[5] = {0.0, 0.09, 0.21, 0.3, 0.42};  // nonuniform
    for (int s = 0; s < 5; ++s) {
      const double t = times[s];
      maps[s].t = t;
      maps[s].xdev = ScalarField(g);
      maps[s].ydev = ScalarField(g);
      for (int k = 0; k < g.size(); ++k) {
        maps[s].xdev.v[k] = 0.3 * t * t + 0.1 * t;
        maps[s].ydev.v[k] = -0.2 * t * t;
      }
    }
    std::vector<ScalarField> u, v;
    recover_velocities(maps, u, v);
    for (int s = 0; s < 5; ++s) {
      const double t = times[s];
      CHECK(u[s].v[0] == doctest::Approx(0.6 * t + 0.1).epsilon(1e-12));
      CHECK(v[s].v[0] == doctest::Approx(-0.4 * t).epsilon(1e-12));
    }
  }
  SUBCASE("fewer than three snapshots are rejected") {
    std::vector<MapSnapshot> maps(2);
    for (auto& m : maps) {
      m.xdev = ScalarField(g);
      m.ydev = ScalarField(g);
    }
    std::vector<ScalarField> u, v;
    CHECK_THROWS_AS(recover_velocities(maps, u, v),
                    InsufficientSnapshotsError);
  }
}

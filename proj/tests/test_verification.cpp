#include <doctest.h>

#include <cmath>

#include "ucmbl/diagnostics.hpp"
#include "ucmbl/verification.hpp"

using namespace ucmbl;

namespace {
CoefficientFields identity_coeffs(const Grid& g) {
  return assemble_coefficients(
      g, std::vector<SymTensor2>(g.size(), SymTensor2{1, 0, 1}));
}
}  // namespace

TEST_CASE("manufactured source balances the closed-form state") {
  // independent check: compare the analytic source against
  //   V_t - A1 V_xi1 - A2 V_xi2 - B V
  // with V_t from a tight centered difference of the exact state and
  // the space terms from the grid operators; the discrepancy is pure
  // discretization error of the probes and must shrink at second order
  TrigBumpMms mms;
  auto probe = [&](int n) {
    const Grid g(n, n + 1, 8.0);
    const CoefficientFields cf = identity_coeffs(g);
    const double t = 0.37, dt = 1e-6;
    StateField sm(g), sp(g), s(g), f(g);
    mms.state(g, t - dt, sm);
    mms.state(g, t + dt, sp);
    mms.state(g, t, s);
    mms.forcing(g, cf, t, f);
    const ScalarField u1 = d_xi1(s.U), v1 = d_xi1(s.V), w1 = d_xi1(s.W);
    const ScalarField u2 = d_xi2(s.U), v2 = d_xi2(s.V), w2 = d_xi2(s.W);
    double worst = 0.0;
    for (int j = 1; j < g.n2 - 1; ++j)
      for (int i = 0; i < g.n1; ++i) {
        const int k = g.idx(i, j);
        const double ut = (sp.U.v[k] - sm.U.v[k]) / (2.0 * dt);
        const double vt = (sp.V.v[k] - sm.V.v[k]) / (2.0 * dt);
        const double wt = (sp.W.v[k] - sm.W.v[k]) / (2.0 * dt);
        const SymTensor2& a = cf.A[k];
        const double r1 = ut - (a.a11 * v1.v[k] + a.a12 * w1.v[k]) -
                          (a.a12 * v2.v[k] + a.a22 * w2.v[k]) -
                          (cf.b1[k] * s.V.v[k] + cf.b2[k] * s.W.v[k]);
        const double r2 = vt - a.a11 * u1.v[k] - a.a12 * u2.v[k];
        const double r3 = wt - a.a12 * u1.v[k] - a.a22 * u2.v[k];
        worst = std::max({worst, std::abs(r1 - f.U.v[k]),
                          std::abs(r2 - f.V.v[k]), std::abs(r3 - f.W.v[k])});
      }
    return worst;
  };
  const double e96 = probe(96), e192 = probe(192);
  CHECK(e192 < 5e-3);
  CHECK(e96 / e192 > 3.0);
}

TEST_CASE("manufactured cases satisfy their compatibility conditions") {
  const Grid g(32, 33, 8.0);
  for (const char* name : {"trig_bump", "polynomial"}) {
    auto mms = make_mms(name);
    StateField s(g);
    mms->state(g, 0.0, s);
    CHECK(linf_norm(s) == 0.0);
    mms->state(g, 0.4, s);
    for (int i = 0; i < g.n1; ++i) CHECK(s.U(i, 0) == 0.0);
  }
  CHECK_THROWS_AS(make_mms("nope"), ValidationError);
}

TEST_CASE("polynomial case is integrated to round-off") {
  PolynomialMms mms;
  std::vector<GridParams> grids;
  for (int n : {16, 32, 64}) {
    GridParams gp;
    gp.n1 = n;
    gp.n2 = n + 1;
    grids.push_back(gp);
  }
  const ConvergenceRecord rec =
      convergence_study(mms, grids, 0.5, 0.5, NumericsParams{});
  for (double e : rec.err) CHECK(e < 1e-12);
  CHECK_FALSE(rec.fitted);
}

TEST_CASE("smooth case converges at second order") {
  TrigBumpMms mms;
  std::vector<GridParams> grids;
  for (int n : {32, 64, 128}) {
    GridParams gp;
    gp.n1 = n;
    gp.n2 = n + 1;
    grids.push_back(gp);
  }
  const ConvergenceRecord rec =
      convergence_study(mms, grids, 0.5, 0.25, NumericsParams{});
  CHECK(rec.fitted);
  CHECK(rec.order > 1.6);
  CHECK(rec.order < 2.4);
}

TEST_CASE("perturbation study on the rest scenario returns zeros") {
  Scenario s;
  s.name = "rest";
  s.grid.n1 = 16;
  s.grid.n2 = 17;
  s.T = 0.1;
  const SigmaStudy st = sigma_study(s, {0.2, 0.1});
  for (double d : st.pairwise) CHECK(d == 0.0);
  CHECK(st.zero_diff == 0.0);
}

TEST_CASE("sigma lists must descend") {
  Scenario s;
  s.grid.n1 = 16;
  s.grid.n2 = 17;
  CHECK_THROWS_AS(sigma_study(s, {0.1, 0.2}), ValidationError);
}

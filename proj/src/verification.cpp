#include "ucmbl/verification.hpp"

#include <cmath>

#include "ucmbl/diagnostics.hpp"
#include "ucmbl/driver.hpp"

namespace ucmbl {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

struct TrigTables {
  std::vector<double> s1, c1;              // sin/cos(2 pi xi1)
  std::vector<double> su, dsu, sv, dsv, sw, dsw;  // xi2 profiles
};

TrigTables make_tables(const Grid& g) {
  TrigTables t;
  t.s1.resize(g.n1);
  t.c1.resize(g.n1);
  for (int i = 0; i < g.n1; ++i) {
    t.s1[i] = std::sin(kTwoPi * g.xi1(i));
    t.c1[i] = std::cos(kTwoPi * g.xi1(i));
  }
  t.su.resize(g.n2);
  t.dsu.resize(g.n2);
  t.sv.resize(g.n2);
  t.dsv.resize(g.n2);
  t.sw.resize(g.n2);
  t.dsw.resize(g.n2);
  for (int j = 0; j < g.n2; ++j) {
    const double x = g.xi2(j);
    const double e = std::exp(-x * x);
    t.su[j] = x * e;
    t.dsu[j] = (1.0 - 2.0 * x * x) * e;
    t.sv[j] = e;
    t.dsv[j] = -2.0 * x * e;
    t.sw[j] = 0.5 * (1.0 + x) * e;
    t.dsw[j] = 0.5 * (1.0 - 2.0 * x * (1.0 + x)) * e;
  }
  return t;
}
}  // namespace

void TrigBumpMms::state(const Grid& g, double t, StateField& out) const {
  static thread_local Grid cached_grid;
  static thread_local TrigTables tab;
  if (!(cached_grid == g)) {
    tab = make_tables(g);
    cached_grid = g;
  }
  if (out.grid() != g) out = StateField(g);
  const double st = std::sin(kTwoPi * t);
  const double t2 = 1.0 - std::cos(kTwoPi * t);
  for (int j = 0; j < g.n2; ++j) {
    const int base = g.idx(0, j);
    for (int i = 0; i < g.n1; ++i) {
      out.U.v[base + i] = st * tab.s1[i] * tab.su[j];
      out.V.v[base + i] = t2 * tab.c1[i] * tab.sv[j];
      out.W.v[base + i] = t2 * tab.s1[i] * tab.sw[j];
    }
  }
}

void TrigBumpMms::forcing(const Grid& g, const CoefficientFields& cf,
                          double t, StateField& out) const {
  static thread_local Grid cached_grid;
  static thread_local TrigTables tab;
  if (!(cached_grid == g)) {
    tab = make_tables(g);
    cached_grid = g;
  }
  if (out.grid() != g) out = StateField(g);
  const double st = std::sin(kTwoPi * t);
  const double ct = std::cos(kTwoPi * t);
  const double t2 = 1.0 - ct;
  const double dst = kTwoPi * ct;
  const double dt2 = kTwoPi * st;
  const double sig = cf.sigma;
  for (int j = 0; j < g.n2; ++j) {
    const int base = g.idx(0, j);
    for (int i = 0; i < g.n1; ++i) {
      const int k = base + i;
      const double s1 = tab.s1[i], c1 = tab.c1[i];
      const double U_t = dst * s1 * tab.su[j];
      const double U_1 = st * kTwoPi * c1 * tab.su[j];
      const double U_2 = st * s1 * tab.dsu[j];
      const double V = t2 * c1 * tab.sv[j];
      const double V_t = dt2 * c1 * tab.sv[j];
      const double V_1 = -t2 * kTwoPi * s1 * tab.sv[j];
      const double V_2 = t2 * c1 * tab.dsv[j];
      const double W = t2 * s1 * tab.sw[j];
      const double W_t = dt2 * s1 * tab.sw[j];
      const double W_1 = t2 * kTwoPi * c1 * tab.sw[j];
      const double W_2 = t2 * s1 * tab.dsw[j];
      const SymTensor2& a = cf.A[k];
      out.U.v[k] = U_t - (a.a11 * V_1 + a.a12 * W_1) -
                   (a.a12 * V_2 + a.a22 * W_2 + sig * U_2) -
                   (cf.b1[k] * V + cf.b2[k] * W);
      out.V.v[k] = V_t - a.a11 * U_1 - (a.a12 * U_2 + sig * V_2);
      out.W.v[k] = W_t - a.a12 * U_1 - (a.a22 * U_2 + sig * W_2);
    }
  }
}

// W stays zero so the incoming characteristic really vanishes at the
// top row and the scheme represents the state exactly.
void PolynomialMms::state(const Grid& g, double t, StateField& out) const {
  if (out.grid() != g) out = StateField(g);
  out.U.fill(0.0);
  out.V.fill(0.25 * t * t);
  out.W.fill(0.0);
}

void PolynomialMms::forcing(const Grid& g, const CoefficientFields& cf,
                            double t, StateField& out) const {
  if (out.grid() != g) out = StateField(g);
  const double v = 0.25 * t * t;
  for (int k = 0; k < g.size(); ++k) {
    out.U.v[k] = -cf.b1[k] * v;
    out.V.v[k] = 0.5 * t;
    out.W.v[k] = 0.0;
  }
}

std::unique_ptr<ManufacturedSolution> make_mms(const std::string& name) {
  if (name == "trig_bump") return std::make_unique<TrigBumpMms>();
  if (name == "polynomial") return std::make_unique<PolynomialMms>();
  throw ValidationError("unknown manufactured case: " + name);
}

MmsRunResult run_mms(const ManufacturedSolution& mms, const GridParams& gp,
                     double cfl, double T, const NumericsParams& numerics,
                     const std::vector<StepHook*>& hooks) {
  const Grid g = gp.make();
  std::vector<SymTensor2> C(g.size(), SymTensor2{1.0, 0.0, 1.0});
  CoefficientFields cf = assemble_coefficients(g, C);
  if (numerics.sigma != 0.0) cf = apply_sigma_perturbation(cf, numerics.sigma);
  const double limit = cfl_dt(cf, cfl);
  const int nsteps = std::max(1, (int)std::ceil(T / limit - 1e-9));

  HyperbolicSolver solver(cf, numerics);
  ForcingFn forcing = [&mms, &g, &cf](const ScalarField&, double t,
                                      StateField& out) {
    mms.forcing(g, cf, t, out);
  };
  MmsRunResult res;
  // studies only need the end state; keep the snapshot footprint minimal
  res.run = run_forced(solver, T, nsteps, forcing, nsteps, hooks);

  StateField exact(g);
  mms.state(g, T, exact);
  const StateField& got = res.run.snapshots.back().V;
  StateField diff(g);
  for (int k = 0; k < g.size(); ++k) {
    diff.U.v[k] = got.U.v[k] - exact.U.v[k];
    diff.V.v[k] = got.V.v[k] - exact.V.v[k];
    diff.W.v[k] = got.W.v[k] - exact.W.v[k];
  }
  res.err_l2 = std::sqrt(energy_l2(diff));
  return res;
}

ConvergenceRecord convergence_study(const ManufacturedSolution& mms,
                                    const std::vector<GridParams>& grids,
                                    double cfl, double T,
                                    const NumericsParams& numerics) {
  if (grids.size() < 3) {
    throw ValidationError("convergence study needs at least three grids");
  }
  ConvergenceRecord rec;
  for (const GridParams& gp : grids) {
    const MmsRunResult r = run_mms(mms, gp, cfl, T, numerics);
    rec.n.push_back(gp.n1);
    rec.h.push_back(gp.make().h2);
    rec.err.push_back(r.err_l2);
  }
  double max_err = 0.0;
  for (double e : rec.err) max_err = std::max(max_err, e);
  if (max_err < 1e-12) {
    rec.fitted = false;  // exactly representable: order fit skipped
    rec.order = 0.0;
    return rec;
  }
  // least-squares slope of log(err) against log(h)
  const int m = static_cast<int>(rec.err.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    const double x = std::log(rec.h[i]);
    const double y = std::log(std::max(rec.err[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rec.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  rec.fitted = true;
  return rec;
}

SigmaStudy sigma_study(const Scenario& s, const std::vector<double>& sigmas) {
  if (sigmas.empty()) throw ValidationError("sigma list is empty");
  for (size_t i = 1; i < sigmas.size(); ++i) {
    if (!(sigmas[i] < sigmas[i - 1]))
      throw ValidationError("sigma list must be strictly descending");
  }
  const ScenarioFields fields = build_fields(s);
  const Grid& g = fields.grid;
  const CoefficientFields base = assemble_coefficients(g, fields.C);

  // one shared step size, stable for the largest perturbation
  const CoefficientFields worst = apply_sigma_perturbation(base, sigmas[0]);
  const double limit = cfl_dt(worst, s.numerics.cfl);
  const int nsteps = std::max(1, (int)std::ceil(s.T / limit - 1e-9));
  const double dt = s.T / nsteps;

  FarfieldProblem fp(g.n1, g.h1, fields.c11_inf, s.P);
  auto far = std::make_shared<const FarfieldTrajectory>(
      farfield_trajectory(fp, fields.u_inf, dt, nsteps));

  auto run_at = [&](double sigma) {
    CoefficientFields cf =
        sigma == 0.0 ? base : apply_sigma_perturbation(base, sigma);
    HyperbolicSolver solver(cf, s.numerics);
    auto fa = std::make_shared<ForcingAssembler>(g, fields, s.P);
    const ForcingFn forcing = make_production_forcing(fa, far);
    RunResult r = run_forced(solver, s.T, nsteps, forcing, nsteps);
    return r.snapshots.back().V;
  };

  std::vector<StateField> states;
  for (double sg : sigmas) states.push_back(run_at(sg));
  const StateField zero_run = run_at(0.0);

  auto diff_norm = [&](const StateField& a, const StateField& b) {
    StateField d(g);
    for (int k = 0; k < g.size(); ++k) {
      d.U.v[k] = a.U.v[k] - b.U.v[k];
      d.V.v[k] = a.V.v[k] - b.V.v[k];
      d.W.v[k] = a.W.v[k] - b.W.v[k];
    }
    return std::sqrt(energy_l2(d));
  };

  SigmaStudy out;
  out.sigmas = sigmas;
  out.dt = dt;
  for (size_t i = 0; i + 1 < states.size(); ++i) {
    out.pairwise.push_back(diff_norm(states[i], states[i + 1]));
  }
  out.zero_diff = diff_norm(zero_run, states.back());
  return out;
}

}  // namespace ucmbl

#include "ucmbl/driver.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "ucmbl/io.hpp"

namespace ucmbl {

ForcingFn make_production_forcing(
    std::shared_ptr<ForcingAssembler> fa,
    std::shared_ptr<const FarfieldTrajectory> far) {
  return [fa, far](const ScalarField& xbar, double t, StateField& out) {
    const double dt = far->dt;
    int k = static_cast<int>(std::lround(t / dt));
    if (k < 0) k = 0;
    if (k > far->nsteps) k = far->nsteps;
    if (std::abs(t - k * dt) > 1e-9 * (1.0 + std::abs(t))) {
      throw Error("forcing requested off the far-field time lattice");
    }
    fa->build_Phi(xbar, far->g[k], far->g_tt[k], far->xdev[k], t, out.U);
    out.V.fill(0.0);
    out.W.fill(0.0);
  };
}

RunOutput execute_run(const Scenario& s) {
  RunOutput out;
  out.scenario = s;
  out.fields = build_fields(s);
  const Grid& g = out.fields.grid;

  CoefficientFields cf = assemble_coefficients(g, out.fields.C);
  if (s.numerics.sigma != 0.0) {
    cf = apply_sigma_perturbation(cf, s.numerics.sigma);
  }
  out.coeffs = cf;

  const double limit = cfl_dt(cf, s.numerics.cfl);
  double dt_req = limit;
  if (s.numerics.dt > 0.0) {
    if (s.numerics.dt > limit * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "configured dt = " << s.numerics.dt
         << " exceeds the CFL limit " << limit;
      throw CflViolationError(os.str());
    }
    dt_req = s.numerics.dt;
  }
  const int nsteps = std::max(1, (int)std::ceil(s.T / dt_req - 1e-9));
  const double dt = s.T / nsteps;

  FarfieldProblem fp(g.n1, g.h1, out.fields.c11_inf, s.P);
  auto far = std::make_shared<const FarfieldTrajectory>(
      farfield_trajectory(fp, out.fields.u_inf, dt, nsteps));
  out.farfield = far;
  auto fa = std::make_shared<ForcingAssembler>(g, out.fields, s.P);
  const ForcingFn forcing = make_production_forcing(fa, far);

  HyperbolicSolver solver(cf, s.numerics);
  DiagnosticsMonitor monitor(solver.coeffs(), dt);
  out.run = run_forced(solver, s.T, nsteps, forcing,
                       s.numerics.snapshot_stride, {&monitor});
  monitor.finalize();
  out.diag = monitor.records();
  out.gk = monitor.constants();

  ScalarField Y(g), Ytt(g);
  for (const SolverState& snap : out.run.snapshots) {
    const int k = snap.step_index;
    build_Y(g, far->g[k], far->g_tt[k], out.fields.u0, out.fields.u_inf,
            snap.t, Y, Ytt);
    MapSnapshot mp;
    mp.t = snap.t;
    mp.xdev = recover_x_dev(snap.xbar, Y, far->xdev[k]);
    mp.ydev = recover_y(mp.xdev);
    const DeformationField F = deformation_gradient(mp.xdev, mp.ydev);
    out.detf.push_back(F.max_det_err);
    out.stress.push_back(recover_stress(F, out.fields.C));
    out.maps.push_back(std::move(mp));
  }
  if (out.maps.size() >= 3) {
    recover_velocities(out.maps, out.u, out.v);
  } else {
    out.u.assign(out.maps.size(), ScalarField(g));
    out.v.assign(out.maps.size(), ScalarField(g));
  }

  // fold snapshot map quality into the per-step records (carry forward)
  size_t si = 0;
  double cur = 0.0;
  for (auto& r : out.diag) {
    while (si < out.run.snapshots.size() &&
           out.run.snapshots[si].step_index <= r.step) {
      cur = out.detf[si];
      ++si;
    }
    r.detF_err = cur;
  }
  return out;
}

void write_run_output(const RunOutput& out, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  write_text_file(out_dir + "/scenario.cfg", serialize_config(out.scenario));
  const Grid& g = out.fields.grid;
  for (size_t si = 0; si < out.run.snapshots.size(); ++si) {
    const SolverState& snap = out.run.snapshots[si];
    char name[32];
    std::snprintf(name, sizeof(name), "snap_%06d.csv", snap.step_index);
    write_snapshot_csv(out_dir + "/" + name, g, snap.V, snap.xbar,
                       out.maps[si], out.u[si], out.v[si], out.stress[si]);
  }
  write_diagnostics_csv(out_dir + "/diagnostics.csv", out.diag);

  std::ostringstream sum;
  sum << "scenario = " << out.scenario.name << "\n";
  sum << "dt = " << format_full(out.run.dt) << "\n";
  sum << "steps = " << out.run.nsteps << "\n";
  sum << "achieved_T = " << format_full(out.run.achieved_T) << "\n";
  sum << "blew_up = " << (out.run.blew_up ? 1 : 0) << "\n";
  sum << "c0 = " << format_full(out.coeffs.c0) << "\n";
  sum << "min_lambda = " << format_full(out.coeffs.min_lambda) << "\n";
  sum << "K0 = " << format_full(out.gk.K0) << "\n";
  sum << "K1br = " << format_full(out.gk.K1br) << "\n";
  sum << "KB1 = " << format_full(out.gk.KB1) << "\n";
  sum << "KA2x = " << format_full(out.gk.KA2x) << "\n";
  if (!out.diag.empty()) {
    const DiagnosticsRecord& last = out.diag.back();
    sum << "final_E0 = " << format_full(last.E0) << "\n";
    sum << "final_E1 = " << format_full(last.E1) << "\n";
  }
  double max_flux = 0.0, max_detf = 0.0;
  bool gron = true;
  for (const auto& r : out.diag) {
    max_flux = std::max(max_flux, std::abs(r.wall_flux));
    gron = gron && r.gronwall_ok;
  }
  for (double d : out.detf) max_detf = std::max(max_detf, d);
  sum << "max_wall_flux = " << format_full(max_flux) << "\n";
  sum << "max_detF_err = " << format_full(max_detf) << "\n";
  sum << "gronwall_all_ok = " << (gron ? 1 : 0) << "\n";
  write_text_file(out_dir + "/summary.txt", sum.str());
}

VerifyReport verify_scenario(const Scenario& s) {
  VerifyReport rep;
  auto add = [&rep](const std::string& name, bool ok,
                    const std::string& detail) {
    rep.checks.push_back({name, ok, detail});
  };

  const RunOutput out = execute_run(s);
  const Grid& g = out.fields.grid;
  const CoefficientFields& cf = out.coeffs;

  {
    double sqrt_res = 0.0;
    bool psd_ok = true;
    for (int k = 0; k < g.size(); ++k) {
      const SymTensor2& a = cf.A[k];
      const SymTensor2& c = out.fields.C[k];
      sqrt_res = std::max(
          {sqrt_res,
           std::abs(a.a11 * a.a11 + a.a12 * a.a12 - c.a11),
           std::abs(a.a11 * a.a12 + a.a12 * a.a22 - c.a12),
           std::abs(a.a12 * a.a12 + a.a22 * a.a22 - c.a22)});
      psd_ok = psd_ok && is_psd(a);
    }
    std::ostringstream os;
    os << "max |A.A - C| = " << sqrt_res;
    add("square root reproduces C", sqrt_res <= 1e-12 && psd_ok, os.str());
  }
  {
    std::ostringstream os;
    os << "c0 = " << cf.c0 << ", min lambda = " << cf.min_lambda;
    add("wall-normal speed bounded away from zero",
        cf.c0 > 0.0 && cf.min_lambda >= cf.c0 - 1e-15, os.str());
  }
  {
    double asym = 0.0, reasm = 0.0, det_id = 0.0;
    for (int k = 0; k < g.size(); ++k) {
      const Mat3 a1 = cf.a1_at(k), a2 = cf.a2_at(k);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          asym = std::max(asym, std::abs(a1(r, c) - a1(c, r)));
          asym = std::max(asym, std::abs(a2(r, c) - a2(c, r)));
        }
      const NormalFluxEigen e = diagonalize_normal_flux(cf.A[k]);
      const Mat3 re = matmul(
          matmul(e.rotation, diag3(e.eigenvalues[0] + cf.sigma,
                                   e.eigenvalues[1] + cf.sigma,
                                   e.eigenvalues[2] + cf.sigma)),
          transpose(e.rotation));
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          reasm = std::max(reasm, std::abs(re(r, c) - a2(r, c)));
      const SymTensor2& a = cf.A[k];
      det_id = std::max(det_id,
                        std::abs(a.a22 * a.a22 + a.a12 * a.a12 -
                                 cf.lambda[k] * cf.lambda[k]));
    }
    std::ostringstream os;
    os << "max asymmetry = " << asym << ", max reassembly = " << reasm
       << ", max |a22^2+a12^2-lambda^2| = " << det_id;
    add("flux matrices symmetric, diagonalization consistent",
        asym == 0.0 && reasm <= 1e-12 && det_id <= 1e-12, os.str());
  }
  {
    double max_flux = 0.0;
    for (const auto& r : out.diag)
      max_flux = std::max(max_flux, std::abs(r.wall_flux));
    std::ostringstream os;
    os << "max |wall flux| = " << max_flux;
    add("wall flux vanishes on every accepted step",
        cf.sigma != 0.0 || max_flux <= 1e-12, os.str());
  }
  {
    bool gron = true;
    for (const auto& r : out.diag) gron = gron && r.gronwall_ok;
    add("estimate-form bounds hold at every step", gron, "");
  }
  {
    // displacement bookkeeping: centered difference of xbar across
    // snapshots against U at the middle snapshot
    bool ok = true;
    double worst = 0.0, tol = 0.0;
    if (out.run.snapshots.size() >= 3) {
      const auto& a = out.run.snapshots[0];
      const auto& b = out.run.snapshots[1];
      const auto& c = out.run.snapshots[2];
      double w[3];
      time_deriv_weights(a.t, b.t, c.t, b.t, w);
      double max_u = linf_norm(b.V.U);
      for (int k = 0; k < g.size(); ++k) {
        const double est =
            w[0] * a.xbar.v[k] + w[1] * b.xbar.v[k] + w[2] * c.xbar.v[k];
        worst = std::max(worst, std::abs(est - b.V.U.v[k]));
      }
      const double span = std::max(c.t - b.t, b.t - a.t);
      tol = std::max(1e-10, 20.0 * span * span * std::max(1e-3, max_u));
      ok = worst <= tol;
    }
    std::ostringstream os;
    os << "max |d(xbar)/dt - U| = " << worst << " (tol " << tol << ")";
    add("displacement integral tracks U", ok, os.str());
  }
  {
    double max_detf = 0.0;
    for (double d : out.detf) max_detf = std::max(max_detf, d);
    std::ostringstream os;
    os << "max |det F - 1| = " << max_detf;
    add("map stays incompressible", max_detf <= 0.05, os.str());
  }
  {
    double max_res = 0.0;
    for (const auto& m : out.maps)
      max_res = std::max(max_res, linf_norm(jacobian_residual(m.xdev, m.ydev)));
    std::ostringstream os;
    os << "max transport residual = " << max_res;
    add("y-march satisfies the Jacobian identity", max_res <= 0.01, os.str());
  }
  {
    double max_res = 0.0;
    bool has = false;
    for (const auto& r : out.diag)
      if (std::isfinite(r.normal_res)) {
        max_res = std::max(max_res, r.normal_res);
        has = true;
      }
    std::ostringstream os;
    os << "max |recovered - direct| = " << max_res;
    add("normal-derivative recovery consistent",
        !has || max_res <= 10.0 * (g.h2 + out.run.dt), os.str());
  }
  return rep;
}

}  // namespace ucmbl

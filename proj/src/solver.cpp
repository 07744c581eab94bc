#include "ucmbl/solver.hpp"

#include <cmath>
#include <sstream>

namespace ucmbl {

namespace {
constexpr double kSpeedTol = 1e-12;
}

HyperbolicSolver::HyperbolicSolver(CoefficientFields coeffs,
                                   NumericsParams numerics)
    : coeffs_(std::move(coeffs)),
      numerics_(numerics),
      k1_(coeffs_.grid),
      k2_(coeffs_.grid),
      vstar_(coeffs_.grid),
      vnew_(coeffs_.grid),
      f0_(coeffs_.grid),
      f1_(coeffs_.grid),
      xbar_star_(coeffs_.grid) {
  const Grid& g = coeffs_.grid;
  r_top_.resize(g.n1);
  for (int i = 0; i < g.n1; ++i) {
    r_top_[i] =
        diagonalize_normal_flux(coeffs_.A[g.idx(i, g.n2 - 1)]).rotation;
  }
  ip1_.resize(g.n1);
  im1_.resize(g.n1);
  ip2_.resize(g.n1);
  im2_.resize(g.n1);
  for (int i = 0; i < g.n1; ++i) {
    ip1_[i] = (i + 1) % g.n1;
    im1_[i] = (i + g.n1 - 1) % g.n1;
    ip2_[i] = (i + 2) % g.n1;
    im2_[i] = (i + g.n1 - 2) % g.n1;
  }
}

void HyperbolicSolver::set_dt(double dt) {
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  dt_ = dt;
}

void HyperbolicSolver::rhs(const StateField& s, const StateField& forcing,
                           StateField& out) const {
  const Grid& g = coeffs_.grid;
  const int n1 = g.n1, n2 = g.n2;
  const double i2h1 = 1.0 / (2.0 * g.h1);
  const double i2h2 = 1.0 / (2.0 * g.h2);
  const double sig = coeffs_.sigma;
  const double ko = (numerics_.ko_eps > 0.0 && dt_ > 0.0)
                        ? numerics_.ko_eps / (16.0 * dt_)
                        : 0.0;

  const double* U = s.U.v.data();
  const double* V = s.V.v.data();
  const double* W = s.W.v.data();
  double* oU = out.U.v.data();
  double* oV = out.V.v.data();
  double* oW = out.W.v.data();

  for (int j = 0; j < n2; ++j) {
    const int base = j * n1;
    // xi2 stencil for this row: 0 = one-sided up, 1 = centered,
    // 2 = one-sided down
    const int mode = (j == 0) ? 0 : (j == n2 - 1) ? 2 : 1;
    const bool ko2 = ko > 0.0 && j >= 2 && j <= n2 - 3;
    for (int i = 0; i < n1; ++i) {
      const int k = base + i;
      const int kp = base + ip1_[i];
      const int km = base + im1_[i];

      const double dU1 = (U[kp] - U[km]) * i2h1;
      const double dV1 = (V[kp] - V[km]) * i2h1;
      const double dW1 = (W[kp] - W[km]) * i2h1;

      double dU2, dV2, dW2;
      if (mode == 1) {
        dU2 = (U[k + n1] - U[k - n1]) * i2h2;
        dV2 = (V[k + n1] - V[k - n1]) * i2h2;
        dW2 = (W[k + n1] - W[k - n1]) * i2h2;
      } else if (mode == 0) {
        dU2 = (-3.0 * U[k] + 4.0 * U[k + n1] - U[k + 2 * n1]) * i2h2;
        dV2 = (-3.0 * V[k] + 4.0 * V[k + n1] - V[k + 2 * n1]) * i2h2;
        dW2 = (-3.0 * W[k] + 4.0 * W[k + n1] - W[k + 2 * n1]) * i2h2;
      } else {
        dU2 = (3.0 * U[k] - 4.0 * U[k - n1] + U[k - 2 * n1]) * i2h2;
        dV2 = (3.0 * V[k] - 4.0 * V[k - n1] + V[k - 2 * n1]) * i2h2;
        dW2 = (3.0 * W[k] - 4.0 * W[k - n1] + W[k - 2 * n1]) * i2h2;
      }

      const SymTensor2& a = coeffs_.A[k];
      double rU = a.a11 * dV1 + a.a12 * dW1 + a.a12 * dV2 + a.a22 * dW2 +
                  sig * dU2 + coeffs_.b1[k] * V[k] + coeffs_.b2[k] * W[k] +
                  forcing.U.v[k];
      double rV = a.a11 * dU1 + a.a12 * dU2 + sig * dV2 + forcing.V.v[k];
      double rW = a.a12 * dU1 + a.a22 * dU2 + sig * dW2 + forcing.W.v[k];

      if (ko > 0.0) {
        const int kp2 = base + ip2_[i];
        const int km2 = base + im2_[i];
        rU -= ko * (U[km2] - 4.0 * U[km] + 6.0 * U[k] - 4.0 * U[kp] + U[kp2]);
        rV -= ko * (V[km2] - 4.0 * V[km] + 6.0 * V[k] - 4.0 * V[kp] + V[kp2]);
        rW -= ko * (W[km2] - 4.0 * W[km] + 6.0 * W[k] - 4.0 * W[kp] + W[kp2]);
        if (ko2) {
          const int u2 = k + 2 * n1, d2 = k - 2 * n1;
          const int u1 = k + n1, d1 = k - n1;
          rU -= ko * (U[d2] - 4.0 * U[d1] + 6.0 * U[k] - 4.0 * U[u1] + U[u2]);
          rV -= ko * (V[d2] - 4.0 * V[d1] + 6.0 * V[k] - 4.0 * V[u1] + V[u2]);
          rW -= ko * (W[d2] - 4.0 * W[d1] + 6.0 * W[k] - 4.0 * W[u1] + W[u2]);
        }
      }

      oU[k] = rU;
      oV[k] = rV;
      oW[k] = rW;
    }
  }
}

void HyperbolicSolver::apply_boundaries(StateField& s) const {
  const Grid& g = coeffs_.grid;
  const int n1 = g.n1, n2 = g.n2;
  for (int i = 0; i < n1; ++i) s.U.v[i] = 0.0;

  const int kt = g.idx(0, n2 - 1);
  const int kb = g.idx(0, n2 - 2);
  for (int i = 0; i < n1; ++i) {
    const Mat3& R = r_top_[i];
    const double vt[3] = {s.U.v[kt + i], s.V.v[kt + i], s.W.v[kt + i]};
    const double vb[3] = {s.U.v[kb + i], s.V.v[kb + i], s.W.v[kb + i]};
    double wt[3], wb[3];
    for (int c = 0; c < 3; ++c) {
      wt[c] = R(0, c) * vt[0] + R(1, c) * vt[1] + R(2, c) * vt[2];
      wb[c] = R(0, c) * vb[0] + R(1, c) * vb[1] + R(2, c) * vb[2];
    }
    const double lam = coeffs_.lambda[kt + i];
    const double eig[3] = {-lam + coeffs_.sigma, coeffs_.sigma,
                           lam + coeffs_.sigma};
    for (int c = 0; c < 3; ++c) {
      if (eig[c] > kSpeedTol) {
        wt[c] = 0.0;  // incoming from above: far-field decay
      } else if (eig[c] < -kSpeedTol) {
        wt[c] = wb[c];  // outgoing: first-order extrapolation
      }
    }
    s.U.v[kt + i] = R(0, 0) * wt[0] + R(0, 1) * wt[1] + R(0, 2) * wt[2];
    s.V.v[kt + i] = R(1, 0) * wt[0] + R(1, 1) * wt[1] + R(1, 2) * wt[2];
    s.W.v[kt + i] = R(2, 0) * wt[0] + R(2, 1) * wt[1] + R(2, 2) * wt[2];
  }
}

void HyperbolicSolver::step(SolverState& st, const ForcingFn& forcing) {
  if (!(dt_ > 0.0)) throw ValidationError("set_dt before stepping");
  const Grid& g = coeffs_.grid;
  const int n = g.size();
  const double dt = dt_;

  forcing(st.xbar, st.t, f0_);
  rhs(st.V, f0_, k1_);
  for (int k = 0; k < n; ++k) {
    vstar_.U.v[k] = st.V.U.v[k] + dt * k1_.U.v[k];
    vstar_.V.v[k] = st.V.V.v[k] + dt * k1_.V.v[k];
    vstar_.W.v[k] = st.V.W.v[k] + dt * k1_.W.v[k];
    xbar_star_.v[k] = st.xbar.v[k] + dt * st.V.U.v[k];
  }
  apply_boundaries(vstar_);

  forcing(xbar_star_, st.t + dt, f1_);
  rhs(vstar_, f1_, k2_);
  for (int k = 0; k < n; ++k) {
    vnew_.U.v[k] = st.V.U.v[k] + 0.5 * dt * (k1_.U.v[k] + k2_.U.v[k]);
    vnew_.V.v[k] = st.V.V.v[k] + 0.5 * dt * (k1_.V.v[k] + k2_.V.v[k]);
    vnew_.W.v[k] = st.V.W.v[k] + 0.5 * dt * (k1_.W.v[k] + k2_.W.v[k]);
  }
  apply_boundaries(vnew_);
  ScalarField xbar_new = st.xbar;
  for (int k = 0; k < n; ++k)
    xbar_new.v[k] += 0.5 * dt * (st.V.U.v[k] + vstar_.U.v[k]);

  // Optional fixed-point refresh of the semilinear forcing, using the
  // corrected displacement in the trapezoid.
  for (int it = 0; it < numerics_.picard_iters; ++it) {
    for (int k = 0; k < n; ++k)
      xbar_new.v[k] =
          st.xbar.v[k] + 0.5 * dt * (st.V.U.v[k] + vnew_.U.v[k]);
    forcing(xbar_new, st.t + dt, f1_);
    rhs(vstar_, f1_, k2_);
    double delta = 0.0;
    for (int k = 0; k < n; ++k) {
      const double u = st.V.U.v[k] + 0.5 * dt * (k1_.U.v[k] + k2_.U.v[k]);
      const double v = st.V.V.v[k] + 0.5 * dt * (k1_.V.v[k] + k2_.V.v[k]);
      const double w = st.V.W.v[k] + 0.5 * dt * (k1_.W.v[k] + k2_.W.v[k]);
      delta = std::max({delta, std::abs(u - vnew_.U.v[k]),
                        std::abs(v - vnew_.V.v[k]),
                        std::abs(w - vnew_.W.v[k])});
      vnew_.U.v[k] = u;
      vnew_.V.v[k] = v;
      vnew_.W.v[k] = w;
    }
    apply_boundaries(vnew_);
    if (delta < 1e-10) break;
  }
  if (numerics_.picard_iters > 0) {
    for (int k = 0; k < n; ++k)
      xbar_new.v[k] =
          st.xbar.v[k] + 0.5 * dt * (st.V.U.v[k] + vnew_.U.v[k]);
  }

  st.V = vnew_;
  st.xbar = xbar_new;
  st.t += dt;
  ++st.step_index;

  if (!all_finite(st.V)) {
    std::ostringstream os;
    os << "state left the finite range at step " << st.step_index
       << ", t = " << st.t;
    throw NonFiniteStateError(os.str());
  }
}

RunResult run_forced(HyperbolicSolver& solver, double T, int nsteps,
                     const ForcingFn& forcing, int snapshot_stride,
                     const std::vector<StepHook*>& hooks) {
  if (nsteps < 1) throw ValidationError("nsteps must be >= 1");
  const Grid& g = solver.coeffs().grid;
  const double dt = T / nsteps;
  solver.set_dt(dt);

  RunResult res;
  res.dt = dt;
  res.nsteps = nsteps;

  SolverState st(g);
  StateField frow(g);
  auto notify = [&](const SolverState& s) {
    if (hooks.empty()) return;
    forcing(s.xbar, s.t, frow);
    for (StepHook* h : hooks) h->on_step(s, frow);
  };

  res.snapshots.push_back(st);
  notify(st);
  for (int n = 0; n < nsteps; ++n) {
    try {
      solver.step(st, forcing);
    } catch (const NonFiniteStateError&) {
      res.blew_up = true;
      break;
    }
    notify(st);
    if (st.step_index % snapshot_stride == 0 || st.step_index == nsteps) {
      res.snapshots.push_back(st);
    }
  }
  res.achieved_T = st.t;
  return res;
}

}  // namespace ucmbl

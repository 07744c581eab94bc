#include "ucmbl/diagnostics.hpp"

#include <cmath>
#include <limits>

namespace ucmbl {

double energy_l2(const StateField& s) {
  return inner(s.U, s.U) + inner(s.V, s.V) + inner(s.W, s.W);
}

double wall_flux(const StateField& s, const CoefficientFields& cf) {
  const Grid& g = cf.grid;
  double sum = 0.0;
  for (int i = 0; i < g.n1; ++i) {
    const int k = g.idx(i, 0);
    const SymTensor2& a = cf.A[k];
    const double u = s.U.v[k], v = s.V.v[k], w = s.W.v[k];
    sum += 2.0 * u * (a.a12 * v + a.a22 * w) +
           cf.sigma * (u * u + v * v + w * w);
  }
  return sum * g.h1;
}

GronwallConstants gronwall_constants(const CoefficientFields& cf) {
  const Grid& g = cf.grid;
  ScalarField a11(g), a12(g), a22(g), b1f(g), b2f(g);
  for (int k = 0; k < g.size(); ++k) {
    a11.v[k] = cf.A[k].a11;
    a12.v[k] = cf.A[k].a12;
    a22.v[k] = cf.A[k].a22;
    b1f.v[k] = cf.b1[k];
    b2f.v[k] = cf.b2[k];
  }
  const ScalarField d1a11 = d_xi1(a11), d1a12 = d_xi1(a12),
                    d1a22 = d_xi1(a22);
  const ScalarField d2a12 = d_xi2(a12), d2a22 = d_xi2(a22);
  const ScalarField d1b1 = d_xi1(b1f), d1b2 = d_xi1(b2f);
  GronwallConstants k;
  // all four matrices have the arrow pattern [[0,p,q],[p,0,0],[q,0,0]],
  // whose spectral norm is hypot(p, q)
  for (int n = 0; n < g.size(); ++n) {
    k.K0 = std::max(k.K0, std::hypot(cf.b1[n] - d1a11.v[n] - d2a12.v[n],
                                     cf.b2[n] - d1a12.v[n] - d2a22.v[n]));
    k.K1br = std::max(k.K1br, std::hypot(d1a11.v[n] - d2a12.v[n] + cf.b1[n],
                                         d1a12.v[n] - d2a22.v[n] + cf.b2[n]));
    k.KB1 = std::max(k.KB1, std::hypot(d1b1.v[n], d1b2.v[n]));
    k.KA2x = std::max(k.KA2x, std::hypot(d1a12.v[n], d1a22.v[n]));
  }
  return k;
}

DiagnosticsMonitor::DiagnosticsMonitor(const CoefficientFields& cf, double dt)
    : cf_(&cf), dt_(dt), gk_(gronwall_constants(cf)) {
  const Grid& g = cf.grid;
  sigma_mode_ = cf.sigma != 0.0;
  ScalarField a11(g), a12(g), a22(g);
  for (int k = 0; k < g.size(); ++k) {
    a11.v[k] = cf.A[k].a11;
    a12.v[k] = cf.A[k].a12;
    a22.v[k] = cf.A[k].a22;
  }
  d1a11_ = d_xi1(a11);
  d2a11_ = d_xi2(a11);
  d1a12_ = d_xi1(a12);
  d2a12_ = d_xi2(a12);
  d1a22_ = d_xi1(a22);
  d2a22_ = d_xi2(a22);
  alpha_ = ScalarField(g);
  beta_ = ScalarField(g);
  for (int k = 0; k < g.size(); ++k) {
    const SymTensor2& a = cf.A[k];
    alpha_.v[k] = a.a12 * d1a11_.v[k] + a.a22 * d2a11_.v[k] -
                  a.a11 * d1a12_.v[k] - a.a12 * d2a12_.v[k];
    beta_.v[k] = a.a12 * d1a12_.v[k] + a.a22 * d2a12_.v[k] -
                 a.a11 * d1a22_.v[k] - a.a12 * d2a22_.v[k];
  }
  integral_F_ = ScalarField(g);
  q_prev_ = ScalarField(g);
}

void DiagnosticsMonitor::accumulate_integral(const StateField& V,
                                             const StateField& f) {
  const Grid& g = cf_->grid;
  ScalarField q = d_xi1(V.U);  // U_xi1
  const bool fvw = linf_norm(f.V) > 0.0 || linf_norm(f.W) > 0.0;
  ScalarField d1fv, d2fv, d1fw, d2fw;
  if (fvw) {
    d1fv = d_xi1(f.V);
    d2fv = d_xi2(f.V);
    d1fw = d_xi1(f.W);
    d2fw = d_xi2(f.W);
  }
  for (int k = 0; k < g.size(); ++k) {
    const SymTensor2& a = cf_->A[k];
    double val = (alpha_.v[k] - beta_.v[k] * a.a12 / a.a22) * q.v[k];
    if (fvw) {
      val += -(beta_.v[k] / a.a22) * f.W.v[k] + a.a22 * d2fv.v[k] -
             a.a12 * d2fw.v[k] + a.a12 * d1fv.v[k] - a.a11 * d1fw.v[k];
    }
    q.v[k] = val;
  }
  if (have_q_prev_) {
    for (int k = 0; k < g.size(); ++k)
      integral_F_.v[k] += 0.5 * dt_ * (q_prev_.v[k] + q.v[k]);
  }
  q_prev_ = q;
  have_q_prev_ = true;
}

NormalRecovery DiagnosticsMonitor::recover_normal(
    const StateField& V, const StateField& f, const ScalarField& u_t,
    const ScalarField& w_t, const ScalarField& integral_F) const {
  const Grid& g = cf_->grid;
  NormalRecovery out;
  out.u_xi2 = ScalarField(g);
  out.v_xi2 = ScalarField(g);
  out.w_xi2 = ScalarField(g);
  const ScalarField u1 = d_xi1(V.U), v1 = d_xi1(V.V), w1 = d_xi1(V.W);
  for (int k = 0; k < g.size(); ++k) {
    const SymTensor2& a = cf_->A[k];
    out.u_xi2.v[k] = (w_t.v[k] - f.W.v[k] - a.a12 * u1.v[k]) / a.a22;
    const double rhs14 = integral_F.v[k] +
                         (beta_.v[k] / a.a22) * V.W.v[k] -
                         a.a12 * v1.v[k] + a.a11 * w1.v[k];
    const double rhs15 = u_t.v[k] - f.U.v[k] - a.a11 * v1.v[k] -
                         a.a12 * w1.v[k] - cf_->b1[k] * V.V.v[k] -
                         cf_->b2[k] * V.W.v[k];
    const double det = a.a22 * a.a22 + a.a12 * a.a12;
    out.v_xi2.v[k] = (a.a22 * rhs14 + a.a12 * rhs15) / det;
    out.w_xi2.v[k] = (-a.a12 * rhs14 + a.a22 * rhs15) / det;
  }
  const ScalarField du = d_xi2(V.U), dv = d_xi2(V.V), dw = d_xi2(V.W);
  double res = 0.0;
  for (int k = 0; k < g.size(); ++k) {
    res = std::max({res, std::abs(out.u_xi2.v[k] - du.v[k]),
                    std::abs(out.v_xi2.v[k] - dv.v[k]),
                    std::abs(out.w_xi2.v[k] - dw.v[k])});
  }
  out.residual = res;
  out.e2 = inner(out.u_xi2, out.u_xi2) + inner(out.v_xi2, out.v_xi2) +
           inner(out.w_xi2, out.w_xi2);
  return out;
}

void DiagnosticsMonitor::on_step(const SolverState& state,
                                 const StateField& forcing) {
  const int n = state.step_index;
  DiagnosticsRecord rec;
  rec.step = n;
  rec.t = state.t;
  rec.E0 = energy_l2(state.V);
  const ScalarField u1 = d_xi1(state.V.U), v1 = d_xi1(state.V.V),
                    w1 = d_xi1(state.V.W);
  rec.E1 = inner(u1, u1) + inner(v1, v1) + inner(w1, w1);
  rec.wall_flux = wall_flux(state.V, *cf_);
  rec.phi_norm2 = energy_l2(forcing);
  records_.push_back(rec);
  {
    const ScalarField fu1 = d_xi1(forcing.U), fv1 = d_xi1(forcing.V),
                      fw1 = d_xi1(forcing.W);
    phi_x_norm2_.push_back(inner(fu1, fu1) + inner(fv1, fv1) +
                           inner(fw1, fw1));
  }
  phi_t_norm2_.push_back(0.0);

  win_.push_back(state);
  fwin_.push_back(forcing);
  if (static_cast<int>(win_.size()) > 3) {
    win_.erase(win_.begin());
    fwin_.erase(fwin_.begin());
  }

  if (win_.size() == 3) {
    emit_pending(false);
  }
  accumulate_integral(state.V, forcing);
}

void DiagnosticsMonitor::emit_pending(bool last) {
  // With rows (m-2, m-1, m) in the window, complete row m-1 (or row m
  // when finishing). Row 0, the zero initial state, has exactly zero
  // normal derivatives; only its Et needs the one-sided estimate.
  const Grid& g = cf_->grid;
  const SolverState& s0 = win_[0];
  const SolverState& s1 = win_[1];
  const SolverState& s2 = win_[2];
  const double t0 = s0.t, t1 = s1.t, t2 = s2.t;

  auto state_deriv = [&](double at, StateField& out) {
    double w[3];
    time_deriv_weights(t0, t1, t2, at, w);
    out = StateField(g);
    for (int k = 0; k < g.size(); ++k) {
      out.U.v[k] = w[0] * s0.V.U.v[k] + w[1] * s1.V.U.v[k] +
                   w[2] * s2.V.U.v[k];
      out.V.v[k] = w[0] * s0.V.V.v[k] + w[1] * s1.V.V.v[k] +
                   w[2] * s2.V.V.v[k];
      out.W.v[k] = w[0] * s0.V.W.v[k] + w[1] * s1.V.W.v[k] +
                   w[2] * s2.V.W.v[k];
    }
  };
  auto forcing_t_norm2 = [&](double at) {
    double w[3];
    time_deriv_weights(t0, t1, t2, at, w);
    double sum = 0.0;
    const StateField* fs[3] = {&fwin_[0], &fwin_[1], &fwin_[2]};
    ScalarField tmp(g);
    for (const ScalarField StateField::*comp :
         {&StateField::U, &StateField::V, &StateField::W}) {
      for (int k = 0; k < g.size(); ++k) {
        tmp.v[k] = w[0] * (fs[0]->*comp).v[k] + w[1] * (fs[1]->*comp).v[k] +
                   w[2] * (fs[2]->*comp).v[k];
      }
      sum += inner(tmp, tmp);
    }
    return sum;
  };

  StateField vt;
  if (!last) {
    const int row = s1.step_index;
    state_deriv(t1, vt);
    records_[row].Et = energy_l2(vt);
    phi_t_norm2_[row] = forcing_t_norm2(t1);
    if (row == 1 && records_.size() >= 1) {
      // first window also completes row 0
      StateField vt0;
      state_deriv(t0, vt0);
      records_[0].Et = energy_l2(vt0);
      phi_t_norm2_[0] = forcing_t_norm2(t0);
      records_[0].E2rec = 0.0;
      records_[0].normal_res = 0.0;
    }
    if (sigma_mode_) {
      const ScalarField du = d_xi2(s1.V.U), dv = d_xi2(s1.V.V),
                        dw = d_xi2(s1.V.W);
      records_[row].E2rec =
          inner(du, du) + inner(dv, dv) + inner(dw, dw);
      records_[row].normal_res = std::numeric_limits<double>::quiet_NaN();
    } else {
      NormalRecovery nr =
          recover_normal(s1.V, fwin_[1], vt.U, vt.W, integral_F_);
      records_[row].E2rec = nr.e2;
      records_[row].normal_res = nr.residual;
    }
  } else {
    const int row = s2.step_index;
    state_deriv(t2, vt);
    records_[row].Et = energy_l2(vt);
    phi_t_norm2_[row] = forcing_t_norm2(t2);
    if (sigma_mode_) {
      const ScalarField du = d_xi2(s2.V.U), dv = d_xi2(s2.V.V),
                        dw = d_xi2(s2.V.W);
      records_[row].E2rec =
          inner(du, du) + inner(dv, dv) + inner(dw, dw);
      records_[row].normal_res = std::numeric_limits<double>::quiet_NaN();
    } else {
      NormalRecovery nr =
          recover_normal(s2.V, fwin_[2], vt.U, vt.W, integral_F_);
      records_[row].E2rec = nr.e2;
      records_[row].normal_res = nr.residual;
    }
  }
}

void DiagnosticsMonitor::finalize() {
  if (finalized_) return;
  finalized_ = true;
  if (win_.size() == 3) {
    emit_pending(true);
  } else if (!records_.empty()) {
    // runs of fewer than three steps: no time derivatives available
    for (auto& r : records_) {
      r.Et = 0.0;
      r.E2rec = 0.0;
      r.normal_res = 0.0;
    }
  }

  // Estimate-form bounds (one-sided checks, 5% tolerance):
  //   E0(t) <= exp((K0+1) t) (E0(0) + int ||Phi||^2),
  //   Et(t) <= exp((K0+1) t) (Et(0) + int ||Phi_t||^2),
  //   E1(t) <= exp(KH t) (E1(0) + int (KB1 E0 + KA2x E2 + ||Phi_xi1||^2)),
  // with KH = K1br + KB1 + KA2x + 1; the +1 terms absorb the forcing
  // inner products by Cauchy-Schwarz.
  const double k0 = gk_.K0 + 1.0;
  const double kh = gk_.K1br + gk_.KB1 + gk_.KA2x + 1.0;
  const double e00 = records_.empty() ? 0.0 : records_[0].E0;
  const double et0 = records_.empty() ? 0.0 : records_[0].Et;
  const double e10 = records_.empty() ? 0.0 : records_[0].E1;
  double i0 = 0.0, it = 0.0, i1 = 0.0;
  for (size_t n = 0; n < records_.size(); ++n) {
    DiagnosticsRecord& r = records_[n];
    if (n > 0) {
      const DiagnosticsRecord& p = records_[n - 1];
      i0 += 0.5 * dt_ * (p.phi_norm2 + r.phi_norm2);
      it += 0.5 * dt_ * (phi_t_norm2_[n - 1] + phi_t_norm2_[n]);
      const double qp = gk_.KB1 * p.E0 + gk_.KA2x * p.E2rec +
                        phi_x_norm2_[n - 1];
      const double qc = gk_.KB1 * r.E0 + gk_.KA2x * r.E2rec +
                        phi_x_norm2_[n];
      i1 += 0.5 * dt_ * (qp + qc);
    }
    r.bound0 = std::exp(k0 * r.t) * (e00 + i0);
    r.boundt = std::exp(k0 * r.t) * (et0 + it);
    r.bound1 = std::exp(kh * r.t) * (e10 + i1);
    r.gronwall_ok = r.E0 <= 1.05 * r.bound0 + 1e-12 &&
                    r.Et <= 1.05 * r.boundt + 1e-12 &&
                    r.E1 <= 1.05 * r.bound1 + 1e-12;
  }
}

bool DiagnosticsMonitor::all_gronwall_ok() const {
  for (const auto& r : records_)
    if (!r.gronwall_ok) return false;
  return true;
}

double DiagnosticsMonitor::max_wall_flux() const {
  double m = 0.0;
  for (const auto& r : records_) m = std::max(m, std::abs(r.wall_flux));
  return m;
}

double DiagnosticsMonitor::max_normal_residual() const {
  double m = 0.0;
  for (const auto& r : records_)
    if (std::isfinite(r.normal_res)) m = std::max(m, r.normal_res);
  return m;
}

EulerianResidual eulerian_residual(const std::vector<MapSnapshot>& maps,
                                   int snap_index,
                                   const std::vector<SymTensor2>& C,
                                   const ProfileSpec& P) {
  const int m = static_cast<int>(maps.size());
  if (m < 3 || snap_index < 1 || snap_index > m - 2) {
    throw InsufficientSnapshotsError(
        "physical-space residuals need an interior snapshot");
  }
  const MapSnapshot& s0 = maps[snap_index - 1];
  const MapSnapshot& s1 = maps[snap_index];
  const MapSnapshot& s2 = maps[snap_index + 1];
  const Grid& g = s1.xdev.grid;

  double w1[3], w2[3];
  time_deriv_weights(s0.t, s1.t, s2.t, s1.t, w1);
  time_deriv2_weights(s0.t, s1.t, s2.t, w2);

  ScalarField u(g), v(g), xtt(g);
  for (int k = 0; k < g.size(); ++k) {
    u.v[k] = w1[0] * s0.xdev.v[k] + w1[1] * s1.xdev.v[k] +
             w1[2] * s2.xdev.v[k];
    v.v[k] = w1[0] * s0.ydev.v[k] + w1[1] * s1.ydev.v[k] +
             w1[2] * s2.ydev.v[k];
    xtt.v[k] = w2[0] * s0.xdev.v[k] + w2[1] * s1.xdev.v[k] +
               w2[2] * s2.xdev.v[k];
  }

  const DeformationField F = deformation_gradient(s1.xdev, s1.ydev);
  const std::vector<SymTensor2> S = recover_stress(F, C);
  ScalarField s11(g), s12(g);
  for (int k = 0; k < g.size(); ++k) {
    s11.v[k] = S[k].a11;
    s12.v[k] = S[k].a12;
  }
  const ScalarField s11_1 = d_xi1(s11), s11_2 = d_xi2(s11);
  const ScalarField s12_1 = d_xi1(s12), s12_2 = d_xi2(s12);
  const ScalarField u_1 = d_xi1(u), u_2 = d_xi2(u);
  const ScalarField v_1 = d_xi1(v), v_2 = d_xi2(v);

  const bool p_zero = p_profile_is_zero(P);
  double mom2 = 0.0, div2 = 0.0;
  for (int j = 1; j < g.n2 - 1; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      const int k = g.idx(i, j);
      const double det = F.det[k];
      const double s11x = (F.f22[k] * s11_1.v[k] - F.f21[k] * s11_2.v[k]) / det;
      const double s12y =
          (-F.f12[k] * s12_1.v[k] + F.f11[k] * s12_2.v[k]) / det;
      double mom = xtt.v[k] - s11x - s12y;
      if (!p_zero) mom += eval_P(P, g.xi1(i) + s1.xdev.v[k], s1.t);
      const double div = (F.f22[k] * u_1.v[k] - F.f21[k] * u_2.v[k] -
                          F.f12[k] * v_1.v[k] + F.f11[k] * v_2.v[k]) /
                         det;
      mom2 += mom * mom;
      div2 += div * div;
    }
  }
  EulerianResidual out;
  out.momentum_l2 = std::sqrt(mom2 * g.h1 * g.h2);
  out.divergence_l2 = std::sqrt(div2 * g.h1 * g.h2);
  out.transport_l2 = 0.0;  // C is never advanced in particle coordinates
  return out;
}

}  // namespace ucmbl

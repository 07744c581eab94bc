#include "ucmbl/farfield.hpp"

#include <cmath>
#include <sstream>

namespace ucmbl {

FarfieldProblem::FarfieldProblem(int n1, double h1,
                                 std::vector<double> c11_inf, ProfileSpec P)
    : n1_(n1), h1_(h1), c11_(std::move(c11_inf)), P_(std::move(P)) {
  if (static_cast<int>(c11_.size()) != n1_) {
    throw ValidationError("C11_inf sample count does not match the grid");
  }
  c_half_.resize(n1_);
  double max_c = 0.0;
  for (int i = 0; i < n1_; ++i) {
    if (c11_[i] < 0.0) {
      std::ostringstream os;
      os << "C11_inf must be nonnegative, got " << c11_[i] << " at node " << i;
      throw ValidationError(os.str());
    }
    const int ip = (i + 1 == n1_) ? 0 : i + 1;
    c_half_[i] = 0.5 * (c11_[i] + c11_[ip]);
    max_c = std::max(max_c, c11_[i]);
  }
  max_wave_speed_ = std::sqrt(max_c);
}

FarfieldState FarfieldProblem::initial(const std::vector<double>& u_inf) const {
  FarfieldState s;
  s.xdev.assign(n1_, 0.0);
  s.xdot = u_inf;
  s.t = 0.0;
  return s;
}

std::vector<double> FarfieldProblem::accel(const FarfieldState& s) const {
  std::vector<double> a(n1_);
  const double inv_h2 = 1.0 / (h1_ * h1_);
  for (int i = 0; i < n1_; ++i) {
    const int ip = (i + 1 == n1_) ? 0 : i + 1;
    const int im = (i == 0) ? n1_ - 1 : i - 1;
    // conservative stencil applied to x = xi1 + xdev; the affine part
    // contributes h1 inside each flux difference
    const double flux_r = c_half_[i] * (s.xdev[ip] - s.xdev[i] + h1_);
    const double flux_l = c_half_[im] * (s.xdev[i] - s.xdev[im] + h1_);
    a[i] = (flux_r - flux_l) * inv_h2 - eval_P(P_, i * h1_ + s.xdev[i], s.t);
  }
  return a;
}

double FarfieldProblem::max_dt(double cfl) const {
  if (max_wave_speed_ <= 0.0) return cfl * h1_ * 1e12;
  return cfl * h1_ / max_wave_speed_;
}

void FarfieldProblem::step(FarfieldState& s, double dt) const {
  if (dt > max_dt() * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "far-field step dt=" << dt << " exceeds the CFL limit "
       << max_dt();
    throw CflViolationError(os.str());
  }
  const std::vector<double> a0 = accel(s);
  for (int i = 0; i < n1_; ++i) {
    s.xdot[i] += 0.5 * dt * a0[i];
    s.xdev[i] += dt * s.xdot[i];
  }
  s.t += dt;
  const std::vector<double> a1 = accel(s);
  for (int i = 0; i < n1_; ++i) s.xdot[i] += 0.5 * dt * a1[i];
}

FarfieldTrajectory farfield_trajectory(const FarfieldProblem& fp,
                                       const std::vector<double>& u_inf,
                                       double dt, int nsteps) {
  FarfieldTrajectory tr;
  tr.dt = dt;
  tr.nsteps = nsteps;
  const int rows = nsteps + 1;
  tr.xdev.reserve(rows);
  tr.xdot.reserve(rows);
  tr.g.reserve(rows);
  tr.g_t.reserve(rows);
  tr.g_tt.reserve(rows);

  FarfieldState s = fp.initial(u_inf);
  const int n1 = fp.n1();
  auto record = [&]() {
    const std::vector<double> a = fp.accel(s);
    std::vector<double> g(n1), gt(n1), gtt(n1);
    for (int i = 0; i < n1; ++i) {
      g[i] = -s.xdev[i];
      gt[i] = -s.xdot[i];
      gtt[i] = -a[i];
    }
    tr.xdev.push_back(s.xdev);
    tr.xdot.push_back(s.xdot);
    tr.g.push_back(std::move(g));
    tr.g_t.push_back(std::move(gt));
    tr.g_tt.push_back(std::move(gtt));
  };

  record();
  for (int n = 0; n < nsteps; ++n) {
    fp.step(s, dt);
    record();
  }
  return tr;
}

}  // namespace ucmbl

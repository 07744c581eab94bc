#include "ucmbl/reconstruction.hpp"

#include <cmath>
#include <sstream>

namespace ucmbl {

ScalarField recover_x_dev(const ScalarField& xbar, const ScalarField& Y,
                          const std::vector<double>& xinf_dev) {
  const Grid& g = xbar.grid;
  ScalarField out(g);
  for (int j = 0; j < g.n2; ++j) {
    const int base = g.idx(0, j);
    for (int i = 0; i < g.n1; ++i) {
      out.v[base + i] = xbar.v[base + i] + Y.v[base + i] + xinf_dev[i];
    }
  }
  return out;
}

ScalarField recover_y(const ScalarField& xdev, int gs_sweeps) {
  const Grid& g = xdev.grid;
  const int n1 = g.n1, n2 = g.n2;
  const double h1 = g.h1, h2 = g.h2;

  ScalarField x1 = d_xi1(xdev);
  for (double& v : x1.v) v += 1.0;
  ScalarField x2 = d_xi2(xdev);

  double min_x1 = x1.v[0];
  for (double v : x1.v) min_x1 = std::min(min_x1, v);
  if (min_x1 < 0.1) {
    std::ostringstream os;
    os << "map near singular: min x_xi1 = " << min_x1;
    throw DegenerateMapError(os.str());
  }

  ScalarField y(g);  // absolute y values during the march
  std::vector<double> slope_prev(n1), y1_prev(n1);

  for (int j = 1; j < n2; ++j) {
    const int bp = g.idx(0, j - 1);
    const int b = g.idx(0, j);
    // slope of the completed row below
    for (int i = 0; i < n1; ++i) {
      const int ip = (i + 1) % n1, im = (i + n1 - 1) % n1;
      y1_prev[i] = (y.v[bp + ip] - y.v[bp + im]) / (2.0 * h1);
    }
    for (int i = 0; i < n1; ++i) {
      slope_prev[i] =
          (1.0 + x2.v[bp + i] * y1_prev[i]) / x1.v[bp + i];
      y.v[b + i] = y.v[bp + i] + h2 * slope_prev[i];  // predictor
    }
    // Trapezoid corrector relaxed in place. The lateral derivative is
    // one-sided toward the side the characteristic comes from
    // (sign of x_xi2), and each pass walks away from that side so the
    // referenced neighbors are already updated; the in-row recursion is
    // then contractive.
    auto relax = [&](int i, bool forward) {
      const double xi1c = x1.v[b + i];
      const double xi2c = x2.v[b + i];
      const double base_val =
          y.v[bp + i] + 0.5 * h2 * (slope_prev[i] + 1.0 / xi1c);
      const double w = 0.5 * h2 * xi2c / xi1c;
      double rest, coef;
      if (forward) {
        const int ip = (i + 1) % n1, ip2 = (i + 2) % n1;
        rest = (4.0 * y.v[b + ip] - y.v[b + ip2]) / (2.0 * h1);
        coef = -3.0 / (2.0 * h1);
      } else {
        const int im = (i + n1 - 1) % n1, im2 = (i + n1 - 2) % n1;
        rest = (-4.0 * y.v[b + im] + y.v[b + im2]) / (2.0 * h1);
        coef = 3.0 / (2.0 * h1);
      }
      const double denom = 1.0 - w * coef;
      if (std::abs(denom) < 0.05) {
        throw DegenerateMapError(
            "transport relaxation lost diagonal dominance");
      }
      y.v[b + i] = (base_val + w * rest) / denom;
    };
    for (int sweep = 0; sweep < gs_sweeps; ++sweep) {
      for (int i = 0; i < n1; ++i)
        if (x2.v[b + i] < 0.0) relax(i, false);
      for (int i = n1 - 1; i >= 0; --i)
        if (x2.v[b + i] >= 0.0) relax(i, true);
    }
  }

  // return the periodic deviation
  for (int j = 0; j < n2; ++j) {
    const int b = g.idx(0, j);
    const double xi2 = g.xi2(j);
    for (int i = 0; i < n1; ++i) y.v[b + i] -= xi2;
  }
  return y;
}

ScalarField jacobian_residual(const ScalarField& xdev,
                              const ScalarField& ydev) {
  const Grid& g = xdev.grid;
  ScalarField x1 = d_xi1(xdev);
  ScalarField x2 = d_xi2(xdev);
  ScalarField y1 = d_xi1(ydev);
  ScalarField y2 = d_xi2(ydev);
  ScalarField res(g);
  for (int k = 0; k < g.size(); ++k) {
    res.v[k] = (1.0 + x1.v[k]) * (1.0 + y2.v[k]) - x2.v[k] * y1.v[k] - 1.0;
  }
  return res;
}

DeformationField deformation_gradient(const ScalarField& xdev,
                                      const ScalarField& ydev) {
  const Grid& g = xdev.grid;
  DeformationField F;
  F.grid = g;
  ScalarField x1 = d_xi1(xdev);
  ScalarField x2 = d_xi2(xdev);
  ScalarField y1 = d_xi1(ydev);
  ScalarField y2 = d_xi2(ydev);
  const int n = g.size();
  F.f11.resize(n);
  F.f12.resize(n);
  F.f21.resize(n);
  F.f22.resize(n);
  F.det.resize(n);
  for (int k = 0; k < n; ++k) {
    F.f11[k] = 1.0 + x1.v[k];
    F.f12[k] = x2.v[k];
    F.f21[k] = y1.v[k];
    F.f22[k] = 1.0 + y2.v[k];
    F.det[k] = F.f11[k] * F.f22[k] - F.f12[k] * F.f21[k];
    F.max_det_err = std::max(F.max_det_err, std::abs(F.det[k] - 1.0));
  }
  return F;
}

std::vector<SymTensor2> recover_stress(const DeformationField& F,
                                       const std::vector<SymTensor2>& C) {
  const int n = F.grid.size();
  std::vector<SymTensor2> S(n);
  for (int k = 0; k < n; ++k) {
    const double f11 = F.f11[k], f12 = F.f12[k];
    const double f21 = F.f21[k], f22 = F.f22[k];
    const SymTensor2& c = C[k];
    const double p11 = f11 * c.a11 + f12 * c.a12;
    const double p12 = f11 * c.a12 + f12 * c.a22;
    const double p21 = f21 * c.a11 + f22 * c.a12;
    const double p22 = f21 * c.a12 + f22 * c.a22;
    S[k].a11 = p11 * f11 + p12 * f12;
    S[k].a12 = p11 * f21 + p12 * f22;
    S[k].a22 = p21 * f21 + p22 * f22;
  }
  return S;
}

void time_deriv_weights(double t0, double t1, double t2, double t,
                        double w[3]) {
  w[0] = (2.0 * t - t1 - t2) / ((t0 - t1) * (t0 - t2));
  w[1] = (2.0 * t - t0 - t2) / ((t1 - t0) * (t1 - t2));
  w[2] = (2.0 * t - t0 - t1) / ((t2 - t0) * (t2 - t1));
}

void time_deriv2_weights(double t0, double t1, double t2, double w[3]) {
  w[0] = 2.0 / ((t0 - t1) * (t0 - t2));
  w[1] = 2.0 / ((t1 - t0) * (t1 - t2));
  w[2] = 2.0 / ((t2 - t0) * (t2 - t1));
}

void recover_velocities(const std::vector<MapSnapshot>& maps,
                        std::vector<ScalarField>& u,
                        std::vector<ScalarField>& v) {
  const int m = static_cast<int>(maps.size());
  if (m < 3) {
    throw InsufficientSnapshotsError(
        "need at least three snapshots for time differencing");
  }
  const Grid& g = maps[0].xdev.grid;
  u.assign(m, ScalarField(g));
  v.assign(m, ScalarField(g));
  for (int s = 0; s < m; ++s) {
    const int a = (s == 0) ? 0 : (s == m - 1) ? m - 3 : s - 1;
    const double t0 = maps[a].t, t1 = maps[a + 1].t, t2 = maps[a + 2].t;
    double w[3];
    time_deriv_weights(t0, t1, t2, maps[s].t, w);
    for (int k = 0; k < g.size(); ++k) {
      u[s].v[k] = w[0] * maps[a].xdev.v[k] + w[1] * maps[a + 1].xdev.v[k] +
                  w[2] * maps[a + 2].xdev.v[k];
      v[s].v[k] = w[0] * maps[a].ydev.v[k] + w[1] * maps[a + 1].ydev.v[k] +
                  w[2] * maps[a + 2].ydev.v[k];
    }
  }
}

}  // namespace ucmbl

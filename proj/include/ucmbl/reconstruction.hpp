#pragma once

#include <vector>

#include "ucmbl/grid.hpp"
#include "ucmbl/sym_tensor.hpp"

namespace ucmbl {

/// Particle map at one time, stored as periodic deviations from the
/// reference coordinates: x = xi1 + xdev, y = xi2 + ydev.
struct MapSnapshot {
  ScalarField xdev, ydev;
  double t = 0.0;
};

/// x = xbar + Y + x_inf, assembled as a deviation from xi1 so that
/// periodic differencing stays exact. The wall row telescopes to
/// exactly zero deviation.
ScalarField recover_x_dev(const ScalarField& xbar, const ScalarField& Y,
                          const std::vector<double>& xinf_dev);

/// Solves x_xi1 y_xi2 - x_xi2 y_xi1 = 1, y(.,0) = 0 by a trapezoid
/// march in xi2 with one Gauss-Seidel relaxation sweep per row (upwind
/// one-sided xi1 stencils chosen by the sign of x_xi2). Returns the
/// deviation y - xi2. Throws DegenerateMapError when min |x_xi1| < 0.1.
ScalarField recover_y(const ScalarField& xdev, int gs_sweeps = 1);

/// Pointwise residual of the Jacobian identity evaluated with the grid
/// difference operators.
ScalarField jacobian_residual(const ScalarField& xdev,
                              const ScalarField& ydev);

struct DeformationField {
  Grid grid;
  std::vector<double> f11, f12, f21, f22, det;
  double max_det_err = 0.0;  // max |det F - 1|
};

DeformationField deformation_gradient(const ScalarField& xdev,
                                      const ScalarField& ydev);

/// S = F C F^T pointwise.
std::vector<SymTensor2> recover_stress(const DeformationField& F,
                                       const std::vector<SymTensor2>& C);

/// Velocities u = x_t, v = y_t by second-order time differencing of
/// stored maps (three-point formulas, one-sided at the ends; snapshot
/// spacing may be nonuniform). Throws InsufficientSnapshotsError for
/// fewer than three snapshots.
void recover_velocities(const std::vector<MapSnapshot>& maps,
                        std::vector<ScalarField>& u,
                        std::vector<ScalarField>& v);

/// First- and second-derivative weights of the quadratic through
/// (t0, t1, t2), evaluated at t.
void time_deriv_weights(double t0, double t1, double t2, double t,
                        double w[3]);
void time_deriv2_weights(double t0, double t1, double t2, double w[3]);

}  // namespace ucmbl

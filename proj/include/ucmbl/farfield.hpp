#pragma once

#include <vector>

#include "ucmbl/grid.hpp"
#include "ucmbl/profiles.hpp"

namespace ucmbl {

/// State of the one-dimensional limit problem at the top of the layer.
/// The map is stored as its periodic deviation xdev = x_inf - xi1.
struct FarfieldState {
  std::vector<double> xdev;
  std::vector<double> xdot;
  double t = 0.0;
};

/// The wall trace of the outer flow: a 1D semilinear wave equation
///   d2x/dt2 = d/dxi1( C11_inf dx/dxi1 ) - P(x, t)
/// discretized with compact conservative differences and advanced by
/// velocity Verlet (P treated explicitly).
class FarfieldProblem {
 public:
  FarfieldProblem(int n1, double h1, std::vector<double> c11_inf,
                  ProfileSpec P);

  FarfieldState initial(const std::vector<double>& u_inf) const;

  std::vector<double> accel(const FarfieldState& s) const;

  /// Largest dt accepted by the step CFL guard.
  double max_dt(double cfl = 0.5) const;

  /// One velocity-Verlet step; throws CflViolationError when dt exceeds
  /// max_dt().
  void step(FarfieldState& s, double dt) const;

  int n1() const { return n1_; }
  double h1() const { return h1_; }

 private:
  int n1_;
  double h1_;
  std::vector<double> c11_;
  std::vector<double> c_half_;  // midpoint coefficients, periodic
  ProfileSpec P_;
  double max_wave_speed_;
};

/// Dense-in-time storage of the far-field run at solver steps, with the
/// boundary data g = xi1 - x_inf and its exact first and second time
/// derivatives bookkept from the state and the equation itself.
struct FarfieldTrajectory {
  double dt = 0.0;
  int nsteps = 0;
  // (nsteps + 1) rows of n1 values each
  std::vector<std::vector<double>> xdev, xdot, g, g_t, g_tt;
};

FarfieldTrajectory farfield_trajectory(const FarfieldProblem& fp,
                                       const std::vector<double>& u_inf,
                                       double dt, int nsteps);

}  // namespace ucmbl

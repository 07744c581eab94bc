#pragma once

#include <memory>
#include <vector>

#include "ucmbl/coefficients.hpp"
#include "ucmbl/scenario.hpp"
#include "ucmbl/solver.hpp"

namespace ucmbl {

/// A closed-form state with the source that makes it an exact solution
/// of the forced system. Cases satisfy the zero initial data, the wall
/// condition on U, periodicity in xi1, and decay toward the top, so
/// measured errors are pure discretization error.
class ManufacturedSolution {
 public:
  virtual ~ManufacturedSolution() = default;
  virtual const char* name() const = 0;
  virtual void state(const Grid& g, double t, StateField& out) const = 0;
  /// Source Phi* = V*_t - A1 V*_xi1 - A2 V*_xi2 - B V*, evaluated with
  /// the supplied coefficient fields and closed-form derivatives.
  virtual void forcing(const Grid& g, const CoefficientFields& cf, double t,
                       StateField& out) const = 0;
};

/// Smooth trigonometric-in-(xi1,t) case with Gaussian-decaying xi2
/// structure; exercises all three components and the wall rows.
class TrigBumpMms : public ManufacturedSolution {
 public:
  const char* name() const override { return "trig_bump"; }
  void state(const Grid& g, double t, StateField& out) const override;
  void forcing(const Grid& g, const CoefficientFields& cf, double t,
               StateField& out) const override;
};

/// Spatially constant state, polynomial in time: representable exactly
/// by the scheme, so errors sit at round-off.
class PolynomialMms : public ManufacturedSolution {
 public:
  const char* name() const override { return "polynomial"; }
  void state(const Grid& g, double t, StateField& out) const override;
  void forcing(const Grid& g, const CoefficientFields& cf, double t,
               StateField& out) const override;
};

std::unique_ptr<ManufacturedSolution> make_mms(const std::string& name);

struct ConvergenceRecord {
  std::vector<int> n;
  std::vector<double> h;
  std::vector<double> err;
  double order = 0.0;
  bool fitted = false;  // false when errors sit at round-off
};

struct MmsRunResult {
  double err_l2 = 0.0;
  RunResult run;
};

/// Integrates the manufactured case to time T on the given grid with
/// identity C and returns the final-time L2 error.
MmsRunResult run_mms(const ManufacturedSolution& mms, const GridParams& gp,
                     double cfl, double T, const NumericsParams& numerics,
                     const std::vector<StepHook*>& hooks = {});

/// Runs >= 3 refinement levels and fits the order by least squares on
/// the log-log error curve.
ConvergenceRecord convergence_study(const ManufacturedSolution& mms,
                                    const std::vector<GridParams>& grids,
                                    double cfl, double T,
                                    const NumericsParams& numerics);

struct SigmaStudy {
  std::vector<double> sigmas;    // descending
  std::vector<double> pairwise;  // ||V_{s_i} - V_{s_i+1}|| at final time
  double zero_diff = 0.0;        // ||V_{0} - V_{smallest}||
  double dt = 0.0;
};

/// Runs the scenario under each flux perturbation and the unperturbed
/// problem with one shared time step, and reports trajectory
/// differences at the final time.
SigmaStudy sigma_study(const Scenario& s, const std::vector<double>& sigmas);

}  // namespace ucmbl

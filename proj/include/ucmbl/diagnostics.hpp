#pragma once

#include <vector>

#include "ucmbl/coefficients.hpp"
#include "ucmbl/profiles.hpp"
#include "ucmbl/reconstruction.hpp"
#include "ucmbl/solver.hpp"

namespace ucmbl {

/// Squared discrete L2 norm of the state: ||U||^2 + ||V||^2 + ||W||^2.
double energy_l2(const StateField& s);

/// Wall-row quadrature of A2 V.V = 2 U (a12 V + a22 W) (+ sigma |V|^2
/// when the perturbed flux is active).
double wall_flux(const StateField& s, const CoefficientFields& cf);

/// Constants entering the energy-estimate bounds, taken as maxima of
/// pointwise spectral norms of the discrete coefficient combinations.
struct GronwallConstants {
  double K0 = 0.0;    // ||B + B* - d1 A1 - d2 A2|| (zero by structure)
  double K1br = 0.0;  // ||d1 A1 - d2 A2 + B + B*||
  double KB1 = 0.0;   // ||d1 (B + B*)||
  double KA2x = 0.0;  // ||d1 A2||
};
GronwallConstants gronwall_constants(const CoefficientFields& cf);

/// Normal derivatives recovered from the evolution identities instead
/// of xi2 differencing: U_xi2 from the W equation, (V_xi2, W_xi2) from
/// the 2x2 system with determinant a22^2 + a12^2 = lambda^2.
struct NormalRecovery {
  ScalarField u_xi2, v_xi2, w_xi2;
  double residual = 0.0;  // max |recovered - direct grid difference|
  double e2 = 0.0;        // squared L2 norm of the recovered gradient
};

struct DiagnosticsRecord {
  int step = 0;
  double t = 0.0;
  double E0 = 0.0, Et = 0.0, E1 = 0.0, E2rec = 0.0;
  double wall_flux = 0.0;
  double detF_err = 0.0;
  bool gronwall_ok = true;
  double normal_res = 0.0;
  double bound0 = 0.0, boundt = 0.0, bound1 = 0.0;
  double phi_norm2 = 0.0;
};

/// Online observer of a solver run: keeps a three-row window for time
/// derivatives, a running time quadrature for the recovery identities,
/// and emits one record per accepted step after finalize().
class DiagnosticsMonitor : public StepHook {
 public:
  DiagnosticsMonitor(const CoefficientFields& cf, double dt);

  void on_step(const SolverState& state, const StateField& forcing) override;

  /// Completes the trailing rows and evaluates the estimate bounds.
  void finalize();

  const std::vector<DiagnosticsRecord>& records() const { return records_; }
  std::vector<DiagnosticsRecord>& mutable_records() { return records_; }
  const GronwallConstants& constants() const { return gk_; }
  bool all_gronwall_ok() const;
  double max_wall_flux() const;
  double max_normal_residual() const;

  /// Recovery for an arbitrary consistent triple of rows (used directly
  /// by tests); integral_F is the accumulated time quadrature field.
  NormalRecovery recover_normal(const StateField& V, const StateField& f,
                                const ScalarField& u_t,
                                const ScalarField& w_t,
                                const ScalarField& integral_F) const;

 private:
  void emit_pending(bool last);
  void accumulate_integral(const StateField& V, const StateField& f);

  const CoefficientFields* cf_;
  double dt_;
  GronwallConstants gk_;
  bool sigma_mode_ = false;

  // coefficient derivative fields
  ScalarField d1a11_, d2a11_, d1a12_, d2a12_, d1a22_, d2a22_;
  ScalarField alpha_, beta_;

  // window of the last three rows
  std::vector<SolverState> win_;
  std::vector<StateField> fwin_;

  ScalarField integral_F_;   // running quadrature for the recovery rhs
  ScalarField q_prev_;       // previous integrand row
  bool have_q_prev_ = false;

  std::vector<DiagnosticsRecord> records_;
  std::vector<double> phi_t_norm2_, phi_x_norm2_;
  bool finalized_ = false;
};

struct EulerianResidual {
  double momentum_l2 = 0.0;
  double divergence_l2 = 0.0;
  double transport_l2 = 0.0;  // Lagrangian constancy of C, zero by design
};

/// Residuals of the physical-space momentum equation and divergence
/// constraint, evaluated at the Lagrangian nodes of an interior
/// snapshot via the inverse deformation gradient (det F = 1 flow).
/// Norms are taken over interior xi2 rows.
EulerianResidual eulerian_residual(const std::vector<MapSnapshot>& maps,
                                   int snap_index,
                                   const std::vector<SymTensor2>& C,
                                   const ProfileSpec& P);

}  // namespace ucmbl

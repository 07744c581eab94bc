#pragma once

#include <vector>

#include "ucmbl/grid.hpp"
#include "ucmbl/profiles.hpp"
#include "ucmbl/scenario.hpp"

namespace ucmbl {

/// Cutoff profile: 1 on [0,1], cosine ramp on (1,2), 0 beyond 2.
double cutoff_chi(double s);

/// chi sampled on the xi2 nodes of a grid.
std::vector<double> chi_column(const Grid& g);

/// Lifting Y(xi1, xi2, t) = g(xi1,t) chi(xi2) + t [u0 - u_inf (1 - chi)]
/// and its second time derivative Ytt = g_tt chi. Checks the wall
/// compatibility u0(.,0) = 0 (CompatibilityViolationError beyond 1e-10).
void build_Y(const Grid& g, const std::vector<double>& g_row,
             const std::vector<double>& g_tt_row, const ScalarField& u0,
             const std::vector<double>& u_inf, double t, ScalarField& Y,
             ScalarField& Ytt);

/// Divergence-form operator d/dxi1(C11 f1 + C12 f2) + d/dxi2(C12 f1 + C22 f2)
/// applied to the gradient (f1, f2) of a field, all via grid differences.
void div_C_grad_into(const Grid& g, const std::vector<SymTensor2>& C,
                     const ScalarField& f, ScalarField& out);

/// Mismatch between the full and far-field stress divergences acting on
/// the far-field map, plus pressure-gradient differences:
///   Psi = div(C grad x_inf) - d/dxi1(C11_inf dx_inf/dxi1)
///         - P(X + x_inf, t) + P(x_inf, t),
/// with X the lifted displacement and x_inf constant in xi2.
void build_Psi(const Grid& g, const ScalarField& X,
               const std::vector<double>& xinf_dev,
               const std::vector<SymTensor2>& C,
               const std::vector<double>& c11_inf, const ProfileSpec& P,
               double t, ScalarField& psi);

/// Forcing assembly for the homogenized displacement equation:
///   Phi = Psi(xbar + Y) + div(C grad Y) - Ytt.
class ForcingAssembler {
 public:
  ForcingAssembler(const Grid& g, ScenarioFields fields, ProfileSpec P);

  /// Evaluates Phi at time t into phi, given the running displacement
  /// xbar and the far-field rows at the same time.
  void build_Phi(const ScalarField& xbar, const std::vector<double>& g_row,
                 const std::vector<double>& g_tt_row,
                 const std::vector<double>& xinf_dev, double t,
                 ScalarField& phi);

  const std::vector<double>& chi() const { return chi_; }

 private:
  Grid grid_;
  ScenarioFields fields_;
  ProfileSpec P_;
  std::vector<double> chi_;
  // scratch
  ScalarField Y_, Ytt_, X_, divY_;
};

}  // namespace ucmbl

#include "ucmbl/homogenization.hpp"

#include <cmath>
#include <sstream>

namespace ucmbl {

double cutoff_chi(double s) {
  if (s <= 1.0) return 1.0;
  if (s >= 2.0) return 0.0;
  return 0.5 * (1.0 + std::cos(M_PI * (s - 1.0)));
}

std::vector<double> chi_column(const Grid& g) {
  std::vector<double> chi(g.n2);
  for (int j = 0; j < g.n2; ++j) chi[j] = cutoff_chi(g.xi2(j));
  return chi;
}

void build_Y(const Grid& g, const std::vector<double>& g_row,
             const std::vector<double>& g_tt_row, const ScalarField& u0,
             const std::vector<double>& u_inf, double t, ScalarField& Y,
             ScalarField& Ytt) {
  double wall_max = 0.0;
  for (int i = 0; i < g.n1; ++i) wall_max = std::max(wall_max, std::abs(u0(i, 0)));
  if (wall_max > 1e-10) {
    std::ostringstream os;
    os << "u0 violates wall compatibility: max |u0(.,0)| = " << wall_max;
    throw CompatibilityViolationError(os.str());
  }
  if (Y.grid != g) Y = ScalarField(g);
  if (Ytt.grid != g) Ytt = ScalarField(g);
  const std::vector<double> chi = chi_column(g);
  for (int j = 0; j < g.n2; ++j) {
    const double cj = chi[j];
    double* yrow = &Y.v[g.idx(0, j)];
    double* ytt = &Ytt.v[g.idx(0, j)];
    const double* u0row = &u0.v[g.idx(0, j)];
    for (int i = 0; i < g.n1; ++i) {
      yrow[i] = g_row[i] * cj + t * (u0row[i] - u_inf[i] * (1.0 - cj));
      ytt[i] = g_tt_row[i] * cj;
    }
  }
}

void div_C_grad_into(const Grid& g, const std::vector<SymTensor2>& C,
                     const ScalarField& f, ScalarField& out) {
  ScalarField f1 = d_xi1(f);
  ScalarField f2 = d_xi2(f);
  ScalarField q1(g), q2(g);
  for (int k = 0; k < g.size(); ++k) {
    const SymTensor2& c = C[k];
    q1.v[k] = c.a11 * f1.v[k] + c.a12 * f2.v[k];
    q2.v[k] = c.a12 * f1.v[k] + c.a22 * f2.v[k];
  }
  d_xi1_into(q1, out);
  ScalarField t2 = d_xi2(q2);
  for (int k = 0; k < g.size(); ++k) out.v[k] += t2.v[k];
}

void build_Psi(const Grid& g, const ScalarField& X,
               const std::vector<double>& xinf_dev,
               const std::vector<SymTensor2>& C,
               const std::vector<double>& c11_inf, const ProfileSpec& P,
               double t, ScalarField& psi) {
  if (psi.grid != g) psi = ScalarField(g);
  // x_inf has no xi2 dependence: grad x_inf = (1 + dev', 0)
  const std::vector<double> dev1 = d1_periodic(xinf_dev, g.h1);

  // d/dxi1( C11 * xinf_xi1 ) as a 2D field
  ScalarField q(g);
  for (int j = 0; j < g.n2; ++j) {
    double* qrow = &q.v[g.idx(0, j)];
    const SymTensor2* crow = &C[g.idx(0, j)];
    for (int i = 0; i < g.n1; ++i) qrow[i] = crow[i].a11 * (1.0 + dev1[i]);
  }
  d_xi1_into(q, psi);

  // + d/dxi2( C12 ) * xinf_xi1  (xinf_xi1 constant along xi2)
  ScalarField c12(g);
  for (int k = 0; k < g.size(); ++k) c12.v[k] = C[k].a12;
  ScalarField dc12 = d_xi2(c12);
  for (int j = 0; j < g.n2; ++j) {
    double* prow = &psi.v[g.idx(0, j)];
    const double* drow = &dc12.v[g.idx(0, j)];
    for (int i = 0; i < g.n1; ++i) prow[i] += drow[i] * (1.0 + dev1[i]);
  }

  // - d/dxi1( C11_inf * xinf_xi1 ), a 1D row broadcast to every xi2
  std::vector<double> q1(g.n1);
  for (int i = 0; i < g.n1; ++i) q1[i] = c11_inf[i] * (1.0 + dev1[i]);
  const std::vector<double> dq1 = d1_periodic(q1, g.h1);

  const bool p_zero = p_profile_is_zero(P);
  for (int j = 0; j < g.n2; ++j) {
    double* prow = &psi.v[g.idx(0, j)];
    const double* xrow = &X.v[g.idx(0, j)];
    for (int i = 0; i < g.n1; ++i) {
      prow[i] -= dq1[i];
      if (!p_zero) {
        const double xinf = g.xi1(i) + xinf_dev[i];
        prow[i] += eval_P(P, xinf, t) - eval_P(P, xrow[i] + xinf, t);
      }
    }
  }
}

ForcingAssembler::ForcingAssembler(const Grid& g, ScenarioFields fields,
                                   ProfileSpec P)
    : grid_(g),
      fields_(std::move(fields)),
      P_(std::move(P)),
      chi_(chi_column(g)),
      Y_(g),
      Ytt_(g),
      X_(g),
      divY_(g) {}

void ForcingAssembler::build_Phi(const ScalarField& xbar,
                                 const std::vector<double>& g_row,
                                 const std::vector<double>& g_tt_row,
                                 const std::vector<double>& xinf_dev, double t,
                                 ScalarField& phi) {
  build_Y(grid_, g_row, g_tt_row, fields_.u0, fields_.u_inf, t, Y_, Ytt_);
  for (int k = 0; k < grid_.size(); ++k) X_.v[k] = xbar.v[k] + Y_.v[k];
  build_Psi(grid_, X_, xinf_dev, fields_.C, fields_.c11_inf, P_, t, phi);
  div_C_grad_into(grid_, fields_.C, Y_, divY_);
  for (int k = 0; k < grid_.size(); ++k) phi.v[k] += divY_.v[k] - Ytt_.v[k];
}

}  // namespace ucmbl

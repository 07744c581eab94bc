#pragma once

#include <vector>

#include "ucmbl/grid.hpp"
#include "ucmbl/sym_tensor.hpp"

namespace ucmbl {

/// Pointwise coefficient data of the first-order system
///   V_t = A1 V_xi1 + A2 V_xi2 + B V + forcing,
/// built from A = sqrt(C). A1 and A2 are reconstructed on demand from
/// the stored square-root components; B has only a first row, stored as
/// (b1, b2). sigma shifts A2 by sigma*I (the noncharacteristic
/// verification mode).
struct CoefficientFields {
  Grid grid;
  std::vector<SymTensor2> A;
  std::vector<double> lambda;
  std::vector<double> b1, b2;
  double sigma = 0.0;
  double c0 = 0.0;          // min a22 over the grid
  double min_lambda = 0.0;
  double max_rho1 = 0.0;    // max sqrt(a11^2 + a12^2)
  double max_lambda = 0.0;

  Mat3 a1_at(int k) const { return a1_matrix(A[k]); }
  Mat3 a2_at(int k) const {
    Mat3 m = a2_matrix(A[k]);
    for (int d = 0; d < 3; ++d) m(d, d) += sigma;
    return m;
  }
  Mat3 b_at(int k) const {
    Mat3 m;
    m(0, 1) = b1[k];
    m(0, 2) = b2[k];
    return m;
  }
};

/// Takes the pointwise PSD square root and forms lambda and the B row
/// (derivatives of the square-root components by grid differences).
CoefficientFields assemble_coefficients(const Grid& g,
                                        const std::vector<SymTensor2>& C,
                                        double c22_floor = 1e-9);

/// dt = cfl / max over nodes of ( rho(A1)/h1 + rho(A2)/h2 ).
double cfl_dt(const CoefficientFields& cf, double cfl);

/// Returns coefficients with A2 shifted to A2 + sigma I; requires
/// 0 <= sigma < min lambda (SigmaTooLargeError otherwise).
CoefficientFields apply_sigma_perturbation(const CoefficientFields& cf,
                                           double sigma);

}  // namespace ucmbl

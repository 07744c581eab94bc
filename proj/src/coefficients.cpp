#include "ucmbl/coefficients.hpp"

#include <cmath>
#include <sstream>

namespace ucmbl {

CoefficientFields assemble_coefficients(const Grid& g,
                                        const std::vector<SymTensor2>& C,
                                        double c22_floor) {
  if (static_cast<int>(C.size()) != g.size()) {
    throw ValidationError("C sample count does not match the grid");
  }
  CoefficientFields cf;
  cf.grid = g;
  cf.A.resize(g.size());
  cf.lambda.resize(g.size());

  ScalarField a11(g), a12(g), a22(g);
  for (int k = 0; k < g.size(); ++k) {
    const SymTensor2 a = psd_sqrt(C[k], c22_floor);
    cf.A[k] = a;
    cf.lambda[k] = lambda_of(a);
    a11.v[k] = a.a11;
    a12.v[k] = a.a12;
    a22.v[k] = a.a22;
  }

  const ScalarField d1a11 = d_xi1(a11);
  const ScalarField d1a12 = d_xi1(a12);
  const ScalarField d2a12 = d_xi2(a12);
  const ScalarField d2a22 = d_xi2(a22);
  cf.b1.resize(g.size());
  cf.b2.resize(g.size());
  for (int k = 0; k < g.size(); ++k) {
    cf.b1[k] = d1a11.v[k] + d2a12.v[k];
    cf.b2[k] = d1a12.v[k] + d2a22.v[k];
  }

  cf.c0 = cf.A[0].a22;
  cf.min_lambda = cf.lambda[0];
  for (int k = 0; k < g.size(); ++k) {
    cf.c0 = std::min(cf.c0, cf.A[k].a22);
    cf.min_lambda = std::min(cf.min_lambda, cf.lambda[k]);
    cf.max_rho1 =
        std::max(cf.max_rho1, std::hypot(cf.A[k].a11, cf.A[k].a12));
    cf.max_lambda = std::max(cf.max_lambda, cf.lambda[k]);
  }
  if (!(cf.c0 > 0.0)) {
    std::ostringstream os;
    os << "square-root field has nonpositive a22 floor " << cf.c0;
    throw DegenerateC22Error(os.str());
  }
  return cf;
}

double cfl_dt(const CoefficientFields& cf, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) {
    std::ostringstream os;
    os << "cfl " << cfl << " outside (0, 1]";
    throw ValidationError(os.str());
  }
  const Grid& g = cf.grid;
  double worst = 0.0;
  for (int k = 0; k < g.size(); ++k) {
    const double rho1 = std::hypot(cf.A[k].a11, cf.A[k].a12);
    const double rho2 = cf.lambda[k] + cf.sigma;
    worst = std::max(worst, rho1 / g.h1 + rho2 / g.h2);
  }
  return cfl / worst;
}

CoefficientFields apply_sigma_perturbation(const CoefficientFields& cf,
                                           double sigma) {
  if (sigma < 0.0 || (sigma > 0.0 && sigma >= cf.min_lambda)) {
    std::ostringstream os;
    os << "sigma " << sigma << " not inside [0, min lambda = "
       << cf.min_lambda << ")";
    throw SigmaTooLargeError(os.str());
  }
  CoefficientFields out = cf;
  out.sigma = sigma;
  return out;
}

}  // namespace ucmbl

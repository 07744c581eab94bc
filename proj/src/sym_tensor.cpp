#include "ucmbl/sym_tensor.hpp"

#include <cmath>
#include <sstream>

namespace ucmbl {

double det2(const SymTensor2& m) { return m.a11 * m.a22 - m.a12 * m.a12; }

double trace2(const SymTensor2& m) { return m.a11 + m.a22; }

bool is_psd(const SymTensor2& c, double tol) {
  return c.a11 >= -tol && c.a22 >= -tol && det2(c) >= -tol;
}

void require_psd(const SymTensor2& c, double tol) {
  if (!is_psd(c, tol)) {
    std::ostringstream os;
    os << "tensor is not positive semidefinite: a11=" << c.a11
       << " a12=" << c.a12 << " a22=" << c.a22 << " det=" << det2(c);
    throw NotPsdError(os.str());
  }
}

SymTensor2 psd_sqrt(const SymTensor2& c, double c22_floor) {
  require_psd(c);
  if (c22_floor > 0.0 && c.a22 < c22_floor) {
    std::ostringstream os;
    os << "a22=" << c.a22 << " below required floor " << c22_floor;
    throw DegenerateC22Error(os.str());
  }
  // compensated determinant keeps near-singular inputs accurate
  const double w = c.a12 * c.a12;
  double d = std::fma(c.a11, c.a22, -w) + std::fma(-c.a12, c.a12, w);
  if (d < 0.0) d = 0.0;  // inside PSD tolerance, guard the sqrt
  const double s = std::sqrt(d);
  const double denom = trace2(c) + 2.0 * s;
  if (denom <= 0.0) return SymTensor2{};  // only reachable for C ~ 0
  const double f = 1.0 / std::sqrt(denom);
  return SymTensor2{(c.a11 + s) * f, c.a12 * f, (c.a22 + s) * f};
}

double lambda_of(const SymTensor2& a) { return std::hypot(a.a12, a.a22); }

Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

Mat3 matmul(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

Vec3 matvec(const Mat3& a, const Vec3& x) {
  Vec3 r;
  for (int i = 0; i < 3; ++i)
    r[i] = a(i, 0) * x[0] + a(i, 1) * x[1] + a(i, 2) * x[2];
  return r;
}

Mat3 diag3(double d0, double d1, double d2) {
  Mat3 r;
  r(0, 0) = d0;
  r(1, 1) = d1;
  r(2, 2) = d2;
  return r;
}

Mat3 a1_matrix(const SymTensor2& a) {
  Mat3 r;
  r(0, 1) = r(1, 0) = a.a11;
  r(0, 2) = r(2, 0) = a.a12;
  return r;
}

Mat3 a2_matrix(const SymTensor2& a) {
  Mat3 r;
  r(0, 1) = r(1, 0) = a.a12;
  r(0, 2) = r(2, 0) = a.a22;
  return r;
}

NormalFluxEigen diagonalize_normal_flux(const SymTensor2& a, double c0) {
  const double lam = lambda_of(a);
  if (lam < c0) {
    std::ostringstream os;
    os << "normal flux eigenvalue " << lam << " below floor " << c0;
    throw ZeroLambdaError(os.str());
  }
  const double r = 1.0 / lam;
  const double s2 = 1.0 / std::sqrt(2.0);
  NormalFluxEigen out;
  out.eigenvalues[0] = -lam;
  out.eigenvalues[1] = 0.0;
  out.eigenvalues[2] = lam;
  Mat3& R = out.rotation;
  // eigenvalue -lambda
  R(0, 0) = s2;
  R(1, 0) = -a.a12 * r * s2;
  R(2, 0) = -a.a22 * r * s2;
  // eigenvalue 0
  R(0, 1) = 0.0;
  R(1, 1) = a.a22 * r;
  R(2, 1) = -a.a12 * r;
  // eigenvalue +lambda
  R(0, 2) = s2;
  R(1, 2) = a.a12 * r * s2;
  R(2, 2) = a.a22 * r * s2;
  return out;
}

double sym3_spectral_norm(const Mat3& s) {
  // Closed-form symmetric 3x3 eigenvalues via the trigonometric method.
  const double q = (s(0, 0) + s(1, 1) + s(2, 2)) / 3.0;
  const double b00 = s(0, 0) - q, b11 = s(1, 1) - q, b22 = s(2, 2) - q;
  const double p2 = b00 * b00 + b11 * b11 + b22 * b22 +
                    2.0 * (s(0, 1) * s(0, 1) + s(0, 2) * s(0, 2) +
                           s(1, 2) * s(1, 2));
  if (p2 <= 0.0) return std::abs(q);
  const double p = std::sqrt(p2 / 6.0);
  // detB for B = (S - qI)/p
  const double c00 = b00 / p, c11 = b11 / p, c22 = b22 / p;
  const double c01 = s(0, 1) / p, c02 = s(0, 2) / p, c12 = s(1, 2) / p;
  double detB = c00 * (c11 * c22 - c12 * c12) - c01 * (c01 * c22 - c12 * c02) +
                c02 * (c01 * c12 - c11 * c02);
  double rr = detB / 2.0;
  if (rr < -1.0) rr = -1.0;
  if (rr > 1.0) rr = 1.0;
  const double phi = std::acos(rr) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  return std::max(std::abs(e1), std::abs(e3));
}

}  // namespace ucmbl

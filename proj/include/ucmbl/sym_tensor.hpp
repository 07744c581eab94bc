#pragma once

#include "ucmbl/errors.hpp"

namespace ucmbl {

/// 2x2 symmetric tensor stored by its three independent components.
struct SymTensor2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a22 = 0.0;
};

/// Validation tolerance for the positive-semidefiniteness test.
inline constexpr double kPsdTol = 1e-12;

double det2(const SymTensor2& m);
double trace2(const SymTensor2& m);

bool is_psd(const SymTensor2& c, double tol = kPsdTol);

/// Throws NotPsdError with a component dump if the PSD test fails.
void require_psd(const SymTensor2& c, double tol = kPsdTol);

/// Unique PSD square root of a PSD 2x2 tensor,
///   A = (C + sqrt(det C) I) / sqrt(tr C + 2 sqrt(det C)),
/// with the degenerate denominator mapped to A = 0.
/// If c22_floor > 0, inputs with a22 below the floor are rejected
/// (DegenerateC22Error).
SymTensor2 psd_sqrt(const SymTensor2& c, double c22_floor = 0.0);

/// Spectral radius of the wall-normal flux block: sqrt(a12^2 + a22^2).
double lambda_of(const SymTensor2& a);

struct Vec3 {
  double v[3] = {0.0, 0.0, 0.0};
  double& operator[](int i) { return v[i]; }
  double operator[](int i) const { return v[i]; }
};

struct Mat3 {
  double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double& operator()(int r, int c) { return m[r][c]; }
  double operator()(int r, int c) const { return m[r][c]; }
};

Mat3 transpose(const Mat3& a);
Mat3 matmul(const Mat3& a, const Mat3& b);
Vec3 matvec(const Mat3& a, const Vec3& x);
Mat3 diag3(double d0, double d1, double d2);

/// Streamwise flux matrix [[0,a11,a12],[a11,0,0],[a12,0,0]].
Mat3 a1_matrix(const SymTensor2& a);

/// Wall-normal flux matrix [[0,a12,a22],[a12,0,0],[a22,0,0]].
Mat3 a2_matrix(const SymTensor2& a);

struct NormalFluxEigen {
  Vec3 eigenvalues;  // (-lambda, 0, +lambda), ascending
  Mat3 rotation;     // orthogonal, columns are eigenvectors
};

/// Eigendecomposition of a2_matrix(a): R^T A2 R = diag(-lambda, 0, +lambda).
/// Column sign convention: first nonzero entry of each eigenvector positive.
/// Throws ZeroLambdaError if lambda < c0.
NormalFluxEigen diagonalize_normal_flux(const SymTensor2& a, double c0 = 1e-14);

/// Largest absolute eigenvalue of a symmetric 3x3 matrix (spectral norm).
double sym3_spectral_norm(const Mat3& s);

}  // namespace ucmbl

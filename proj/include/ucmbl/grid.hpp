#pragma once

#include <vector>

#include "ucmbl/errors.hpp"

namespace ucmbl {

/// Uniform grid on the half strip [0,1) x [0,L]: periodic in xi1
/// (n1 nodes, no duplicated seam column), truncated in xi2 (n2 nodes
/// including both ends).
struct Grid {
  int n1 = 0;
  int n2 = 0;
  double L = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;

  Grid() = default;
  Grid(int n1_, int n2_, double L_);

  int size() const { return n1 * n2; }
  int idx(int i, int j) const { return j * n1 + i; }
  double xi1(int i) const { return i * h1; }
  double xi2(int j) const { return j * h2; }

  bool operator==(const Grid&) const = default;
};

struct ScalarField {
  Grid grid;
  std::vector<double> v;

  ScalarField() = default;
  explicit ScalarField(const Grid& g) : grid(g), v(g.size(), 0.0) {}

  double& operator()(int i, int j) { return v[grid.idx(i, j)]; }
  double operator()(int i, int j) const { return v[grid.idx(i, j)]; }
  void fill(double x) { std::fill(v.begin(), v.end(), x); }
};

/// The three unknowns of the first-order system, sharing one grid.
struct StateField {
  ScalarField U, V, W;

  StateField() = default;
  explicit StateField(const Grid& g) : U(g), V(g), W(g) {}
  const Grid& grid() const { return U.grid; }
  void fill(double x) { U.fill(x); V.fill(x); W.fill(x); }
};

/// Centered second-order periodic difference in xi1.
void d_xi1_into(const ScalarField& f, ScalarField& out);
ScalarField d_xi1(const ScalarField& f);

/// Second-order difference in xi2: centered in the interior, one-sided
/// at j = 0 and j = n2-1.
void d_xi2_into(const ScalarField& f, ScalarField& out);
ScalarField d_xi2(const ScalarField& f);

/// Periodic centered difference of a 1D array of n1 values (spacing h1).
std::vector<double> d1_periodic(const std::vector<double>& f, double h1);

/// Grid inner product: trapezoid weights in xi2, uniform weights in xi1.
double inner(const ScalarField& f, const ScalarField& g);
double l2_norm(const ScalarField& f);
double linf_norm(const ScalarField& f);
double linf_norm(const StateField& f);
bool all_finite(const StateField& f);

}  // namespace ucmbl

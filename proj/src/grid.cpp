#include "ucmbl/grid.hpp"

#include <cmath>
#include <sstream>

namespace ucmbl {

Grid::Grid(int n1_, int n2_, double L_) : n1(n1_), n2(n2_), L(L_) {
  if (n1 < 8 || n2 < 8) {
    std::ostringstream os;
    os << "grid too small: n1=" << n1 << " n2=" << n2 << " (need >= 8)";
    throw ValidationError(os.str());
  }
  if (!(L > 2.0)) {
    std::ostringstream os;
    os << "truncation height L=" << L << " must exceed 2 (cutoff support)";
    throw ValidationError(os.str());
  }
  h1 = 1.0 / n1;
  h2 = L / (n2 - 1);
}

void d_xi1_into(const ScalarField& f, ScalarField& out) {
  const Grid& g = f.grid;
  if (out.grid != g) out = ScalarField(g);
  const double c = 1.0 / (2.0 * g.h1);
  for (int j = 0; j < g.n2; ++j) {
    const double* row = &f.v[g.idx(0, j)];
    double* orow = &out.v[g.idx(0, j)];
    const int n = g.n1;
    orow[0] = (row[1] - row[n - 1]) * c;
    for (int i = 1; i < n - 1; ++i) orow[i] = (row[i + 1] - row[i - 1]) * c;
    orow[n - 1] = (row[0] - row[n - 2]) * c;
  }
}

ScalarField d_xi1(const ScalarField& f) {
  ScalarField out(f.grid);
  d_xi1_into(f, out);
  return out;
}

void d_xi2_into(const ScalarField& f, ScalarField& out) {
  const Grid& g = f.grid;
  if (out.grid != g) out = ScalarField(g);
  const double c = 1.0 / (2.0 * g.h2);
  const int n1 = g.n1, n2 = g.n2;
  for (int i = 0; i < n1; ++i) {
    out.v[g.idx(i, 0)] =
        (-3.0 * f.v[g.idx(i, 0)] + 4.0 * f.v[g.idx(i, 1)] - f.v[g.idx(i, 2)]) *
        c;
    out.v[g.idx(i, n2 - 1)] = (3.0 * f.v[g.idx(i, n2 - 1)] -
                               4.0 * f.v[g.idx(i, n2 - 2)] +
                               f.v[g.idx(i, n2 - 3)]) *
                              c;
  }
  for (int j = 1; j < n2 - 1; ++j) {
    const double* up = &f.v[g.idx(0, j + 1)];
    const double* dn = &f.v[g.idx(0, j - 1)];
    double* orow = &out.v[g.idx(0, j)];
    for (int i = 0; i < n1; ++i) orow[i] = (up[i] - dn[i]) * c;
  }
}

ScalarField d_xi2(const ScalarField& f) {
  ScalarField out(f.grid);
  d_xi2_into(f, out);
  return out;
}

std::vector<double> d1_periodic(const std::vector<double>& f, double h1) {
  const int n = static_cast<int>(f.size());
  std::vector<double> out(n);
  const double c = 1.0 / (2.0 * h1);
  for (int i = 0; i < n; ++i) {
    const int ip = (i + 1 == n) ? 0 : i + 1;
    const int im = (i == 0) ? n - 1 : i - 1;
    out[i] = (f[ip] - f[im]) * c;
  }
  return out;
}

double inner(const ScalarField& f, const ScalarField& g) {
  const Grid& gr = f.grid;
  double s = 0.0;
  for (int j = 0; j < gr.n2; ++j) {
    const double w = (j == 0 || j == gr.n2 - 1) ? 0.5 : 1.0;
    const double* a = &f.v[gr.idx(0, j)];
    const double* b = &g.v[gr.idx(0, j)];
    double rs = 0.0;
    for (int i = 0; i < gr.n1; ++i) rs += a[i] * b[i];
    s += w * rs;
  }
  return s * gr.h1 * gr.h2;
}

double l2_norm(const ScalarField& f) { return std::sqrt(inner(f, f)); }

double linf_norm(const ScalarField& f) {
  double m = 0.0;
  for (double x : f.v) m = std::max(m, std::abs(x));
  return m;
}

double linf_norm(const StateField& f) {
  return std::max({linf_norm(f.U), linf_norm(f.V), linf_norm(f.W)});
}

bool all_finite(const StateField& f) {
  for (const ScalarField* s : {&f.U, &f.V, &f.W})
    for (double x : s->v)
      if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace ucmbl

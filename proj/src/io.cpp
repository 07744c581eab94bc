#include "ucmbl/io.hpp"

#include <cstdio>
#include <fstream>

namespace ucmbl {

std::string format_full(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {
std::ofstream open_or_throw(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  return f;
}
}  // namespace

void write_snapshot_csv(const std::string& path, const Grid& g,
                        const StateField& V, const ScalarField& xbar,
                        const MapSnapshot& map, const ScalarField& u,
                        const ScalarField& v,
                        const std::vector<SymTensor2>& S) {
  std::ofstream f = open_or_throw(path);
  f << "xi1,xi2,U,V,W,xbar,x,y,u,v,S11,S12,S22\n";
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      const int k = g.idx(i, j);
      f << format_full(g.xi1(i)) << ',' << format_full(g.xi2(j)) << ','
        << format_full(V.U.v[k]) << ',' << format_full(V.V.v[k]) << ','
        << format_full(V.W.v[k]) << ',' << format_full(xbar.v[k]) << ','
        << format_full(g.xi1(i) + map.xdev.v[k]) << ','
        << format_full(g.xi2(j) + map.ydev.v[k]) << ','
        << format_full(u.v[k]) << ',' << format_full(v.v[k]) << ','
        << format_full(S[k].a11) << ',' << format_full(S[k].a12) << ','
        << format_full(S[k].a22) << '\n';
    }
  }
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records) {
  std::ofstream f = open_or_throw(path);
  f << "step,t,E0,Et,E1,E2rec,wall_flux,detF_err,gronwall_ok,normal_res\n";
  for (const auto& r : records) {
    f << r.step << ',' << format_full(r.t) << ',' << format_full(r.E0) << ','
      << format_full(r.Et) << ',' << format_full(r.E1) << ','
      << format_full(r.E2rec) << ',' << format_full(r.wall_flux) << ','
      << format_full(r.detF_err) << ',' << (r.gronwall_ok ? 1 : 0) << ','
      << format_full(r.normal_res) << '\n';
  }
}

void write_convergence_csv(const std::string& path,
                           const ConvergenceRecord& rec) {
  std::ofstream f = open_or_throw(path);
  f << "n,h,err_l2\n";
  for (size_t i = 0; i < rec.err.size(); ++i) {
    f << rec.n[i] << ',' << format_full(rec.h[i]) << ','
      << format_full(rec.err[i]) << '\n';
  }
  f << "# fitted_order = "
    << (rec.fitted ? format_full(rec.order) : std::string("skipped (round-off)"))
    << '\n';
}

void write_sigma_csv(const std::string& path, const SigmaStudy& study) {
  std::ofstream f = open_or_throw(path);
  f << "sigma_hi,sigma_lo,diff_l2\n";
  for (size_t i = 0; i + 1 < study.sigmas.size(); ++i) {
    f << format_full(study.sigmas[i]) << ','
      << format_full(study.sigmas[i + 1]) << ','
      << format_full(study.pairwise[i]) << '\n';
  }
  f << format_full(0.0) << ',' << format_full(study.sigmas.back()) << ','
    << format_full(study.zero_diff) << '\n';
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f = open_or_throw(path);
  f << content;
}

}  // namespace ucmbl

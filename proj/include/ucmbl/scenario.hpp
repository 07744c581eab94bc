#pragma once

#include <string>
#include <vector>

#include "ucmbl/grid.hpp"
#include "ucmbl/profiles.hpp"

namespace ucmbl {

struct NumericsParams {
  double cfl = 0.5;
  double sigma = 0.0;
  int picard_iters = 0;
  int snapshot_stride = 8;
  double ko_eps = 0.3;  // fourth-difference dissipation strength
  double dt = 0.0;      // 0 = choose from the CFL condition
};

struct GridParams {
  int n1 = 64;
  int n2 = 64;
  double L = 8.0;
  Grid make() const { return Grid(n1, n2, L); }
};

/// All problem data for one run. Profiles are analytic by name so runs
/// are reproducible bit for bit.
struct Scenario {
  std::string name = "unnamed";
  GridParams grid;
  double T = 0.5;
  ProfileSpec u0{"zero", {}};
  ProfileSpec u_inf{"zero", {}};
  ProfileSpec C{"identity", {}};
  ProfileSpec C11_inf{"constant", {}};
  ProfileSpec P{"zero", {}};
  NumericsParams numerics;
};

/// Profiles sampled onto the grid, plus the PSD floor found for C22.
struct ScenarioFields {
  Grid grid;
  ScalarField u0;
  std::vector<double> u_inf;     // n1 values
  std::vector<double> c11_inf;   // n1 values
  std::vector<SymTensor2> C;     // n1*n2 values
  double C0 = 0.0;               // min C22 over the grid
};

/// Parses the flat key = value configuration format ('#' comments,
/// dotted keys). Throws ParseError for malformed input and
/// ValidationError (listing every violated invariant) for consistent
/// but invalid scenarios.
Scenario parse_config(const std::string& text);

/// Canonical serialization; parse_config(serialize_config(s)) == s.
std::string serialize_config(const Scenario& s);

/// Samples profiles on the grid and checks the data invariants:
/// wall compatibility u0(.,0) = 0, top compatibility |u0(.,L) - u_inf|
/// <= 1e-8, C PSD with positive C22, |C11(.,L) - C11_inf| <= 1e-6.
ScenarioFields build_fields(const Scenario& s);

/// Collects all validation failures as a list of messages (empty when
/// the scenario is valid).
std::vector<std::string> validation_failures(const Scenario& s);

}  // namespace ucmbl

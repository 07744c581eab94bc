#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ucmbl/diagnostics.hpp"
#include "ucmbl/farfield.hpp"
#include "ucmbl/homogenization.hpp"
#include "ucmbl/reconstruction.hpp"
#include "ucmbl/scenario.hpp"
#include "ucmbl/solver.hpp"

namespace ucmbl {

/// Forcing closure for production runs: rebuilds Phi from the running
/// displacement and the precomputed far-field rows at every stage time.
ForcingFn make_production_forcing(std::shared_ptr<ForcingAssembler> fa,
                                  std::shared_ptr<const FarfieldTrajectory> far);

/// Everything one run produces: trajectory, per-step diagnostics, and
/// the reconstructed physical fields at snapshot times.
struct RunOutput {
  Scenario scenario;
  ScenarioFields fields;
  CoefficientFields coeffs;
  std::shared_ptr<const FarfieldTrajectory> farfield;
  RunResult run;
  std::vector<DiagnosticsRecord> diag;
  GronwallConstants gk;
  std::vector<MapSnapshot> maps;
  std::vector<ScalarField> u, v;
  std::vector<std::vector<SymTensor2>> stress;
  std::vector<double> detf;
};

RunOutput execute_run(const Scenario& s);

/// Writes scenario.cfg, snap_<step>.csv files, diagnostics.csv and
/// summary.txt under out_dir.
void write_run_output(const RunOutput& out, const std::string& out_dir);

struct VerifyCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

/// Runs the scenario and audits the runtime invariants: square-root
/// consistency, flux symmetry and diagonalization, wall flux, estimate
/// bounds, displacement bookkeeping, and map quality.
VerifyReport verify_scenario(const Scenario& s);

}  // namespace ucmbl

#pragma once

#include <string>
#include <vector>

#include "ucmbl/diagnostics.hpp"
#include "ucmbl/verification.hpp"

namespace ucmbl {

/// Shortest decimal form that round-trips a double exactly.
std::string format_full(double x);

struct RunOutput;  // driver.hpp

/// One snapshot file: header
///   xi1,xi2,U,V,W,xbar,x,y,u,v,S11,S12,S22
/// rows in xi2-outer order, every value in round-trip formatting.
void write_snapshot_csv(const std::string& path, const Grid& g,
                        const StateField& V, const ScalarField& xbar,
                        const MapSnapshot& map, const ScalarField& u,
                        const ScalarField& v,
                        const std::vector<SymTensor2>& S);

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records);

void write_convergence_csv(const std::string& path,
                           const ConvergenceRecord& rec);

void write_sigma_csv(const std::string& path, const SigmaStudy& study);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace ucmbl

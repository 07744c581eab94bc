#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ucmbl/driver.hpp"
#include "ucmbl/io.hpp"
#include "ucmbl/verification.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ucmbl::Error("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::vector<double> parse_sigma_list(const std::string& csv) {
  std::vector<double> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    out.push_back(std::stod(item));
  }
  return out;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            int snapshot_stride) {
  ucmbl::Scenario s = ucmbl::parse_config(read_file(config_path));
  if (snapshot_stride > 0) s.numerics.snapshot_stride = snapshot_stride;
  const ucmbl::RunOutput out = ucmbl::execute_run(s);
  ucmbl::write_run_output(out, out_dir);
  std::cout << "run '" << s.name << "': " << out.run.nsteps << " steps, dt = "
            << ucmbl::format_full(out.run.dt) << ", reached t = "
            << ucmbl::format_full(out.run.achieved_T) << "\n";
  std::cout << "outputs in " << out_dir << "\n";
  if (out.run.blew_up) {
    std::cerr << "run stopped early: state left the finite range\n";
    return 3;
  }
  return 0;
}

int cmd_convergence(const std::string& config_path, const std::string& out_dir,
                    const std::string& case_name, int levels) {
  ucmbl::Scenario s = ucmbl::parse_config(read_file(config_path));
  auto mms = ucmbl::make_mms(case_name);
  std::vector<ucmbl::GridParams> grids;
  ucmbl::GridParams gp = s.grid;
  for (int l = 0; l < levels; ++l) {
    grids.push_back(gp);
    gp.n1 *= 2;
    gp.n2 = 2 * gp.n2 - 1;  // keeps node times nested
  }
  const ucmbl::ConvergenceRecord rec = ucmbl::convergence_study(
      *mms, grids, s.numerics.cfl, s.T, s.numerics);
  std::filesystem::create_directories(out_dir);
  ucmbl::write_convergence_csv(out_dir + "/convergence.csv", rec);
  std::cout << "case " << case_name << ":\n";
  for (size_t i = 0; i < rec.err.size(); ++i) {
    std::cout << "  n1 = " << rec.n[i] << "  h2 = "
              << ucmbl::format_full(rec.h[i]) << "  err = "
              << ucmbl::format_full(rec.err[i]) << "\n";
  }
  if (rec.fitted) {
    std::cout << "fitted order p = " << rec.order << "\n";
  } else {
    std::cout << "errors at round-off; order fit skipped\n";
  }
  return 0;
}

int cmd_sigma(const std::string& config_path, const std::string& out_dir,
              const std::string& sigma_csv) {
  ucmbl::Scenario s = ucmbl::parse_config(read_file(config_path));
  const std::vector<double> sigmas = parse_sigma_list(sigma_csv);
  const ucmbl::SigmaStudy study = ucmbl::sigma_study(s, sigmas);
  std::filesystem::create_directories(out_dir);
  ucmbl::write_sigma_csv(out_dir + "/sigma_study.csv", study);
  for (size_t i = 0; i + 1 < study.sigmas.size(); ++i) {
    std::cout << "  |V(" << study.sigmas[i] << ") - V(" << study.sigmas[i + 1]
              << ")| = " << ucmbl::format_full(study.pairwise[i]) << "\n";
  }
  std::cout << "  |V(0) - V(" << study.sigmas.back() << ")| = "
            << ucmbl::format_full(study.zero_diff) << "\n";
  return 0;
}

int cmd_verify(const std::string& config_path) {
  ucmbl::Scenario s = ucmbl::parse_config(read_file(config_path));
  const ucmbl::VerifyReport rep = ucmbl::verify_scenario(s);
  for (const auto& c : rep.checks) {
    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
  }
  if (!rep.all_ok()) {
    std::cout << "verification failed\n";
    return 3;
  }
  std::cout << "all invariants verified\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian boundary-layer solver for an upper convected "
               "Maxwell fluid at high Weissenberg number"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  int snapshot_stride = 0;
  std::string case_name = "trig_bump";
  int levels = 3;
  std::string sigma_csv = "0.2,0.1,0.05,0.025";

  CLI::App* run = app.add_subcommand("run", "integrate a scenario");
  run->add_option("config", config_path, "scenario config file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--snapshots", snapshot_stride, "snapshot stride override");

  CLI::App* conv =
      app.add_subcommand("convergence", "manufactured-solution study");
  conv->add_option("config", config_path, "scenario config file")->required();
  conv->add_option("--out", out_dir, "output directory");
  conv->add_option("--case", case_name, "manufactured case name");
  conv->add_option("--levels", levels, "number of refinement levels");

  CLI::App* sig = app.add_subcommand("sigma", "flux-perturbation study");
  sig->add_option("config", config_path, "scenario config file")->required();
  sig->add_option("--out", out_dir, "output directory");
  sig->add_option("--sigmas", sigma_csv, "descending sigma list");

  CLI::App* ver = app.add_subcommand("verify", "runtime invariant audit");
  ver->add_option("config", config_path, "scenario config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, snapshot_stride);
    if (conv->parsed())
      return cmd_convergence(config_path, out_dir, case_name, levels);
    if (sig->parsed()) return cmd_sigma(config_path, out_dir, sigma_csv);
    if (ver->parsed()) return cmd_verify(config_path);
  } catch (const ucmbl::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ucmbl::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const ucmbl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

// Command-line front end: run | sweep | certify | convergence.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radnlw/commands.hpp"
#include "radnlw/error.hpp"
#include "radnlw/kernels.hpp"

namespace {

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("-c,--config", common.config_path, "JSON run configuration");
  cmd->add_option("-s,--set", common.overrides, "Override a config key, e.g. --set grid.n=2048");
  cmd->add_option("-o,--output-dir", common.output_dir, "Output directory (overrides config and RADNLW_OUTPUT_DIR)");
}

radnlw::RunConfig load(const Common& common) {
  std::vector<std::string> overrides = common.overrides;
  if (!common.output_dir.empty()) overrides.push_back("output.directory=\"" + common.output_dir + "\"");
  return common.config_path.empty() ? radnlw::load_config(overrides)
                                    : radnlw::load_config(common.config_path, overrides);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial log-supercritical wave simulator and bootstrap certifier"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", "radnlw 1.0");

  Common run_opts, sweep_opts, certify_opts, conv_opts;

  auto* run = app.add_subcommand("run", "Evolve one configuration and write trajectory, diagnostics and summary");
  add_common(run, run_opts);

  auto* sweep = app.add_subcommand("sweep", "Run a configuration for each value of one parameter");
  add_common(sweep, sweep_opts);
  std::string parameter;
  std::vector<std::string> values;
  sweep->add_option("-p,--parameter", parameter, "amplitude | n | cfl | sigma")->required();
  sweep->add_option("-v,--values", values, "Comma-separated values")->delimiter(',');

  auto* certify = app.add_subcommand("certify", "Partition and verify a trajectory dump");
  add_common(certify, certify_opts);
  std::string dump;
  certify->add_option("dump", dump, "trajectory.csv written by `run`")->required();

  auto* conv = app.add_subcommand("convergence", "Grid refinement study");
  add_common(conv, conv_opts);
  std::size_t levels = 3;
  conv->add_option("-l,--levels", levels, "Number of refinement levels (>= 2)");

  bool show_kernels = false;
  app.add_flag("--kernels", show_kernels, "Print the selected SIMD kernel variant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return radnlw::cli::kConfigError;
  }

  if (show_kernels) {
    std::cout << "kernels: " << radnlw::kernels::to_string(radnlw::kernels::active().isa) << '\n';
    if (app.get_subcommands().empty()) return radnlw::cli::kOk;
  }

  try {
    if (*run) return radnlw::cli::cmd_run(load(run_opts), std::cout);
    if (*sweep) return radnlw::cli::cmd_sweep(load(sweep_opts), parameter, values, std::cout);
    if (*certify) return radnlw::cli::cmd_certify(dump, load(certify_opts), std::cout);
    if (*conv) {
      if (levels < 2) {
        std::cerr << "error: --levels must be at least 2\n";
        return radnlw::cli::kConfigError;
      }
      return radnlw::cli::cmd_convergence(load(conv_opts), levels, std::cout);
    }
  } catch (const radnlw::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return radnlw::cli::exit_code_for(e.kind());
  }
  std::cerr << "A subcommand is required\n" << app.help();
  return radnlw::cli::kConfigError;
}

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "radnlw/config.hpp"
#include "radnlw/diagnostics.hpp"
#include "radnlw/error.hpp"

namespace radnlw::cli {

/// Process exit codes; part of the public interface.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kConeViolation = 3,
  kOverflow = 4,
  kCertificateFail = 5,
  kFormatError = 6,
};

int exit_code_for(ErrorKind kind) noexcept;

/// Evolves, writes trajectory.csv, diagnostics.csv and summary.txt into the
/// output directory. Exit 0 on completion, kOverflow for an overflowed run
/// (partial artifacts are still written), kConeViolation without running.
int cmd_run(const RunConfig& config, std::ostream& log);

struct SweepRow {
  std::string value;
  std::string status;
  int exit_code = 0;
  std::string error;
  DiagnosticsReport report;
  double a_over_e2 = 0.0;
  bool a_over_e2_ok = false;     // A / E^2 <= morawetz_C
  double bound = 0.0;            // double_exp_bound(D, kappa_A A)
  bool bound_saturated = false;
  bool b_within_bound = false;
  double energy_bound = 0.0;     // double_exp_bound(D, morawetz_C E^2)
  bool energy_bound_saturated = false;
  double sup_u_max = 0.0;
};

/// Runs one configuration per value of `parameter` (amplitude, n, cfl or
/// sigma) on `config.workers` threads; rows come back in value order.
std::vector<SweepRow> run_sweep(const RunConfig& config, const std::string& parameter,
                                const std::vector<std::string>& values);

/// run_sweep plus sweep.csv in the output directory and a table on `log`.
int cmd_sweep(const RunConfig& config, const std::string& parameter, const std::vector<std::string>& values,
              std::ostream& log);

/// Recomputes diagnostics from a trajectory dump, partitions, verifies and
/// checks the bootstrap inequality; writes certificate.txt / certificate.csv.
/// Exit 0 iff every check passes.
int cmd_certify(const std::filesystem::path& dump, const RunConfig& config, std::ostream& log);

/// Refinement study on n, 2n, ...; exact reference for the standing-wave
/// profile, self-convergence otherwise. Exit 0 iff the observed order >= 1.8.
int cmd_convergence(const RunConfig& config, std::size_t levels, std::ostream& log);

}  // namespace radnlw::cli

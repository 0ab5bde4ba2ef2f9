#include "radnlw/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <thread>

#include "radnlw/error.hpp"
#include "radnlw/io.hpp"

namespace radnlw::cli {
namespace {

std::filesystem::path output_dir(const RunConfig& config) {
  std::filesystem::path dir(config.output.directory);
  std::filesystem::create_directories(dir);
  return dir;
}

template <class Fn>
std::string render(Fn&& fn) {
  std::ostringstream out;
  out << std::setprecision(17);
  fn(out);
  return out.str();
}

double max_sup(const DiagnosticsReport& r) {
  double m = 0.0;
  for (const auto& s : r.snapshots) m = std::max(m, s.sup_u);
  return m;
}

void write_summary(std::ostream& out, const RunConfig& config, const Trajectory& traj, const DiagnosticsReport& r) {
  out << std::setprecision(17);
  out << "status = " << to_string(traj.status) << '\n'
      << "t_end = " << (traj.states.empty() ? 0.0 : traj.final().t) << '\n'
      << "snapshots = " << traj.size() << '\n'
      << "dt = " << traj.dt << '\n'
      << "n = " << config.n << '\n'
      << "E = " << r.E << '\n'
      << "energy_drift = " << r.energy_drift << '\n'
      << "A = " << r.A << '\n'
      << "B = " << r.B << '\n'
      << "D = " << r.D << '\n'
      << "flux = " << r.morawetz_flux << '\n'
      << "sup_u_max = " << max_sup(r) << '\n'
      << "sobolev_ratio_max = " << r.sobolev_ratio_max << '\n'
      << "strichartz_lhs = " << r.strichartz_lhs << '\n'
      << "strichartz_rhs = " << r.strichartz_rhs << '\n';
  if (r.E != 0.0) out << "A_over_E2 = " << r.A / (r.E * r.E) << '\n';
  try {
    const CboundCheck cb = check_cbound(r, config.certifier.cbound_margin);
    out << "cbound_ratio = " << cb.ratio << '\n';
  } catch (const Error&) {
    out << "cbound_ratio = degenerate\n";
  }
  const DoubleExpBound bound = double_exp_bound(r.D, config.certifier.kappa_A * r.A, config.certifier);
  out << "double_exp_bound = " << bound.value << (bound.saturated ? " (saturated)" : "") << '\n';
}

// Applies a sweep parameter to a copy of the base configuration.
RunConfig with_parameter(RunConfig c, const std::string& parameter, const std::string& value) {
  nlohmann::json doc = to_json(c);
  if (parameter == "amplitude") apply_override(doc, "data.amplitude=" + value);
  else if (parameter == "n") apply_override(doc, "grid.n=" + value);
  else if (parameter == "cfl") apply_override(doc, "solve.cfl=" + value);
  else if (parameter == "sigma") apply_override(doc, "nonlinearity.sigma=" + value);
  else throw Error(ErrorKind::config, "sweep parameter must be amplitude, n, cfl or sigma");
  RunConfig out = from_json(doc);
  out.validate();
  return out;
}

SweepRow run_one(const RunConfig& base, const std::string& parameter, const std::string& value) {
  SweepRow row;
  row.value = value;
  try {
    const RunConfig c = with_parameter(base, parameter, value);
    c.check_light_cone();
    const Trajectory traj = evolve(sample_initial(c.grid(), c.nonlinearity, c.initial_data()), c.solve);
    row.status = std::string(to_string(traj.status));
    row.exit_code = traj.status == RunStatus::completed ? kOk : kOverflow;
    row.report = diagnose(traj);
    const DiagnosticsReport& r = row.report;
    row.a_over_e2 = r.E != 0.0 ? r.A / (r.E * r.E) : 0.0;
    row.a_over_e2_ok = row.a_over_e2 <= c.morawetz_C;
    const DoubleExpBound b = double_exp_bound(r.D, c.certifier.kappa_A * r.A, c.certifier);
    row.bound = b.value;
    row.bound_saturated = b.saturated;
    row.b_within_bound = r.B <= b.value;
    const DoubleExpBound eb = double_exp_bound(r.D, c.morawetz_C * r.E * r.E, c.certifier);
    row.energy_bound = eb.value;
    row.energy_bound_saturated = eb.saturated;
    row.sup_u_max = max_sup(r);
  } catch (const Error& e) {
    row.status = e.kind() == ErrorKind::cone_violation ? "cone-violation" : "error";
    row.exit_code = exit_code_for(e.kind());
    row.error = e.what();
  }
  return row;
}

void write_sweep_csv(std::ostream& out, const std::string& parameter, const std::vector<SweepRow>& rows) {
  out << std::setprecision(17);
  out << parameter
      << ",status,exit_code,E,A,B,D,flux,A_over_E2,A_over_E2_ok,double_exp_bound,bound_saturated,"
         "B_le_bound,energy_double_exp_bound,energy_bound_saturated,sobolev_ratio_max,sup_u_max,energy_drift,error\n";
  for (const SweepRow& row : rows) {
    const DiagnosticsReport& r = row.report;
    std::string err = row.error;
    std::replace(err.begin(), err.end(), ',', ';');
    out << row.value << ',' << row.status << ',' << row.exit_code << ',' << r.E << ',' << r.A << ',' << r.B << ','
        << r.D << ',' << r.morawetz_flux << ',' << row.a_over_e2 << ',' << (row.a_over_e2_ok ? 1 : 0) << ','
        << row.bound << ',' << (row.bound_saturated ? 1 : 0) << ',' << (row.b_within_bound ? 1 : 0) << ','
        << row.energy_bound << ',' << (row.energy_bound_saturated ? 1 : 0) << ',' << r.sobolev_ratio_max
        << ',' << row.sup_u_max << ',' << r.energy_drift << ',' << err << '\n';
  }
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::cone_violation: return kConeViolation;
    case ErrorKind::format: return kFormatError;
    case ErrorKind::resolution:
    case ErrorKind::mismatch:
    case ErrorKind::degenerate: return kCertificateFail;
    case ErrorKind::unsupported_data:
    case ErrorKind::window_out_of_range:
    case ErrorKind::config: return kConfigError;
  }
  return kConfigError;
}

int cmd_run(const RunConfig& config, std::ostream& log) {
  try {
    config.validate();
    config.check_light_cone();
    const Trajectory traj =
        evolve(sample_initial(config.grid(), config.nonlinearity, config.initial_data()), config.solve);
    const DiagnosticsReport report = diagnose(traj);
    const auto dir = output_dir(config);
    if (config.output.wants("csv")) {
      if (!traj.states.empty())
        io::write_file(dir / "trajectory.csv", render([&](std::ostream& o) { io::write_trajectory(o, traj); }));
      io::write_file(dir / "diagnostics.csv", render([&](std::ostream& o) { io::write_diagnostics(o, report); }));
    }
    const std::string summary = render([&](std::ostream& o) { write_summary(o, config, traj, report); });
    if (config.output.wants("text")) io::write_file(dir / "summary.txt", summary);
    log << summary;
    return traj.status == RunStatus::completed ? kOk : kOverflow;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

std::vector<SweepRow> run_sweep(const RunConfig& config, const std::string& parameter,
                                const std::vector<std::string>& values) {
  if (parameter != "amplitude" && parameter != "n" && parameter != "cfl" && parameter != "sigma")
    throw Error(ErrorKind::config, "sweep parameter must be amplitude, n, cfl or sigma");
  std::vector<SweepRow> rows(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) rows[i] = run_one(config, parameter, values[i]);
  };
  const unsigned count = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(values.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

int cmd_sweep(const RunConfig& config, const std::string& parameter, const std::vector<std::string>& values,
              std::ostream& log) {
  try {
    config.validate();
    const auto rows = run_sweep(config, parameter, values);
    const std::string csv = render([&](std::ostream& o) { write_sweep_csv(o, parameter, rows); });
    if (config.output.wants("csv")) io::write_file(output_dir(config) / "sweep.csv", csv);
    log << csv;
    return kOk;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

int cmd_certify(const std::filesystem::path& dump, const RunConfig& config, std::ostream& log) {
  try {
    config.certifier.validate();
    const Trajectory traj = io::read_trajectory(dump);
    if (traj.status != RunStatus::completed) {
      log << "error: trajectory status is " << to_string(traj.status) << "; certificates need a completed run\n";
      return kCertificateFail;
    }
    const NormSeries series(traj);
    const DiagnosticsReport report = diagnose(series);
    const CertifierConstants& k = config.certifier;
    const SubdivisionCertificate cert = greedy_partition(series, k);
    const CertificateCheck check = verify_certificate(series, cert, k);

    bool cbound_ok = true;
    std::string cbound_line;
    try {
      const CboundCheck cb = check_cbound(report, k.cbound_margin);
      cbound_ok = cb.pass;
      std::ostringstream s;
      s << std::setprecision(17) << cb.ratio << (cb.pass ? " (pass)" : " (FAIL)") << " margin " << k.cbound_margin;
      cbound_line = s.str();
    } catch (const Error&) {
      cbound_line = "degenerate (zero data)";
    }
    const SubdivisionPlan plan = plan_subdivision(cert.total_A, cert.D, k);

    const auto dir = output_dir(config);
    if (config.output.wants("text"))
      io::write_file(dir / "certificate.txt", render([&](std::ostream& o) {
                       io::write_certificate_text(o, cert, check, k, cbound_line);
                     }));
    if (config.output.wants("csv"))
      io::write_file(dir / "certificate.csv",
                     render([&](std::ostream& o) { io::write_certificate_csv(o, cert, check); }));

    const bool pass = check.verdict.pass && cbound_ok;
    log << std::setprecision(17) << "verdict = " << (pass ? "pass" : "fail") << '\n'
        << "intervals = " << cert.intervals() << '\n'
        << "planned_intervals = " << plan.intervals << '\n'
        << "interval_cap = " << plan.cap << '\n'
        << "A_total = " << cert.total_A << '\n'
        << "D = " << cert.D << '\n'
        << "cbound = " << cbound_line << '\n';
    if (!check.verdict.pass)
      log << "failing_clause = " << to_string(check.verdict.clause) << " at interval " << check.verdict.interval
          << '\n';
    return pass ? kOk : kCertificateFail;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

int cmd_convergence(const RunConfig& config, std::size_t levels, std::ostream& log) {
  try {
    if (levels < 2) throw Error(ErrorKind::config, "levels: must be at least 2");
    config.validate();
    config.check_light_cone();
    ReducedSolution reference;
    if (config.data.profile == "standing-wave" && !config.nonlinearity.enabled) {
      const double k = config.data.params.mode * std::numbers::pi / config.r_max;
      reference = [k, a = config.data.params.amplitude](double t, double r) {
        return a * std::sin(k * r) * std::cos(k * t);
      };
    }
    const ConvergenceReport rep = convergence_order(config.initial_data(), config.nonlinearity, config.r_max,
                                                    config.n, levels, config.solve, reference);
    log << std::setprecision(17) << "mode = " << (reference ? "exact" : "self") << '\n';
    for (std::size_t i = 0; i < rep.differences.size(); ++i)
      log << "level " << i << " n = " << rep.cells[i] << " difference = " << rep.differences[i] << '\n';
    for (std::size_t i = 0; i < rep.orders.size(); ++i) log << "order " << i << " = " << rep.orders[i] << '\n';
    if (rep.exact) log << "observed order = exact (all differences vanish)\n";
    else log << "observed order = " << rep.order << '\n';
    return rep.exact || rep.order >= 1.8 ? kOk : kCertificateFail;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

}  // namespace radnlw::cli

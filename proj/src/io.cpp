#include "radnlw/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "radnlw/error.hpp"

namespace radnlw::io {
namespace {

constexpr const char* kTrajectoryMagic = "# radnlw trajectory v1";
constexpr const char* kDiagnosticsMagic = "# radnlw diagnostics v1";
constexpr const char* kCertificateMagic = "# radnlw certificate v1";

std::ostream& precise(std::ostream& out) { return out << std::setprecision(17); }

std::vector<std::string_view> split(std::string_view line, char sep = ',') {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s, const char* what) {
  // from_chars does not accept the "inf"/"nan" spellings iostreams produce with a sign prefix.
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorKind::format, std::string("bad number for ") + what + ": '" + std::string(s) + "'");
  return v;
}

long long parse_int(std::string_view s, const char* what) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorKind::format, std::string("bad integer for ") + what + ": '" + std::string(s) + "'");
  return v;
}

std::string next_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::format, std::string("unexpected end of file before ") + what);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::string_view header_value(const std::string& line, std::string_view key) {
  const auto fields = split(line);
  if (fields.size() != 2 || fields[0] != key)
    throw Error(ErrorKind::format, "expected header '" + std::string(key) + ",<value>', got '" + line + "'");
  return fields[1];
}

}  // namespace

void write_trajectory(std::ostream& out, const Trajectory& trajectory) {
  if (trajectory.states.empty()) throw Error(ErrorKind::format, "cannot write an empty trajectory");
  const FieldState& s0 = trajectory.initial();
  const RadialGrid& g = s0.grid;
  precise(out);
  out << kTrajectoryMagic << '\n'
      << "n," << g.cells() << '\n'
      << "r_max," << g.r_max() << '\n'
      << "dr," << g.dr() << '\n'
      << "dt," << trajectory.dt << '\n'
      << "record_stride," << trajectory.record_stride << '\n'
      << "p," << s0.spec.p << '\n'
      << "c," << s0.spec.c << '\n'
      << "sigma," << s0.spec.sigma << '\n'
      << "enabled," << (s0.spec.enabled ? 1 : 0) << '\n'
      << "status," << to_string(trajectory.status) << '\n'
      << "snapshots," << trajectory.size() << '\n'
      << "columns,t,v[0.." << g.cells() << "],w[0.." << g.cells() << "]\n";
  for (const FieldState& s : trajectory.states) {
    out << s.t;
    for (double x : s.v) out << ',' << x;
    for (double x : s.w) out << ',' << x;
    out << '\n';
  }
}

Trajectory read_trajectory(std::istream& in) {
  if (next_line(in, "magic") != kTrajectoryMagic) throw Error(ErrorKind::format, "not a radnlw trajectory dump");
  const long long n = parse_int(header_value(next_line(in, "n"), "n"), "n");
  const double r_max = parse_double(header_value(next_line(in, "r_max"), "r_max"), "r_max");
  const double dr = parse_double(header_value(next_line(in, "dr"), "dr"), "dr");
  const double dt = parse_double(header_value(next_line(in, "dt"), "dt"), "dt");
  const long long stride = parse_int(header_value(next_line(in, "record_stride"), "record_stride"), "record_stride");
  NonlinearitySpec spec;
  spec.p = static_cast<int>(parse_int(header_value(next_line(in, "p"), "p"), "p"));
  spec.c = static_cast<int>(parse_int(header_value(next_line(in, "c"), "c"), "c"));
  spec.sigma = static_cast<int>(parse_int(header_value(next_line(in, "sigma"), "sigma"), "sigma"));
  spec.enabled = parse_int(header_value(next_line(in, "enabled"), "enabled"), "enabled") != 0;
  const auto status = parse_run_status(header_value(next_line(in, "status"), "status"));
  if (!status) throw Error(ErrorKind::format, "unknown status");
  const long long count = parse_int(header_value(next_line(in, "snapshots"), "snapshots"), "snapshots");
  const std::string columns = next_line(in, "columns");
  if (columns.rfind("columns,", 0) != 0) throw Error(ErrorKind::format, "missing columns line");

  if (n < 16 || count < 1 || stride < 1 || !(dt > 0.0)) throw Error(ErrorKind::format, "inconsistent header");
  try {
    spec.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::format, e.what());
  }
  Trajectory traj;
  RadialGrid grid;
  try {
    grid = RadialGrid(r_max, static_cast<std::size_t>(n));
  } catch (const Error& e) {
    throw Error(ErrorKind::format, e.what());
  }
  if (grid.dr() != dr) throw Error(ErrorKind::format, "dr does not match r_max / n");
  traj.dt = dt;
  traj.record_stride = static_cast<std::size_t>(stride);
  traj.status = *status;

  const std::size_t m = grid.size();
  for (long long k = 0; k < count; ++k) {
    const std::string line = next_line(in, "snapshot row");
    const auto fields = split(line);
    if (fields.size() != 1 + 2 * m)
      throw Error(ErrorKind::format, "snapshot row " + std::to_string(k) + " has " + std::to_string(fields.size()) +
                                         " fields, expected " + std::to_string(1 + 2 * m));
    FieldState s = FieldState::zero(grid, spec);
    s.t = parse_double(fields[0], "t");
    for (std::size_t j = 0; j < m; ++j) {
      s.v[j] = parse_double(fields[1 + j], "v");
      s.w[j] = parse_double(fields[1 + m + j], "w");
    }
    if (!traj.states.empty() && !(s.t > traj.states.back().t))
      throw Error(ErrorKind::format, "snapshot times must increase");
    traj.states.push_back(std::move(s));
  }
  std::string rest;
  while (std::getline(in, rest))
    if (!rest.empty() && rest != "\r") throw Error(ErrorKind::format, "trailing data after the last snapshot");
  return traj;
}

Trajectory read_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::format, "cannot open '" + path.string() + "'");
  return read_trajectory(in);
}

void write_diagnostics(std::ostream& out, const DiagnosticsReport& r) {
  precise(out);
  out << kDiagnosticsMagic << '\n'
      << "t,energy,sup_u,l2_grad,h1_grad,a_density,morawetz_density,sup_du,l2_grad2,l2_f,sobolev_ratio\n";
  for (const NormSnapshot& s : r.snapshots) {
    out << s.t << ',' << s.energy << ',' << s.sup_u << ',' << s.l2_grad << ',' << s.h1_grad << ',' << s.a_density
        << ',' << s.morawetz_density << ',' << s.sup_du << ',' << s.l2_grad2 << ',' << s.l2_f << ','
        << s.sobolev_ratio << '\n';
  }
  out << "# aggregates\n"
      << "A," << r.A << '\n'
      << "B," << r.B << '\n'
      << "D," << r.D << '\n'
      << "E," << r.E << '\n'
      << "flux," << r.morawetz_flux << '\n'
      << "energy_drift," << r.energy_drift << '\n'
      << "sobolev_ratio_max," << r.sobolev_ratio_max << '\n'
      << "strichartz_lhs," << r.strichartz_lhs << '\n'
      << "strichartz_rhs," << r.strichartz_rhs << '\n';
}

DiagnosticsReport read_diagnostics(std::istream& in) {
  if (next_line(in, "magic") != kDiagnosticsMagic) throw Error(ErrorKind::format, "not a radnlw diagnostics file");
  next_line(in, "column header");
  DiagnosticsReport r;
  std::string line;
  bool footer = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "# aggregates") {
      footer = true;
      continue;
    }
    const auto f = split(line);
    if (!footer) {
      if (f.size() != 11) throw Error(ErrorKind::format, "diagnostics row needs 11 fields");
      NormSnapshot s;
      double* slots[] = {&s.t,      &s.energy,           &s.sup_u,  &s.l2_grad,  &s.h1_grad, &s.a_density,
                         &s.morawetz_density, &s.sup_du, &s.l2_grad2, &s.l2_f,   &s.sobolev_ratio};
      for (std::size_t i = 0; i < f.size(); ++i) *slots[i] = parse_double(f[i], "diagnostics field");
      r.snapshots.push_back(s);
      continue;
    }
    if (f.size() != 2) throw Error(ErrorKind::format, "aggregate line needs key,value");
    const double v = parse_double(f[1], "aggregate");
    if (f[0] == "A") r.A = v;
    else if (f[0] == "B") r.B = v;
    else if (f[0] == "D") r.D = v;
    else if (f[0] == "E") r.E = v;
    else if (f[0] == "flux") r.morawetz_flux = v;
    else if (f[0] == "energy_drift") r.energy_drift = v;
    else if (f[0] == "sobolev_ratio_max") r.sobolev_ratio_max = v;
    else if (f[0] == "strichartz_lhs") r.strichartz_lhs = v;
    else if (f[0] == "strichartz_rhs") r.strichartz_rhs = v;
    else throw Error(ErrorKind::format, "unknown aggregate '" + std::string(f[0]) + "'");
  }
  if (!footer) throw Error(ErrorKind::format, "missing aggregates block");
  return r;
}

void write_certificate_text(std::ostream& out, const SubdivisionCertificate& cert, const CertificateCheck& check,
                            const CertifierConstants& k, const std::string& cbound_line) {
  precise(out);
  out << kCertificateMagic << '\n'
      << "verdict = " << (check.verdict.pass ? "pass" : "fail") << '\n'
      << "failing_clause = " << to_string(check.verdict.clause) << '\n'
      << "failing_interval = " << (check.verdict.pass ? std::string("-") : std::to_string(check.verdict.interval))
      << '\n'
      << "intervals = " << cert.intervals() << '\n'
      << "D = " << cert.D << '\n'
      << "A_total = " << cert.total_A << '\n'
      << "eps0 = " << k.eps0 << '\n'
      << "C0 = " << k.C0 << '\n'
      << "kappa = " << k.kappa << '\n'
      << "kappa_B = " << k.kappa_B << '\n'
      << "final_growth = " << (check.final_growth_ok ? "ok" : "FAIL") << '\n'
      << "cbound = " << cbound_line << '\n'
      << "# n t_n t_n+1 threshold measured_A D_n measured_D B_n (i) (ii) (iii)\n";
  for (std::size_t n = 0; n < check.intervals.size(); ++n) {
    const IntervalCheck& c = check.intervals[n];
    out << n << ' ' << c.t0 << ' ' << c.t1 << ' ' << c.threshold << ' ' << c.A << ' ' << c.D_bound << ' '
        << c.D_measured << ' ' << c.B << ' ' << (c.threshold_ok ? "ok" : "FAIL") << ' '
        << (c.growth_ok ? "ok" : "FAIL") << ' ' << (c.strichartz_ok ? "ok" : "FAIL") << '\n';
  }
}

void write_certificate_csv(std::ostream& out, const SubdivisionCertificate& cert, const CertificateCheck& check) {
  precise(out);
  out << "n,t_n,t_n1,threshold,measured_A,D_n,measured_D,B_n,clause_i,clause_ii,clause_iii\n";
  for (std::size_t n = 0; n < check.intervals.size(); ++n) {
    const IntervalCheck& c = check.intervals[n];
    out << n << ',' << c.t0 << ',' << c.t1 << ',' << cert.thresholds.at(n) << ',' << cert.measured_A.at(n) << ','
        << cert.D_bounds.at(n) << ',' << cert.measured_D.at(n) << ',' << c.B << ',' << (c.threshold_ok ? 1 : 0)
        << ',' << (c.growth_ok ? 1 : 0) << ',' << (c.strichartz_ok ? 1 : 0) << '\n';
  }
}

SubdivisionCertificate read_certificate_csv(std::istream& in) {
  const std::string header = next_line(in, "certificate header");
  if (header.rfind("n,t_n,t_n1,", 0) != 0) throw Error(ErrorKind::format, "not a certificate CSV");
  SubdivisionCertificate cert;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 11) throw Error(ErrorKind::format, "certificate row needs 11 fields");
    const double t0 = parse_double(f[1], "t_n");
    const double t1 = parse_double(f[2], "t_n1");
    if (cert.breakpoints.empty()) cert.breakpoints.push_back(t0);
    if (cert.breakpoints.back() != t0) throw Error(ErrorKind::format, "certificate intervals are not contiguous");
    cert.breakpoints.push_back(t1);
    cert.thresholds.push_back(parse_double(f[3], "threshold"));
    cert.measured_A.push_back(parse_double(f[4], "measured_A"));
    cert.D_bounds.push_back(parse_double(f[5], "D_n"));
    cert.measured_D.push_back(parse_double(f[6], "measured_D"));
  }
  if (cert.breakpoints.empty()) throw Error(ErrorKind::format, "certificate has no intervals");
  cert.D = cert.D_bounds.front();
  for (double a : cert.measured_A) cert.total_A += a;
  return cert;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(ErrorKind::config, "cannot write '" + tmp.string() + "'");
    out << text;
    if (!out) throw Error(ErrorKind::config, "write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace radnlw::io

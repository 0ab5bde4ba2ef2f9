#include "radnlw/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radnlw/error.hpp"

namespace radnlw {
namespace {

constexpr std::size_t kMaxIntervals = 1'000'000'000;

// log(2 + exp(x)) without overflow.
double log_two_plus_exp(double x) {
  if (x > 30.0) return x + std::log1p(2.0 * std::exp(-x));
  return std::log(2.0 + std::exp(x));
}

double growth_bound(double D, std::size_t n, const CertifierConstants& k) {
  return D * std::pow(k.C0, static_cast<double>(n));
}

// Upper bound on sum_{n<M} threshold(n). Terms before C0^n D reaches 2 are at
// most eps0 / log 2; the tail is bounded by its first term plus the integral.
double threshold_sum_upper(double D, double M, const CertifierConstants& k) {
  const double ln2 = std::log(2.0);
  if (D <= 0.0) return M * k.eps0 / ln2;
  const double lnC = std::log(k.C0), lnD = std::log(D);
  const double n0 = std::max(0.0, std::ceil((ln2 - lnD) / lnC));
  if (n0 >= M) return M * k.eps0 / ln2;
  const double x0 = n0 * lnC + lnD, x1 = (M - 1.0) * lnC + lnD;
  return n0 * k.eps0 / ln2 + k.eps0 / x0 + k.eps0 / lnC * std::log(x1 / x0);
}

bool same_time(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(b)); }

}  // namespace

void CertifierConstants::validate() const {
  if (!(eps0 > 0.0)) throw Error(ErrorKind::config, "certifier.eps0: must be positive");
  if (!(C0 > 1.0)) throw Error(ErrorKind::config, "certifier.C0: must exceed 1");
  if (!(kappa > 0.0)) throw Error(ErrorKind::config, "certifier.kappa: must be positive");
  if (!(kappa_B > 0.0)) throw Error(ErrorKind::config, "certifier.kappa_B: must be positive");
  if (!(kappa_A > 0.0)) throw Error(ErrorKind::config, "certifier.kappa_A: must be positive");
  if (!(cbound_margin > 0.0)) throw Error(ErrorKind::config, "certifier.cbound_margin: must be positive");
}

double subdivision_threshold(double D, std::size_t n, const CertifierConstants& k) {
  if (D <= 0.0) return k.eps0 / std::log(2.0);
  const double x = static_cast<double>(n) * std::log(k.C0) + std::log(D);
  return k.eps0 / log_two_plus_exp(x);
}

SubdivisionPlan plan_subdivision(double A_total, double D, const CertifierConstants& k) {
  SubdivisionPlan plan;
  if (threshold_sum_upper(D, static_cast<double>(kMaxIntervals), k) <= A_total)
    throw Error(ErrorKind::resolution, "subdivision needs more than 1e9 intervals");
  double sum = 0.0;
  std::size_t n = 0;
  while (!(sum > A_total)) {
    if (n >= kMaxIntervals) throw Error(ErrorKind::resolution, "subdivision needs more than 1e9 intervals");
    sum += subdivision_threshold(D, n, k);
    ++n;
  }
  plan.intervals = std::max<std::size_t>(n, 1);
  const double cap = std::pow(2.0 + D, k.kappa * A_total);
  plan.cap = std::isfinite(cap) ? cap : std::numeric_limits<double>::max();
  return plan;
}

std::string_view to_string(Clause clause) noexcept {
  switch (clause) {
    case Clause::none: return "none";
    case Clause::threshold: return "(i) threshold";
    case Clause::growth: return "(ii) growth";
    case Clause::strichartz: return "(iii) strichartz";
  }
  return "unknown";
}

SubdivisionCertificate greedy_partition(const NormSeries& series, const CertifierConstants& k) {
  k.validate();
  if (series.size() == 0) throw Error(ErrorKind::mismatch, "empty trajectory");
  SubdivisionCertificate cert;
  cert.D = series[0].h1_grad;
  const std::size_t last = series.size() - 1;
  cert.total_A = series.a_integral(series.whole());

  std::vector<std::size_t> cuts{0};
  std::size_t start = 0;
  while (start < last) {
    const double threshold = subdivision_threshold(cert.D, cuts.size() - 1, k);
    std::size_t end = start;
    double acc = 0.0;
    while (end < last) {
      const double next = acc + series.a_integral({end, end + 1});
      if (!(next <= threshold)) break;
      acc = next;
      ++end;
    }
    if (end == start)
      throw Error(ErrorKind::resolution, "snapshot increment at t = " + std::to_string(series[start].t) +
                                             " exceeds threshold " + std::to_string(threshold));
    cuts.push_back(end);
    start = end;
  }
  if (cuts.size() == 1) cuts.push_back(0);  // single snapshot: one zero-length interval

  for (std::size_t i = 0; i < cuts.size(); ++i) {
    cert.snapshot_index.push_back(cuts[i]);
    cert.breakpoints.push_back(series[cuts[i]].t);
    cert.measured_D.push_back(series[cuts[i]].h1_grad);
    cert.D_bounds.push_back(growth_bound(cert.D, i, k));
  }
  for (std::size_t n = 0; n + 1 < cuts.size(); ++n) {
    cert.thresholds.push_back(subdivision_threshold(cert.D, n, k));
    cert.measured_A.push_back(series.a_integral({cuts[n], cuts[n + 1]}));
  }
  cert.verdict = verify_certificate(series, cert, k).verdict;
  return cert;
}

SubdivisionCertificate greedy_partition(const Trajectory& trajectory, const CertifierConstants& k) {
  if (trajectory.status != RunStatus::completed)
    throw Error(ErrorKind::mismatch, "certificates need a completed trajectory");
  return greedy_partition(NormSeries(trajectory), k);
}

CertificateCheck verify_certificate(const NormSeries& series, const SubdivisionCertificate& cert,
                                    const CertifierConstants& k) {
  k.validate();
  const std::size_t bps = cert.breakpoints.size();
  if (bps < 2 || series.size() == 0) throw Error(ErrorKind::mismatch, "certificate has no intervals");
  if (!cert.thresholds.empty() && cert.thresholds.size() != bps - 1)
    throw Error(ErrorKind::mismatch, "threshold count does not match the intervals");

  // Locate each breakpoint among the snapshot times.
  std::vector<std::size_t> index;
  std::size_t cursor = 0;
  for (double t : cert.breakpoints) {
    while (cursor < series.size() && !same_time(series[cursor].t, t) && series[cursor].t < t) ++cursor;
    if (cursor == series.size() || !same_time(series[cursor].t, t))
      throw Error(ErrorKind::mismatch, "breakpoint " + std::to_string(t) + " is not a snapshot time");
    if (!index.empty() && cursor <= index.back() && !(series.size() == 1))
      throw Error(ErrorKind::mismatch, "breakpoints must be strictly increasing");
    index.push_back(cursor);
  }
  if (index.front() != 0 || index.back() != series.size() - 1)
    throw Error(ErrorKind::mismatch, "breakpoints do not span the trajectory");

  const double D = series[0].h1_grad;
  CertificateCheck out;
  for (std::size_t n = 0; n + 1 < bps; ++n) {
    IntervalCheck c;
    const Window w{index[n], index[n + 1]};
    c.t0 = series[w.first].t;
    c.t1 = series[w.last].t;
    c.threshold = subdivision_threshold(D, n, k);
    if (!cert.thresholds.empty()) c.threshold = std::min(c.threshold, cert.thresholds[n]);
    c.A = series.a_integral(w);
    c.D_bound = growth_bound(D, n, k);
    c.D_measured = series[w.first].h1_grad;
    c.B = norm_B(series, w);
    c.threshold_ok = c.A <= c.threshold;
    c.growth_ok = c.D_measured <= c.D_bound;
    c.strichartz_ok = c.B <= k.kappa_B * c.D_bound;
    if (out.verdict.pass) {
      const Clause failed = !c.threshold_ok ? Clause::threshold
                            : !c.growth_ok  ? Clause::growth
                            : !c.strichartz_ok ? Clause::strichartz
                                               : Clause::none;
      if (failed != Clause::none) out.verdict = {false, failed, n};
    }
    out.intervals.push_back(c);
  }
  const std::size_t N = bps - 1;
  out.final_growth_ok = series[index.back()].h1_grad <= growth_bound(D, N, k);
  if (out.verdict.pass && !out.final_growth_ok) out.verdict = {false, Clause::growth, N};
  return out;
}

CboundCheck check_cbound(const DiagnosticsReport& report, double margin) {
  const double B = report.B;
  const double denom = report.D + std::sqrt(report.A) * B * std::sqrt(std::log(2.0 + B * B));
  if (!(denom >= 1e-14)) throw Error(ErrorKind::degenerate, "cbound denominator below 1e-14");
  CboundCheck c;
  c.ratio = B / denom;
  c.pass = c.ratio <= margin;
  return c;
}

DoubleExpBound double_exp_bound(double D, double A, const CertifierConstants& k) {
  const double base = 2.0 + D;
  const double exponent = std::pow(base, k.kappa * A);
  const double value = std::pow(base, exponent);
  if (!std::isfinite(value)) return {std::numeric_limits<double>::max(), true};
  return {value, false};
}

}  // namespace radnlw

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "radnlw/diagnostics.hpp"
#include "radnlw/solver.hpp"

namespace radnlw {

/// Constants of the subdivision argument. The argument only fixes them up to
/// absolute constants; these defaults were calibrated against the standard
/// defocusing suite (see tests/suite.hpp) and are frozen.
struct CertifierConstants {
  double eps0 = 0.01;  // smallness constant of the per-interval threshold
  double C0 = 2.0;     // per-interval growth of the H^1 norm
  /// Exponent constant in N <= (2 + D)^(kappa A) and in the double-exponential
  /// bound. Any kappa >= ln 2 / eps0 makes the interval-count cap hold.
  double kappa = 75.0;
  double kappa_B = 2.5;        // per-interval B_n <= kappa_B D_n
  double kappa_A = 1.0;        // B <= double_exp_bound(D, kappa_A A)
  double cbound_margin = 2.0;  // B / (D + A^{1/2} B log^{1/2}(2 + B^2)) <= margin

  /// Throws Error(config) naming the offending field.
  void validate() const;
};

/// eps0 / log(2 + C0^n D), evaluated in log space so large n does not overflow.
double subdivision_threshold(double D, std::size_t n, const CertifierConstants& k);

struct SubdivisionPlan {
  std::size_t intervals = 1;  // least N >= 1 with sum_{n<N} threshold(n) > A
  double cap = 1.0;           // (2 + D)^(kappa A)
};

/// Direct summation. Throws Error(resolution) if N would exceed 1e9.
SubdivisionPlan plan_subdivision(double A_total, double D, const CertifierConstants& k);

enum class Clause {
  none,
  threshold,   // (i)   A over interval n <= eps0 / log(2 + D_n)
  growth,      // (ii)  ||grad u(t_n)||_{H^1} <= D_n = C0^n D
  strichartz,  // (iii) B over interval n <= kappa_B D_n
};

std::string_view to_string(Clause clause) noexcept;

struct Verdict {
  bool pass = true;
  Clause clause = Clause::none;
  std::size_t interval = 0;
};

struct SubdivisionCertificate {
  std::vector<double> breakpoints;           // t_0 < ... < t_N
  std::vector<std::size_t> snapshot_index;   // snapshot of each breakpoint
  std::vector<double> thresholds;            // per interval
  std::vector<double> measured_A;            // per interval
  std::vector<double> measured_D;            // per breakpoint
  std::vector<double> D_bounds;              // per breakpoint, C0^n D
  double D = 0.0;
  double total_A = 0.0;
  Verdict verdict;

  std::size_t intervals() const noexcept { return breakpoints.empty() ? 0 : breakpoints.size() - 1; }
};

/// Left-to-right sweep closing interval n at the last snapshot where the
/// accumulated A stays <= threshold(n). Throws Error(resolution) when a single
/// snapshot increment already exceeds the current threshold.
SubdivisionCertificate greedy_partition(const NormSeries& series, const CertifierConstants& k);
SubdivisionCertificate greedy_partition(const Trajectory& trajectory, const CertifierConstants& k);

struct IntervalCheck {
  double t0 = 0.0, t1 = 0.0;
  double threshold = 0.0;
  double A = 0.0;
  double D_bound = 0.0;
  double D_measured = 0.0;
  double B = 0.0;
  bool threshold_ok = true;
  bool growth_ok = true;
  bool strichartz_ok = true;
};

struct CertificateCheck {
  Verdict verdict;
  std::vector<IntervalCheck> intervals;
  bool final_growth_ok = true;  // clause (ii) at t_N
};

/// Recomputes every per-interval quantity from the trajectory and checks the
/// three clauses in interval order; the first failure is reported. Stored
/// thresholds looser than the recomputed ones do not help: clause (i) uses
/// the smaller of the two. Throws Error(mismatch) when the breakpoints are not
/// snapshot times spanning the trajectory.
CertificateCheck verify_certificate(const NormSeries& series, const SubdivisionCertificate& cert,
                                    const CertifierConstants& k);

struct CboundCheck {
  double ratio = 0.0;
  bool pass = false;
};

/// ratio = B / (D + A^{1/2} B log^{1/2}(2 + B^2)); passes if ratio <= margin.
/// Throws Error(degenerate) when the denominator is below 1e-14.
CboundCheck check_cbound(const DiagnosticsReport& report, double margin);

struct DoubleExpBound {
  double value = 0.0;
  bool saturated = false;  // true value exceeds the double range; value is DBL_MAX
};

/// (2 + D)^((2 + D)^(kappa A)).
DoubleExpBound double_exp_bound(double D, double A, const CertifierConstants& k);

}  // namespace radnlw

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "radnlw/radial_field.hpp"

namespace radnlw {

struct SolveConfig {
  double t_final = 1.0;
  double cfl = 0.5;
  std::size_t record_stride = 1;
  double overflow_threshold = 1e30;
  /// Reject data whose light cone reaches r_max before t_final.
  bool enforce_light_cone = true;

  void validate() const;
};

enum class RunStatus { completed, overflowed, cone_violation };

std::string_view to_string(RunStatus status) noexcept;
std::optional<RunStatus> parse_run_status(std::string_view text) noexcept;

struct Trajectory {
  std::vector<FieldState> states;
  double dt = 0.0;
  std::size_t record_stride = 1;
  RunStatus status = RunStatus::completed;

  const FieldState& initial() const { return states.front(); }
  const FieldState& final() const { return states.back(); }
  std::size_t size() const noexcept { return states.size(); }
};

/// Explicit leapfrog for v_tt = v_rr - r f(v / r) with v(t, 0) = v(t, r_max) = 0.
///
/// Keeps three time levels so that the state at the current level can report
/// the centered time derivative w = (v_{k+1} - v_{k-1}) / (2 dt). Level 1 is
/// produced by the second-order Taylor start
///   v(dt) = v + dt w + dt^2 / 2 (v_rr - r f(v / r)).
class Leapfrog {
 public:
  Leapfrog(FieldState initial, double dt, double overflow_threshold = 1e30);

  /// Moves to the next level. Returns false once that level has overflowed.
  bool advance();

  /// State at the current level. Time is t0 + k dt; w is the exact initial
  /// velocity at k = 0 and a centered difference afterwards.
  FieldState state() const;

  std::size_t level() const noexcept { return level_; }
  double dt() const noexcept { return dt_; }
  bool overflowed() const noexcept { return current_overflowed_; }

 private:
  void compute_force(const std::vector<double>& v);
  bool exceeds_threshold(const std::vector<double>& v) const;

  FieldState base_;
  double dt_;
  double threshold_;
  std::size_t level_ = 0;
  std::vector<double> r_;
  std::vector<double> force_;
  std::vector<double> prev_, curr_, next_;
  bool current_overflowed_ = false;
  bool next_overflowed_ = false;
};

/// One step from (v, w) via the Taylor start. The result is flagged
/// `overflowed` when any |v| exceeds `overflow_threshold`.
FieldState step(const FieldState& state, double dt, double overflow_threshold = 1e30);

/// dt = t_final / K with K the smallest multiple of record_stride such that
/// dt <= cfl * dr, so the final snapshot lands on t_final.
double time_step(const RadialGrid& grid, const SolveConfig& config);
std::size_t step_count(const RadialGrid& grid, const SolveConfig& config);

/// Throws Error(cone_violation) before stepping when the data support plus
/// t_final exceeds r_max (unless the check is disabled). Overflow mid-run
/// returns status overflowed and only the snapshots recorded before it.
Trajectory evolve(const FieldState& initial, const SolveConfig& config);

struct ConvergenceReport {
  std::vector<std::size_t> cells;
  /// Max-norm error against the exact solution per level, or the difference
  /// between consecutive levels for self-convergence.
  std::vector<double> differences;
  std::vector<double> orders;
  double order = 0.0;
  bool exact = false;  // all differences vanish identically
};

/// Exact reduced solution v(t, r), when known.
using ReducedSolution = std::function<double(double t, double r)>;

/// Runs the problem on base_n, 2 base_n, ... cells and returns the observed
/// order of the finest pair. Without `reference` the order comes from
/// self-convergence and at least three levels are required.
ConvergenceReport convergence_order(const InitialData& data, const NonlinearitySpec& spec, double r_max,
                                    std::size_t base_n, std::size_t levels, const SolveConfig& config,
                                    const ReducedSolution& reference = {});

}  // namespace radnlw

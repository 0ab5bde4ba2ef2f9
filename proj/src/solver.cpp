#include "radnlw/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "radnlw/error.hpp"
#include "radnlw/kernels.hpp"

namespace radnlw {

void SolveConfig::validate() const {
  if (!(t_final > 0.0)) throw Error(ErrorKind::config, "solve.t_final: must be positive");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw Error(ErrorKind::config, "solve.cfl: must lie in (0, 1]");
  if (record_stride == 0) throw Error(ErrorKind::config, "solve.record_stride: must be positive");
  if (!(overflow_threshold > 0.0)) throw Error(ErrorKind::config, "solve.overflow_threshold: must be positive");
}

std::string_view to_string(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::overflowed: return "overflowed";
    case RunStatus::cone_violation: return "cone-violation";
  }
  return "unknown";
}

std::optional<RunStatus> parse_run_status(std::string_view text) noexcept {
  for (auto s : {RunStatus::completed, RunStatus::overflowed, RunStatus::cone_violation})
    if (to_string(s) == text) return s;
  return std::nullopt;
}

Leapfrog::Leapfrog(FieldState initial, double dt, double overflow_threshold)
    : base_(std::move(initial)), dt_(dt), threshold_(overflow_threshold) {
  const RadialGrid& g = base_.grid;
  const std::size_t m = g.size();
  r_ = g.nodes();
  force_.assign(m, 0.0);
  prev_.assign(m, 0.0);
  curr_ = base_.v;
  next_.assign(m, 0.0);
  curr_.front() = curr_.back() = 0.0;
  current_overflowed_ = base_.overflowed || exceeds_threshold(curr_);

  // Taylor start.
  compute_force(curr_);
  const double inv_dr2 = 1.0 / (g.dr() * g.dr());
  const double half_dt2 = 0.5 * dt_ * dt_;
  for (std::size_t j = 1; j + 1 < m; ++j) {
    const double lap = ((curr_[j + 1] + curr_[j - 1]) - 2.0 * curr_[j]) * inv_dr2;
    next_[j] = curr_[j] + dt_ * base_.w[j] + half_dt2 * (lap - force_[j]);
  }
  next_overflowed_ = exceeds_threshold(next_);
}

void Leapfrog::compute_force(const std::vector<double>& v) {
  if (!base_.spec.enabled) return;  // force_ stays zero
  const std::size_t m = v.size();
  for (std::size_t j = 1; j + 1 < m; ++j) force_[j] = r_[j] * eval_f(base_.spec, v[j] / r_[j]);
}

bool Leapfrog::exceeds_threshold(const std::vector<double>& v) const {
  return !(kernels::max_abs(v) <= threshold_);
}

bool Leapfrog::advance() {
  if (current_overflowed_) return false;
  prev_.swap(curr_);
  curr_.swap(next_);
  current_overflowed_ = next_overflowed_;
  ++level_;
  if (current_overflowed_) return false;

  compute_force(curr_);
  const double inv_dr2 = 1.0 / (base_.grid.dr() * base_.grid.dr());
  kernels::leapfrog_update(next_, curr_, prev_, force_, dt_ * dt_, inv_dr2);
  next_.front() = next_.back() = 0.0;
  next_overflowed_ = exceeds_threshold(next_);
  return true;
}

FieldState Leapfrog::state() const {
  FieldState s;
  s.grid = base_.grid;
  s.spec = base_.spec;
  s.t = base_.t + static_cast<double>(level_) * dt_;
  s.v = curr_;
  s.overflowed = current_overflowed_;
  if (level_ == 0) {
    s.w = base_.w;
  } else {
    s.w.assign(curr_.size(), 0.0);
    kernels::centered_difference(s.w, next_, prev_, 1.0 / (2.0 * dt_));
  }
  s.w.front() = s.w.back() = 0.0;
  return s;
}

FieldState step(const FieldState& state, double dt, double overflow_threshold) {
  if (!(dt > 0.0) || dt > state.grid.dr())
    throw Error(ErrorKind::config, "step: dt must lie in (0, dr]");
  Leapfrog lf(state, dt, overflow_threshold);
  lf.advance();
  return lf.state();
}

std::size_t step_count(const RadialGrid& grid, const SolveConfig& config) {
  const double stride = static_cast<double>(config.record_stride);
  const double blocks = std::ceil(config.t_final / (config.cfl * grid.dr() * stride) - 1e-9);
  return static_cast<std::size_t>(std::max(1.0, blocks)) * config.record_stride;
}

double time_step(const RadialGrid& grid, const SolveConfig& config) {
  return config.t_final / static_cast<double>(step_count(grid, config));
}

Trajectory evolve(const FieldState& initial, const SolveConfig& config) {
  config.validate();
  const RadialGrid& grid = initial.grid;
  if (config.enforce_light_cone) {
    const double extent = support_extent(initial);
    if (extent + config.t_final > grid.r_max())
      throw Error(ErrorKind::cone_violation, "support " + std::to_string(extent) + " + t_final " +
                                                 std::to_string(config.t_final) + " exceeds r_max " +
                                                 std::to_string(grid.r_max()));
  }

  const std::size_t steps = step_count(grid, config);
  Trajectory traj;
  traj.dt = config.t_final / static_cast<double>(steps);
  traj.record_stride = config.record_stride;

  Leapfrog lf(initial, traj.dt, config.overflow_threshold);
  if (lf.overflowed()) {
    traj.status = RunStatus::overflowed;
    return traj;
  }
  traj.states.push_back(lf.state());
  for (std::size_t k = 1; k <= steps; ++k) {
    if (!lf.advance()) {
      traj.status = RunStatus::overflowed;
      return traj;
    }
    if (k % config.record_stride == 0) traj.states.push_back(lf.state());
  }
  traj.status = RunStatus::completed;
  return traj;
}

ConvergenceReport convergence_order(const InitialData& data, const NonlinearitySpec& spec, double r_max,
                                    std::size_t base_n, std::size_t levels, const SolveConfig& config,
                                    const ReducedSolution& reference) {
  if (levels < 2) throw Error(ErrorKind::config, "convergence: levels must be at least 2");
  if (!reference && levels < 3)
    throw Error(ErrorKind::config, "convergence: self-convergence needs at least 3 levels");

  std::vector<FieldState> finals;
  ConvergenceReport report;
  for (std::size_t level = 0; level < levels; ++level) {
    const std::size_t n = base_n << level;
    const RadialGrid grid(r_max, n);
    Trajectory traj = evolve(sample_initial(grid, spec, data), config);
    if (traj.status != RunStatus::completed)
      throw Error(ErrorKind::resolution, "convergence run at n = " + std::to_string(n) + " did not complete");
    report.cells.push_back(n);
    finals.push_back(std::move(traj.states.back()));
  }

  if (reference) {
    for (const FieldState& s : finals) {
      double err = 0.0;
      for (std::size_t j = 0; j < s.v.size(); ++j)
        err = std::max(err, std::fabs(s.v[j] - reference(s.t, s.grid.node(j))));
      report.differences.push_back(err);
    }
  } else {
    for (std::size_t level = 0; level + 1 < finals.size(); ++level) {
      const FieldState& coarse = finals[level];
      const FieldState& fine = finals[level + 1];
      double diff = 0.0;
      for (std::size_t j = 0; j < coarse.v.size(); ++j)
        diff = std::max(diff, std::fabs(coarse.v[j] - fine.v[2 * j]));
      report.differences.push_back(diff);
    }
  }

  report.exact = std::all_of(report.differences.begin(), report.differences.end(),
                             [](double d) { return d == 0.0; });
  if (report.exact) {
    report.order = std::numeric_limits<double>::infinity();
    return report;
  }
  for (std::size_t k = 0; k + 1 < report.differences.size(); ++k)
    report.orders.push_back(std::log2(report.differences[k] / report.differences[k + 1]));
  report.order = report.orders.back();
  return report;
}

}  // namespace radnlw

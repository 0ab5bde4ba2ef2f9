#pragma once

// The standard defocusing suite: the runs every regression constant in
// CertifierConstants and RunConfig::morawetz_C was calibrated against.

#include <string>
#include <vector>

#include "radnlw/config.hpp"
#include "radnlw/diagnostics.hpp"
#include "radnlw/solver.hpp"

namespace radnlw::testing {

struct SuiteCase {
  std::string name;
  RunConfig config;
};

inline RunConfig suite_base(std::size_t n = 1024) {
  RunConfig c;
  c.r_max = 12.0;
  c.n = n;
  c.solve.t_final = 6.0;
  c.solve.cfl = 0.5;
  c.solve.record_stride = 1;
  c.data.profile = "gaussian-bump";
  c.data.params.width = 1.0;
  c.data.params.support_radius = 4.0;
  return c;
}

// level doubles every grid once per step.
inline std::vector<SuiteCase> standard_suite(unsigned level = 0) {
  const std::size_t n = std::size_t{1024} << level;
  std::vector<SuiteCase> out;
  for (double a : {0.25, 0.5, 0.75}) {
    RunConfig c = suite_base(n);
    c.data.params.amplitude = a;
    out.push_back({"gaussian a=" + std::to_string(a).substr(0, 4), c});
  }
  {
    // A is large enough here that one snapshot step at n=1024 exceeds the
    // per-interval threshold, so this case starts one level finer.
    RunConfig c = suite_base(2 * n);
    c.data.params.amplitude = 1.0;
    out.push_back({"gaussian a=1.00", c});
  }
  {
    RunConfig c = suite_base(n);
    c.data.params.amplitude = 0.5;
    c.data.params.velocity_amplitude = 0.5;
    out.push_back({"gaussian a=0.5 b=0.5", c});
  }
  {
    RunConfig c = suite_base(n);
    c.data.profile = "polynomial-bump";
    c.data.params.amplitude = 0.6;
    out.push_back({"polynomial a=0.6", c});
  }
  {
    RunConfig c = suite_base(n);
    c.data.params.amplitude = 0.8;
    c.data.params.width = 0.6;
    c.data.params.support_radius = 3.0;
    out.push_back({"narrow gaussian a=0.8", c});
  }
  return out;
}

inline Trajectory run_case(const RunConfig& c) {
  return evolve(sample_initial(c.grid(), c.nonlinearity, c.initial_data()), c.solve);
}

}  // namespace radnlw::testing

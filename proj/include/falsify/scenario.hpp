#pragma once

#include <vector>

#include "falsify/sim.hpp"

namespace falsify {

/// Physical ranges the normalized action maps onto. The paper-style bounds
/// for the front acceleration come from SimConfig.
struct RangeConfig {
  double v0_min = 5.0;    // initial speed range (m/s), host and tied front
  double v0_max = 40.0;
  double d0_min = 5.0;    // initial gap range (m)
  double d0_max = 120.0;
  double t_seg_min = 0.5; // minimum segment duration (s)
  int n_segments = 5;

  // When set, the action carries a dedicated slot for the front vehicle's
  // initial speed; otherwise v_f0 = v_h0.
  bool front_v0_slot = false;

  int action_dim() const { return 2 + (front_v0_slot ? 1 : 0) + 2 * n_segments; }
  void validate(const SimConfig& cfg) const;
};

/// Normalized action vector, every component clamped to [-1, 1].
/// Layout: [v0, d0, (v_f0,) a_1..a_n, tau_1..tau_n].
struct Action {
  std::vector<double> v;

  static Action clamped(std::vector<double> raw);
  std::size_t dim() const { return v.size(); }
  double operator[](std::size_t i) const { return v[i]; }
};

/// Trace summary fed to the learning agent.
struct AgentState {
  double a_min = 0.0;        // host acceleration extrema over the trace
  double a_max = 0.0;
  double t_h_min_obs = 0.0;  // minimum time headway
  double v_min_obs = 0.0;    // host velocity extrema
  double v_max_obs = 0.0;

  std::vector<double> to_vector() const;
  static AgentState from_vector(const std::vector<double>& v);
};

/// Decodes a normalized action into physical scenario parameters. Segment
/// durations are positive by construction and renormalized so they sum to
/// t_dur exactly.
ScenarioParams f_act(const Action& a, const RangeConfig& rc,
                     const SimConfig& cfg);

/// Inverse of f_act for in-range parameters (used for round-trip checks
/// and warm starts from explicit scenarios).
Action f_act_inverse(const ScenarioParams& p, const RangeConfig& rc,
                     const SimConfig& cfg);

/// Componentwise extrema of host acceleration, headway and host velocity.
AgentState f_eval(const Trace& tr);

/// Residuals of the scenario constraints: index 0 is the duration-sum
/// residual (sum t_i - t_dur); the rest are nonnegative range violations
/// for v_h0, v_f0, d0, each segment acceleration and each segment
/// duration. All zero when the constraints hold.
std::vector<double> constraint_residuals(const ScenarioParams& p,
                                         const RangeConfig& rc,
                                         const SimConfig& cfg);

}  // namespace falsify

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace falsify {

/// Time headway h/v is capped at this value once the host velocity drops
/// below kVelocityEps, so robustness values stay bounded.
inline constexpr double kHeadwayCap = 1e3;
inline constexpr double kVelocityEps = 1e-3;

struct VehicleState {
  double s = 0.0;  // position (m)
  double v = 0.0;  // velocity (m/s)
};

struct SimConfig {
  double ts = 0.1;     // sampling time (s)
  double t_dur = 30.0; // scenario duration (s)

  // Host friction term in v' = (1-alpha)*v + ts*u. The default -0.01 makes
  // (1-alpha) = 1.01, i.e. it amplifies velocity rather than damping it;
  // implemented as configured, set to 0 to recover the plain kinematics.
  double friction_alpha = -0.01;

  double a_h_min = -3.5;         // host accel bounds (m/s^2)
  double a_h_max = 2.0;
  double a_f_min = -0.8 * 9.82;  // front accel bounds (m/s^2)
  double a_f_max = 0.4 * 9.82;
  double g_const = 9.82;

  // Clamp vehicles at standstill (exact sub-step stop). Disable to run the
  // raw double-integrator update for oracle comparisons.
  bool standstill_clamp = true;

  int steps() const;
  void validate() const;  // throws std::invalid_argument
};

struct AccelSegment {
  double a = 0.0;  // acceleration (m/s^2)
  double t = 0.0;  // duration (s)
};

/// Physical scenario parametrization: initial states plus the front
/// vehicle's piecewise-constant acceleration profile.
struct ScenarioParams {
  double v_h0 = 0.0;
  double v_f0 = 0.0;
  double d0 = 0.0;  // initial gap, front position minus host position (m)
  std::vector<AccelSegment> segments;

  double duration() const;
  /// Profile value at time t; times past the last segment use its value.
  double accel_at(double t) const;
};

struct Trace {
  double ts = 0.1;
  std::vector<VehicleState> host;
  std::vector<VehicleState> front;
  std::vector<double> u_host;   // commanded (clamped) host accel per sample
  std::vector<double> u_front;
  std::vector<double> gap;      // front.s - host.s
  std::vector<double> headway;  // gap / host.v, capped
  bool collided = false;
  int collision_step = -1;

  std::size_t size() const { return host.size(); }
};

using HostController =
    std::function<double(const VehicleState& host, const VehicleState& front)>;

/// One step of the double-integrator update. If the velocity would cross
/// zero and clamping is on, the position advances only to the exact stop
/// point within the step.
VehicleState step_kinematics(const VehicleState& x, double u, double ts,
                             bool standstill_clamp = true);

/// Host update with the friction term: v' = (1-alpha)*v + ts*u, position
/// advanced as in step_kinematics from the same (s, v, u).
VehicleState step_host_friction(const VehicleState& x, double u,
                                const SimConfig& cfg);

/// Simulates the closed loop over t_dur. Host input is the controller
/// output clamped to the host bounds; the front input follows the profile
/// clamped to the front bounds. Stops early when gap <= 0 and pads the
/// remaining samples with the collision-time values so all sequences keep
/// length steps()+1.
Trace rollout(const ScenarioParams& p, const HostController& controller,
              const SimConfig& cfg, bool use_friction);

double headway_of(double gap, double v);

/// CSV with header t,s_h,v_h,u_h,s_f,v_f,u_f,gap,t_h,collided and 9
/// significant digits per value.
std::string trace_to_csv(const Trace& tr);

}  // namespace falsify

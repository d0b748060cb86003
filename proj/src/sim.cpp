#include "falsify/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace falsify {

int SimConfig::steps() const {
  return static_cast<int>(std::lround(t_dur / ts));
}

void SimConfig::validate() const {
  if (!(ts > 0.0)) throw std::invalid_argument("SimConfig: ts must be > 0");
  if (!(t_dur > 0.0)) throw std::invalid_argument("SimConfig: t_dur must be > 0");
  const double n = t_dur / ts;
  if (std::abs(n - std::lround(n)) > 1e-9 || std::lround(n) < 1)
    throw std::invalid_argument("SimConfig: t_dur/ts must be a positive integer");
  if (!(a_h_min < 0.0 && 0.0 < a_h_max))
    throw std::invalid_argument("SimConfig: need a_h_min < 0 < a_h_max");
  if (!(a_f_min < 0.0 && 0.0 < a_f_max))
    throw std::invalid_argument("SimConfig: need a_f_min < 0 < a_f_max");
}

double ScenarioParams::duration() const {
  double sum = 0.0;
  for (const auto& seg : segments) sum += seg.t;
  return sum;
}

double ScenarioParams::accel_at(double t) const {
  double acc_t = 0.0;
  for (const auto& seg : segments) {
    acc_t += seg.t;
    if (t < acc_t) return seg.a;
  }
  return segments.empty() ? 0.0 : segments.back().a;
}

static double advance_position(double s, double v, double u, double ts,
                               bool standstill_clamp) {
  if (standstill_clamp && v + ts * u < 0.0 && u < 0.0) {
    // vehicle halts within the step: travel v^2 / (2|u|)
    return s + v * v / (2.0 * -u);
  }
  return s + ts * v + 0.5 * ts * ts * u;
}

VehicleState step_kinematics(const VehicleState& x, double u, double ts,
                             bool standstill_clamp) {
  VehicleState out;
  out.s = advance_position(x.s, x.v, u, ts, standstill_clamp);
  out.v = x.v + ts * u;
  if (standstill_clamp) out.v = std::max(0.0, out.v);
  return out;
}

VehicleState step_host_friction(const VehicleState& x, double u,
                                const SimConfig& cfg) {
  VehicleState out;
  out.s = advance_position(x.s, x.v, u, cfg.ts, cfg.standstill_clamp);
  out.v = (1.0 - cfg.friction_alpha) * x.v + cfg.ts * u;
  if (cfg.standstill_clamp) out.v = std::max(0.0, out.v);
  return out;
}

double headway_of(double gap, double v) {
  if (v < kVelocityEps) return kHeadwayCap;
  return gap / v;
}

Trace rollout(const ScenarioParams& p, const HostController& controller,
              const SimConfig& cfg, bool use_friction) {
  cfg.validate();
  if (std::abs(p.duration() - cfg.t_dur) > 1e-9)
    throw std::invalid_argument(
        "rollout: segment durations do not sum to t_dur");

  const int n = cfg.steps();
  Trace tr;
  tr.ts = cfg.ts;
  tr.host.reserve(n + 1);
  tr.front.reserve(n + 1);
  tr.u_host.reserve(n + 1);
  tr.u_front.reserve(n + 1);
  tr.gap.reserve(n + 1);
  tr.headway.reserve(n + 1);

  VehicleState host{0.0, p.v_h0};
  VehicleState front{p.d0, p.v_f0};

  const auto push_sample = [&](const VehicleState& h, const VehicleState& f,
                               double uh, double uf) {
    tr.host.push_back(h);
    tr.front.push_back(f);
    tr.u_host.push_back(uh);
    tr.u_front.push_back(uf);
    const double g = f.s - h.s;
    tr.gap.push_back(g);
    tr.headway.push_back(headway_of(g, h.v));
  };

  for (int k = 0; k <= n; ++k) {
    const double t = k * cfg.ts;
    const double uh =
        std::clamp(controller(host, front), cfg.a_h_min, cfg.a_h_max);
    const double uf = std::clamp(p.accel_at(t), cfg.a_f_min, cfg.a_f_max);
    push_sample(host, front, uh, uf);

    if (front.s - host.s <= 0.0) {
      tr.collided = true;
      tr.collision_step = k;
      // pad to full length with the collision-time values
      while (static_cast<int>(tr.size()) <= n)
        push_sample(host, front, uh, uf);
      return tr;
    }
    if (k == n) break;

    host = use_friction ? step_host_friction(host, uh, cfg)
                        : step_kinematics(host, uh, cfg.ts, cfg.standstill_clamp);
    front = step_kinematics(front, uf, cfg.ts, cfg.standstill_clamp);
  }
  return tr;
}

std::string trace_to_csv(const Trace& tr) {
  std::string out = "t,s_h,v_h,u_h,s_f,v_f,u_f,gap,t_h,collided\n";
  char buf[256];
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const int col =
        tr.collided && static_cast<int>(k) >= tr.collision_step ? 1 : 0;
    std::snprintf(buf, sizeof(buf),
                  "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%d\n",
                  k * tr.ts, tr.host[k].s, tr.host[k].v, tr.u_host[k],
                  tr.front[k].s, tr.front[k].v, tr.u_front[k], tr.gap[k],
                  tr.headway[k], col);
    out += buf;
  }
  return out;
}

}  // namespace falsify

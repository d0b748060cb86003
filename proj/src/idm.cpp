#include "falsify/idm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace falsify {

void IdmParams::validate() const {
  if (!(0.0 < t_h_min && t_h_min < t_h_d && t_h_d < t_h_max))
    throw std::invalid_argument("IdmParams: need 0 < t_h_min < t_h_d < t_h_max");
  if (!(a_h_min < 0.0 && 0.0 < a_h_com && a_h_com <= a_h_max))
    throw std::invalid_argument("IdmParams: need a_h_min < 0 < a_h_com <= a_h_max");
  if (!(v_d > 0.0)) throw std::invalid_argument("IdmParams: v_d must be > 0");
  if (!(d_fh > 0.0)) throw std::invalid_argument("IdmParams: d_fh must be > 0");
  if (!(alpha_exp > 0.0))
    throw std::invalid_argument("IdmParams: alpha_exp must be > 0");
}

Mode mode_of(const VehicleState& /*host*/, double gap, const IdmParams& prm) {
  return prm.v_d <= gap / prm.t_h_d ? Mode::SetSpeed : Mode::TimeGap;
}

double idm_accel(const VehicleState& host, const VehicleState& front,
                 const IdmParams& prm) {
  const double v_h = host.v;
  const double v_f = front.v;
  const double desired_gap =
      prm.s_h0 + v_h * prm.t_h_d +
      v_h * (v_h - v_f) / (2.0 * std::sqrt(prm.a_h_max * prm.a_h_com));
  double denom = prm.d_fh;
  if (prm.textbook_idm) {
    denom = std::max(front.s - host.s, 1e-6);
  }
  const double ratio = desired_gap / denom;
  const double u = prm.a_h_max *
                   (1.0 - std::pow(v_h / prm.v_d, prm.alpha_exp) - ratio * ratio);
  return std::clamp(u, prm.a_h_min, prm.a_h_max);
}

HostController make_idm_controller(const IdmParams& prm) {
  return [prm](const VehicleState& host, const VehicleState& front) {
    return idm_accel(host, front, prm);
  };
}

}  // namespace falsify

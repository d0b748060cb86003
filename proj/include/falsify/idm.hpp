#pragma once

#include "falsify/sim.hpp"

namespace falsify {

struct IdmParams {
  double v_d = 30.0;      // driver desired speed (m/s)
  double t_h_d = 1.5;     // desired time headway (s)
  double t_h_min = 0.8;   // headway bounds (s)
  double t_h_max = 3.0;
  double d_fh = 50.0;     // desired distance between the vehicles (m)
  double a_h_max = 2.0;   // max acceleration magnitude (m/s^2)
  double a_h_com = 1.0;   // comfortable acceleration magnitude (m/s^2)
  double a_h_min = -3.5;  // max deceleration, negative (m/s^2)
  double s_h0 = 2.0;      // minimum-gap constant in the desired-gap term (m)
  double alpha_exp = 4.0; // velocity exponent

  // The controller's gap term divides the desired-gap expression by the
  // constant d_fh, so the commanded acceleration never depends on the
  // actual distance to the front vehicle. Enabling this substitutes the
  // measured gap for d_fh (the textbook car-following form).
  bool textbook_idm = false;

  void validate() const;  // throws std::invalid_argument
};

enum class Mode { SetSpeed, TimeGap };

/// SetSpeed iff v_d <= gap / t_h_d (boundary counts as SetSpeed).
Mode mode_of(const VehicleState& host, double gap, const IdmParams& prm);

/// Intelligent-driver-model acceleration command, clamped to
/// [a_h_min, a_h_max].
double idm_accel(const VehicleState& host, const VehicleState& front,
                 const IdmParams& prm);

HostController make_idm_controller(const IdmParams& prm);

}  // namespace falsify

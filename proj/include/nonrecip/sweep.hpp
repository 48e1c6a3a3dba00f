#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nonrecip/model.hpp"

namespace nonrecip {

enum class SweepVariable { probe_omega, detuning_common, phase_theta, pendulum_detuning };

std::string_view to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(std::string_view name);

/// Uniform grid over [start, stop]; the base record lives in RunConfig.
struct SweepSpec {
  SweepVariable variable = SweepVariable::probe_omega;
  double start = 0;
  double stop = 1;
  int points = 2;

  bool operator==(const SweepSpec&) const = default;
};

const SweepSpec& validate(const SweepSpec& s);

/// `points` evenly spaced values from start to stop inclusive.
std::vector<double> linspace(double start, double stop, int points);

inline std::vector<double> grid(const SweepSpec& s) {
  validate(s);
  return linspace(s.start, s.stop, s.points);
}

/// All three detunings (D'1, D'2, Db1) set to `delta`.
EffectiveParams with_common_detuning(EffectiveParams base, double delta);

/// Rotates G11 so that theta_a1 - theta_a2 = theta, keeping |G11|.
EffectiveParams with_coupling_phase(EffectiveParams base, double theta);

}  // namespace nonrecip

#include "nonrecip/sweep.hpp"

#include <complex>

#include "nonrecip/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

namespace nonrecip {

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::probe_omega: return "probe_omega";
    case SweepVariable::detuning_common: return "detuning_common";
    case SweepVariable::phase_theta: return "phase_theta";
    case SweepVariable::pendulum_detuning: return "pendulum_detuning";
  }
  return "unknown";
}

SweepVariable sweep_variable_from_string(std::string_view name) {
  for (const auto v : {SweepVariable::probe_omega, SweepVariable::detuning_common,
                       SweepVariable::phase_theta, SweepVariable::pendulum_detuning}) {
    if (to_string(v) == name) return v;
  }
  throw DomainError("unknown sweep variable '" + std::string(name) + "'");
}

const SweepSpec& validate(const SweepSpec& s) {
  if (!std::isfinite(s.start) || !std::isfinite(s.stop)) {
    throw DomainError("sweep start and stop must be finite");
  }
  if (!(s.start < s.stop)) throw DomainError("sweep start must be < stop");
  if (s.points < 2) throw DomainError("sweep points must be >= 2");
  return s;
}

std::vector<double> linspace(double start, double stop, int points) {
  if (points < 2) throw DomainError("grid needs at least 2 points");
  std::vector<double> out(static_cast<std::size_t>(points));
  const double span = stop - start;
  for (int k = 0; k < points; ++k) {
    out[static_cast<std::size_t>(k)] = start + span * k / (points - 1);
  }
  out.back() = stop;
  return out;
}

EffectiveParams with_common_detuning(EffectiveParams base, double delta) {
  base.delta_p1 = base.delta_p2 = base.delta_b1 = delta;
  return base;
}

EffectiveParams with_coupling_phase(EffectiveParams base, double theta) {
  base.g11_eff = std::polar(std::abs(base.g11_eff), base.theta_a2() + theta);
  return base;
}

unsigned sweep_thread_count() {
  if (const char* env = std::getenv("NONRECIP_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace nonrecip

#pragma once

// Driven coupled pendulums in the rotating-wave approximation:
//
//   d alpha1/dt = -(gamma1 + i Delta1) alpha1 - i g12 alpha2 + F1 e^{i phi1}
//   d alpha2/dt = -(gamma2 + i Delta2) alpha2 - i g21 alpha1 + F2 e^{i phi2}
//
// with g12 = g21 = g for the symmetric form, or g w1/w2 and g w2/w1 for the
// frequency-weighted form.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "nonrecip/model.hpp"
#include "nonrecip/rk4.hpp"

namespace nonrecip {

enum class CouplingForm { symmetric, frequency_weighted };

class StepSizeError : public DomainError {
 public:
  using DomainError::DomainError;
};

template <typename Scalar = double>
struct PendulumAmplitudesT {
  Complex<Scalar> alpha1{};
  Complex<Scalar> alpha2{};
};

template <typename Scalar = double>
using PendulumSteadyStateT = PendulumAmplitudesT<Scalar>;

template <typename Scalar = double>
struct PendulumSampleT {
  Scalar t = 0;
  Complex<Scalar> alpha1{};
  Complex<Scalar> alpha2{};
};

template <typename Scalar = double>
struct PendulumSpectrumRowT {
  Scalar delta = 0;
  Scalar abs_alpha1 = 0;
  Scalar arg_alpha1 = 0;
  Scalar abs_alpha2 = 0;
  Scalar arg_alpha2 = 0;
};

using PendulumAmplitudes = PendulumAmplitudesT<double>;
using PendulumSteadyState = PendulumSteadyStateT<double>;
using PendulumSample = PendulumSampleT<double>;
using PendulumSpectrumRow = PendulumSpectrumRowT<double>;

/// Coupling rates (g12, g21) entering the alpha1 and alpha2 equations.
template <typename Scalar>
std::pair<Scalar, Scalar> coupling_rates(const PendulumParamsT<Scalar>& p, CouplingForm form) {
  if (form == CouplingForm::symmetric) return {p.g, p.g};
  if (!(p.omega1 > 0) || !(p.omega2 > 0)) {
    throw DomainError("frequency-weighted coupling requires omega1 > 0 and omega2 > 0");
  }
  return {p.g * p.omega1 / p.omega2, p.g * p.omega2 / p.omega1};
}

/// Closed-form steady state for independent detunings.
template <typename Scalar>
PendulumSteadyStateT<Scalar> pendulum_steady_state(const PendulumParamsT<Scalar>& p,
                                                   Scalar delta1, Scalar delta2,
                                                   CouplingForm form = CouplingForm::symmetric) {
  using C = Complex<Scalar>;
  const C i(0, 1);
  const auto [g12, g21] = coupling_rates(p, form);
  const C z1(p.gamma1, delta1);
  const C z2(p.gamma2, delta2);
  const C drive1 = p.f1 * unit_phasor(p.phi1);
  const C drive2 = p.f2 * unit_phasor(p.phi2);
  const C denom = z1 * z2 + g12 * g21;
  return {(z2 * drive1 - i * g12 * drive2) / denom, (z1 * drive2 - i * g21 * drive1) / denom};
}

/// Closed-form steady state with both pendulums at the common detuning delta.
template <typename Scalar>
PendulumSteadyStateT<Scalar> pendulum_steady_state(const PendulumParamsT<Scalar>& p, Scalar delta,
                                                   CouplingForm form = CouplingForm::symmetric) {
  return pendulum_steady_state(p, delta, delta, form);
}

/// Fixed-step RK4 trajectory using the detunings omega_i - omega_d of p.
/// Every `stride`-th step is recorded; the final point is always recorded.
template <typename Scalar>
std::vector<PendulumSampleT<Scalar>> pendulum_evolve(const PendulumParamsT<Scalar>& p,
                                                     const PendulumAmplitudesT<Scalar>& state0,
                                                     Scalar t_end, Scalar dt,
                                                     CouplingForm form = CouplingForm::symmetric,
                                                     std::size_t stride = 1) {
  using C = Complex<Scalar>;
  using State = Eigen::Matrix<C, 2, 1>;
  if (!(dt > 0)) throw DomainError("dt must be > 0");
  if (!(t_end >= dt)) throw DomainError("t_end must be >= dt");
  if (stride == 0) throw DomainError("stride must be >= 1");

  const auto [g12, g21] = coupling_rates(p, form);
  const Scalar d1 = p.delta1();
  const Scalar d2 = p.delta2();
  const Scalar fastest = std::max({std::abs(d1), std::abs(d2), p.gamma1, p.gamma2, g12, g21});
  if (dt * fastest > Scalar(0.1) * (1 + 16 * std::numeric_limits<Scalar>::epsilon())) {
    throw StepSizeError("dt * max(|Delta|, gamma, g) must be <= 0.1");
  }

  const C i(0, 1);
  const C z1(p.gamma1, d1);
  const C z2(p.gamma2, d2);
  const C drive1 = p.f1 * unit_phasor(p.phi1);
  const C drive2 = p.f2 * unit_phasor(p.phi2);
  const auto rhs = [&](Scalar, const State& y) {
    State dy;
    dy(0) = -z1 * y(0) - i * g12 * y(1) + drive1;
    dy(1) = -z2 * y(1) - i * g21 * y(0) + drive2;
    return dy;
  };

  std::vector<PendulumSampleT<Scalar>> trajectory;
  std::size_t count = 0;
  const State y0(state0.alpha1, state0.alpha2);
  const State last = rk4_integrate(rhs, Scalar(0), y0, t_end, dt, [&](Scalar t, const State& y) {
    if (count++ % stride == 0) trajectory.push_back({t, y(0), y(1)});
  });
  if ((count - 1) % stride != 0) trajectory.push_back({t_end, last(0), last(1)});
  return trajectory;
}

/// Magnitude/phase spectrum versus common detuning; phases in (-pi, pi].
template <typename Scalar>
std::vector<PendulumSpectrumRowT<Scalar>> pendulum_spectrum(
    const PendulumParamsT<Scalar>& p, std::span<const Scalar> deltas,
    CouplingForm form = CouplingForm::symmetric) {
  if (deltas.empty()) throw DomainError("detuning grid must be non-empty");
  std::vector<PendulumSpectrumRowT<Scalar>> rows;
  rows.reserve(deltas.size());
  for (const Scalar delta : deltas) {
    const auto ss = pendulum_steady_state(p, delta, form);
    rows.push_back({delta, std::abs(ss.alpha1), principal_arg(ss.alpha1),
                    std::abs(ss.alpha2), principal_arg(ss.alpha2)});
  }
  return rows;
}

}  // namespace nonrecip

#pragma once

// Shared parameter records for the coupled-oscillator and optomechanical
// solvers.
//
// Units: every frequency and rate is expressed in units of a reference
// damping rate gamma = 1. Phases are radians and are never wrapped, except by
// the coupling-phase accessor theta().
//
// Sign convention: time evolution goes as exp(-i omega t). The Fourier
// transform uses the exp(+i omega t) kernel, so d/dt -> -i omega and the
// linearized fluctuations obey (M - i omega I) V(omega) = Gamma V_in(omega).
// Positive probe frequencies therefore sit on the upper sideband.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nonrecip {

template <typename Scalar>
using Complex = std::complex<Scalar>;

/// Invariant violation in a parameter record or operation argument.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Wraps an angle into [0, 2 pi).
template <typename Scalar>
Scalar wrap_two_pi(Scalar angle) {
  const Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
  Scalar r = std::fmod(angle, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi) r = 0;
  return r;
}

/// Wraps an angle into (-pi, pi].
template <typename Scalar>
Scalar wrap_pi(Scalar angle) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  Scalar r = wrap_two_pi(angle + pi) - pi;
  if (r <= -pi) r += 2 * pi;
  return r;
}

/// Argument of a complex number with arg(0) := 0.
template <typename Scalar>
Scalar phase_of(const Complex<Scalar>& z) {
  if (z == Complex<Scalar>(0)) return 0;
  return std::arg(z);
}

/// Argument in (-pi, pi] with arg(0) := 0.
template <typename Scalar>
Scalar principal_arg(const Complex<Scalar>& z) {
  const Scalar a = phase_of(z);
  return a <= -std::numbers::pi_v<Scalar> ? std::numbers::pi_v<Scalar> : a;
}

/// theta = theta_a1 - theta_a2 wrapped to [0, 2 pi).
template <typename Scalar>
Scalar coupling_phase_difference(Scalar theta_a1, Scalar theta_a2) {
  return wrap_two_pi(theta_a1 - theta_a2);
}

template <typename Scalar>
Complex<Scalar> unit_phasor(Scalar phase) {
  return std::polar(Scalar(1), phase);
}

/// Driven coupled pendulums in the rotating frame of the common drive.
/// phi1, phi2 are the phases after the phi -> phi + pi/2 shift.
template <typename Scalar = double>
struct PendulumParamsT {
  Scalar omega1 = 0;
  Scalar omega2 = 0;
  Scalar gamma1 = 1;
  Scalar gamma2 = 1;
  Scalar g = 0;
  Scalar f1 = 0;
  Scalar f2 = 0;
  Scalar phi1 = 0;
  Scalar phi2 = 0;
  Scalar omega_d = 0;

  Scalar delta1() const { return omega1 - omega_d; }
  Scalar delta2() const { return omega2 - omega_d; }

  bool operator==(const PendulumParamsT&) const = default;
};

/// Bare drive and coupling parameters of the membrane-in-the-middle cavity.
template <typename Scalar = double>
struct OptomechDriveParamsT {
  Scalar delta_a1 = 0;
  Scalar delta_a2 = 0;
  Scalar delta_b1 = 0;
  Scalar j = 0;
  Scalar g11 = 0;
  Scalar g21 = 0;
  Scalar eps_a1 = 0;
  Scalar eps_a2 = 0;
  Scalar phi_a1 = 0;
  Scalar phi_a2 = 0;
  Scalar eps_b1 = 0;
  Scalar gamma_a1 = 1;
  Scalar gamma_a2 = 1;
  Scalar gamma_b1 = 1;

  bool operator==(const OptomechDriveParamsT&) const = default;
};

/// Linearized-model inputs: effective detunings and complex effective
/// couplings G11 = |G11| e^{i theta_a1}, G21 = |G21| e^{i theta_a2}.
template <typename Scalar = double>
struct EffectiveParamsT {
  Scalar delta_p1 = 0;
  Scalar delta_p2 = 0;
  Scalar delta_b1 = 0;
  Scalar j = 0;
  Complex<Scalar> g11_eff{};
  Complex<Scalar> g21_eff{};
  Scalar gamma_a1 = 1;
  Scalar gamma_a2 = 1;
  Scalar gamma_b1 = 1;

  Scalar theta_a1() const { return phase_of(g11_eff); }
  Scalar theta_a2() const { return phase_of(g21_eff); }
  Scalar theta() const { return coupling_phase_difference(theta_a1(), theta_a2()); }

  template <typename Other>
  EffectiveParamsT<Other> cast() const {
    return {Other(delta_p1),
            Other(delta_p2),
            Other(delta_b1),
            Other(j),
            Complex<Other>(Other(g11_eff.real()), Other(g11_eff.imag())),
            Complex<Other>(Other(g21_eff.real()), Other(g21_eff.imag())),
            Other(gamma_a1),
            Other(gamma_a2),
            Other(gamma_b1)};
  }

  bool operator==(const EffectiveParamsT&) const = default;
};

using PendulumParams = PendulumParamsT<double>;
using OptomechDriveParams = OptomechDriveParamsT<double>;
using EffectiveParams = EffectiveParamsT<double>;

/// Symmetric configuration used by the isolation presets: all detunings equal
/// to `delta`, J = |G11| = |G21| = `coupling`, all damping rates `gamma`, and
/// relative coupling phase `theta` carried by G11 (G21 real).
template <typename Scalar = double>
EffectiveParamsT<Scalar> symmetric_effective(Scalar delta, Scalar coupling, Scalar gamma,
                                             Scalar theta) {
  EffectiveParamsT<Scalar> e;
  e.delta_p1 = e.delta_p2 = e.delta_b1 = delta;
  e.j = coupling;
  e.g11_eff = std::polar(coupling, theta);
  e.g21_eff = Complex<Scalar>(coupling, 0);
  e.gamma_a1 = e.gamma_a2 = e.gamma_b1 = gamma;
  return e;
}

// Validation returns the record unchanged or throws DomainError naming the
// first violated invariant.
const PendulumParams& validate(const PendulumParams& p);
const OptomechDriveParams& validate(const OptomechDriveParams& p);
const EffectiveParams& validate(const EffectiveParams& p);

}  // namespace nonrecip

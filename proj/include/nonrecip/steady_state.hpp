#pragma once

// Mean-field steady state of the driven membrane-in-the-middle cavity.
//
//   alpha = [(ga2/2 + i D'2) e1 e^{i phi1} - i J e2 e^{i phi2}] / D
//   beta  = [(ga1/2 + i D'1) e2 e^{i phi2} - i J e1 e^{i phi1}] / D
//   D     = (ga1/2 + i D'1)(ga2/2 + i D'2) + J^2
//   xi    = -i (g11 |alpha|^2 + g21 |beta|^2) / (gb1/2 + i Db1)
//
// with D'i = Dai + gi1 (xi + xi*) solved by damped Picard iteration from
// xi = 0, or D'i held at prescribed values.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nonrecip/model.hpp"

namespace nonrecip {

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(int iterations, double residual)
      : std::runtime_error("steady state did not converge after " + std::to_string(iterations) +
                           " iterations (residual " + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class SingularSystemError : public DomainError {
 public:
  using DomainError::DomainError;
};

template <typename Scalar = double>
struct SolveModeT {
  /// Effective detunings (D'1, D'2) when prescribed; self-consistent otherwise.
  std::optional<std::pair<Scalar, Scalar>> prescribed;

  static SolveModeT self_consistent() { return {}; }
  static SolveModeT prescribed_detunings(Scalar delta_p1, Scalar delta_p2) {
    return {std::pair<Scalar, Scalar>{delta_p1, delta_p2}};
  }
  bool is_prescribed() const { return prescribed.has_value(); }
};

struct SolverOptions {
  double tol = 1e-12;
  int max_iter = 1000;
};

template <typename Scalar = double>
struct CavityAmplitudesT {
  Complex<Scalar> alpha{};
  Complex<Scalar> beta{};
};

template <typename Scalar = double>
struct SteadyStateT {
  Complex<Scalar> alpha{};
  Complex<Scalar> beta{};
  Complex<Scalar> xi{};
  EffectiveParamsT<Scalar> effective{};
  int iterations = 0;
  Scalar residual = 0;
  std::vector<Scalar> residual_history;
  std::vector<std::string> warnings;
};

template <typename Scalar = double>
struct PhaseReportT {
  Scalar predicted_phase = 0;
  Scalar actual_phase = 0;
  Scalar deviation = 0;
};

using SolveMode = SolveModeT<double>;
using CavityAmplitudes = CavityAmplitudesT<double>;
using SteadyState = SteadyStateT<double>;
using PhaseReport = PhaseReportT<double>;

/// Intracavity amplitudes (alpha, beta) at the given effective detunings.
template <typename Scalar>
CavityAmplitudesT<Scalar> cavity_amplitudes(const OptomechDriveParamsT<Scalar>& p,
                                            Scalar delta_p1, Scalar delta_p2) {
  using C = Complex<Scalar>;
  const C i(0, 1);
  const C z1(p.gamma_a1 / 2, delta_p1);
  const C z2(p.gamma_a2 / 2, delta_p2);
  const C drive1 = p.eps_a1 * unit_phasor(p.phi_a1);
  const C drive2 = p.eps_a2 * unit_phasor(p.phi_a2);
  const C denom = z1 * z2 + p.j * p.j;
  const Scalar scale = std::abs(z1) * std::abs(z2) + p.j * p.j;
  if (!(std::abs(denom) > std::numeric_limits<Scalar>::epsilon() * scale)) {
    throw SingularSystemError("cavity steady-state denominator vanishes");
  }
  return {(z2 * drive1 - i * p.j * drive2) / denom, (z1 * drive2 - i * p.j * drive1) / denom};
}

/// Static membrane displacement driven by radiation pressure.
template <typename Scalar>
Complex<Scalar> membrane_amplitude(const OptomechDriveParamsT<Scalar>& p,
                                   const Complex<Scalar>& alpha, const Complex<Scalar>& beta) {
  const Complex<Scalar> i(0, 1);
  const Scalar pressure = p.g11 * std::norm(alpha) + p.g21 * std::norm(beta);
  return -i * pressure / Complex<Scalar>(p.gamma_b1 / 2, p.delta_b1);
}

/// Effective couplings G11 = g11 alpha, G21 = g21 beta at detunings (D'1, D'2).
template <typename Scalar>
EffectiveParamsT<Scalar> make_effective(const OptomechDriveParamsT<Scalar>& p,
                                        const Complex<Scalar>& alpha,
                                        const Complex<Scalar>& beta, Scalar delta_p1,
                                        Scalar delta_p2) {
  EffectiveParamsT<Scalar> e;
  e.delta_p1 = delta_p1;
  e.delta_p2 = delta_p2;
  e.delta_b1 = p.delta_b1;
  e.j = p.j;
  e.g11_eff = p.g11 * alpha;
  e.g21_eff = p.g21 * beta;
  e.gamma_a1 = p.gamma_a1;
  e.gamma_a2 = p.gamma_a2;
  e.gamma_b1 = p.gamma_b1;
  return e;
}

template <typename Scalar>
EffectiveParamsT<Scalar> effective_params(const SteadyStateT<Scalar>& ss,
                                          const OptomechDriveParamsT<Scalar>& p) {
  return make_effective(p, ss.alpha, ss.beta, ss.effective.delta_p1, ss.effective.delta_p2);
}

namespace detail {

template <typename Scalar>
std::pair<Scalar, Scalar> detunings_for(const OptomechDriveParamsT<Scalar>& p,
                                        const SolveModeT<Scalar>& mode,
                                        const Complex<Scalar>& xi) {
  if (mode.prescribed) return *mode.prescribed;
  const Scalar shift = 2 * xi.real();  // xi + xi*
  return {p.delta_a1 + p.g11 * shift, p.delta_a2 + p.g21 * shift};
}

template <typename Scalar>
std::vector<std::string> regime_warnings(const OptomechDriveParamsT<Scalar>& p, Scalar delta_p1,
                                         Scalar delta_p2) {
  std::vector<std::string> out;
  const Scalar scale = std::abs(p.delta_b1);
  const Scalar tolerance = Scalar(0.1) * scale;
  if (std::abs(delta_p1 - p.delta_b1) > tolerance || std::abs(delta_p2 - p.delta_b1) > tolerance) {
    out.emplace_back("effective cavity detunings differ from delta_b1 by more than 10%");
  }
  const Scalar largest =
      std::max({p.gamma_a1, p.gamma_a2, p.gamma_b1, std::abs(p.g11), std::abs(p.g21)});
  if (largest > tolerance) {
    out.emplace_back("damping rates or couplings are not small compared with |delta_b1|");
  }
  return out;
}

}  // namespace detail

/// Solves the mean-field equations. The iteration is damped by 0.5 whenever
/// the residual |xi_{k+1} - xi_k| grows for three consecutive iterations.
template <typename Scalar>
SteadyStateT<Scalar> solve_steady_state(const OptomechDriveParamsT<Scalar>& p,
                                        const SolveModeT<Scalar>& mode,
                                        const SolverOptions& options = {}) {
  if (!(options.tol > 0)) throw DomainError("tol must be > 0");
  if (options.max_iter < 1) throw DomainError("max_iter must be >= 1");

  SteadyStateT<Scalar> ss;
  Complex<Scalar> xi{};
  Scalar relaxation = 1;
  Scalar previous = std::numeric_limits<Scalar>::infinity();
  int growth = 0;
  for (int k = 1; k <= options.max_iter; ++k) {
    const auto [d1, d2] = detail::detunings_for(p, mode, xi);
    const auto amps = cavity_amplitudes(p, d1, d2);
    const Complex<Scalar> next = membrane_amplitude(p, amps.alpha, amps.beta);
    const Scalar residual = std::abs(next - xi);
    ss.residual_history.push_back(residual);
    ss.iterations = k;
    ss.residual = residual;

    if (residual <= Scalar(options.tol)) {
      xi = next;
      const auto [f1, f2] = detail::detunings_for(p, mode, xi);
      const auto fin = cavity_amplitudes(p, f1, f2);
      ss.alpha = fin.alpha;
      ss.beta = fin.beta;
      ss.xi = xi;
      ss.effective = make_effective(p, fin.alpha, fin.beta, f1, f2);
      ss.warnings = detail::regime_warnings(p, f1, f2);
      return ss;
    }

    growth = residual > previous ? growth + 1 : 0;
    if (growth >= 3) {
      relaxation /= 2;
      growth = 0;
    }
    previous = residual;
    xi += relaxation * (next - xi);
  }
  throw NonConvergenceError(ss.iterations, static_cast<double>(ss.residual));
}

/// Compares arg(alpha) - arg(beta) with phi_a1 - phi_a2, the relation expected
/// for equal drive amplitudes far from resonance. Requires eps_a1 == eps_a2.
template <typename Scalar>
PhaseReportT<Scalar> check_large_detuning_phase(const SteadyStateT<Scalar>& ss,
                                                const OptomechDriveParamsT<Scalar>& p) {
  if (p.eps_a1 != p.eps_a2) throw DomainError("eps_a1 must equal eps_a2");
  PhaseReportT<Scalar> r;
  r.predicted_phase = wrap_pi(p.phi_a1 - p.phi_a2);
  r.actual_phase = wrap_pi(phase_of(ss.alpha) - phase_of(ss.beta));
  r.deviation = std::abs(wrap_pi(r.actual_phase - r.predicted_phase));
  return r;
}

}  // namespace nonrecip

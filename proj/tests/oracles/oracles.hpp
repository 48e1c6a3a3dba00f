#pragma once

// Test-only reference implementations. Nothing here calls into the library's
// drift-matrix or LU paths: the linearized equations are written out term by
// term, the inverse is a hand-rolled full-pivot Gauss-Jordan, and the
// time-domain probes integrate the equations of motion directly.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "nonrecip/model.hpp"
#include "nonrecip/rk4.hpp"

namespace oracle {

using Real = long double;
using C = std::complex<Real>;
using Vec6 = Eigen::Matrix<C, 6, 1>;
using Mat6 = Eigen::Matrix<C, 6, 6>;

/// Right-hand side of the linearized Langevin equations for the six
/// independent components (da1, da2, db1, da1+, da2+, db1+), without input.
inline Vec6 linearized_rhs(const nonrecip::EffectiveParamsT<Real>& e, const Vec6& v) {
  const C i(0, 1);
  const C g11 = e.g11_eff;
  const C g21 = e.g21_eff;
  const C a1 = v(0), a2 = v(1), b = v(2), a1d = v(3), a2d = v(4), bd = v(5);
  Vec6 d;
  d(0) = (-e.gamma_a1 / 2 - i * e.delta_p1) * a1 - i * g11 * (b + bd) - i * e.j * a2;
  d(1) = (-e.gamma_a2 / 2 - i * e.delta_p2) * a2 - i * g21 * (b + bd) - i * e.j * a1;
  d(2) = (-e.gamma_b1 / 2 - i * e.delta_b1) * b - i * (g11 * a1d + std::conj(g11) * a1) -
         i * (g21 * a2d + std::conj(g21) * a2);
  // Hermitian-conjugate equations, with the daggered operators as
  // independent variables.
  d(3) = (-e.gamma_a1 / 2 + i * e.delta_p1) * a1d + i * std::conj(g11) * (bd + b) + i * e.j * a2d;
  d(4) = (-e.gamma_a2 / 2 + i * e.delta_p2) * a2d + i * std::conj(g21) * (bd + b) + i * e.j * a1d;
  d(5) = (-e.gamma_b1 / 2 + i * e.delta_b1) * bd + i * (std::conj(g11) * a1 + g11 * a1d) +
         i * (std::conj(g21) * a2 + g21 * a2d);
  return d;
}

inline std::array<Real, 6> root_rates(const nonrecip::EffectiveParamsT<Real>& e) {
  return {std::sqrt(e.gamma_a1), std::sqrt(e.gamma_a2), std::sqrt(e.gamma_b1),
          std::sqrt(e.gamma_a1), std::sqrt(e.gamma_a2), std::sqrt(e.gamma_b1)};
}

/// M read off the equations of motion: column k is -rhs(e_k).
inline Mat6 drift_from_rhs(const nonrecip::EffectiveParamsT<Real>& e) {
  Mat6 m;
  for (int k = 0; k < 6; ++k) m.col(k) = -linearized_rhs(e, Vec6::Unit(k));
  return m;
}

/// Gauss-Jordan elimination with full pivoting.
inline Mat6 gauss_jordan_inverse(Mat6 a) {
  Mat6 inv = Mat6::Identity();
  std::array<int, 6> col_of_row{};
  for (int k = 0; k < 6; ++k) {
    int pr = k, pc = k;
    Real best = -1;
    for (int r = k; r < 6; ++r) {
      for (int c = k; c < 6; ++c) {
        if (std::abs(a(r, c)) > best) {
          best = std::abs(a(r, c));
          pr = r;
          pc = c;
        }
      }
    }
    if (best == 0) throw std::runtime_error("singular");
    a.row(k).swap(a.row(pr));
    inv.row(k).swap(inv.row(pr));
    a.col(k).swap(a.col(pc));
    col_of_row[k] = pc;
    const C pivot = a(k, k);
    a.row(k) /= pivot;
    inv.row(k) /= pivot;
    for (int r = 0; r < 6; ++r) {
      if (r == k) continue;
      const C f = a(r, k);
      if (f == C(0)) continue;
      a.row(r) -= f * a.row(k);
      inv.row(r) -= f * inv.row(k);
    }
  }
  // Undo column swaps (they permute the rows of the inverse).
  for (int k = 5; k >= 0; --k) inv.row(k).swap(inv.row(col_of_row[k]));
  return inv;
}

/// U(omega) from the alternate inversion route.
inline Mat6 scattering_by_gauss_jordan(const nonrecip::EffectiveParamsT<Real>& e, Real omega) {
  const Mat6 shifted = drift_from_rhs(e) - C(0, omega) * Mat6::Identity();
  const Mat6 inv = gauss_jordan_inverse(shifted);
  const auto r = root_rates(e);
  Mat6 u;
  for (int i = 0; i < 6; ++i) {
    for (int l = 0; l < 6; ++l) u(i, l) = r[i] * inv(i, l) * r[l] - (i == l ? C(1) : C(0));
  }
  return u;
}

/// Column j of U(omega) from a time-domain run. A unit tone e^{-i omega t}
/// drives input channel j; in the frame W = V e^{i omega t} the forced
/// response becomes a fixed point, which RK4 reaches once transients decay.
inline Vec6 probe_column_rotating(const nonrecip::EffectiveParamsT<Real>& e, Real omega, int j,
                                  Real t_end, Real dt) {
  const auto r = root_rates(e);
  Vec6 drive = Vec6::Zero();
  drive(j) = r[j];
  const auto rhs = [&](Real, const Vec6& w) -> Vec6 {
    return C(0, omega) * w + linearized_rhs(e, w) + drive;
  };
  const Vec6 w = nonrecip::rk4_integrate(rhs, Real(0), Vec6(Vec6::Zero()), t_end, dt);
  Vec6 u;
  for (int i = 0; i < 6; ++i) u(i) = r[i] * w(i) - (i == j ? C(1) : C(0));
  return u;
}

/// Same column from the lab frame: integrate with the oscillating input and
/// demodulate the late-time response, averaging over whole drive periods.
inline Vec6 probe_column_lab(const nonrecip::EffectiveParamsT<Real>& e, Real omega, int j,
                             Real t_settle, Real dt_max, int periods) {
  const auto r = root_rates(e);
  const auto rhs = [&](Real t, const Vec6& v) -> Vec6 {
    Vec6 d = linearized_rhs(e, v);
    d(j) += r[j] * std::exp(C(0, -omega * t));
    return d;
  };
  const Real period = 2 * std::acos(Real(-1)) / std::abs(omega);
  const int per_period = static_cast<int>(std::ceil(period / dt_max));
  const Real h = period / per_period;
  const int settle_periods = static_cast<int>(std::ceil(t_settle / period));
  Vec6 v = Vec6::Zero();
  Real t = 0;
  for (int n = 0; n < settle_periods * per_period; ++n, t = n * h) v = nonrecip::rk4_step(rhs, t, v, h);
  // Mean of V(t) e^{i omega t} over whole periods.
  Vec6 acc = Vec6::Zero();
  const int total = periods * per_period;
  const Real t0 = settle_periods * per_period * h;
  for (int n = 0; n < total; ++n) {
    const Real tn = t0 + n * h;
    acc += v * std::exp(C(0, omega * tn));
    v = nonrecip::rk4_step(rhs, tn, v, h);
  }
  const Vec6 w = acc / Real(total);
  Vec6 u;
  for (int i = 0; i < 6; ++i) u(i) = r[i] * w(i) - (i == j ? C(1) : C(0));
  return u;
}

inline Real transmission(const Mat6& u, int i, int j) {
  return std::norm(u(i, j)) + std::norm(u(i, j + 3));
}

/// Noise-free mean-field equations of motion for (a1, a2, b1), without the
/// mechanical drive term.
inline Eigen::Vector3cd mean_field_rhs(const nonrecip::OptomechDriveParams& p,
                                       const Eigen::Vector3cd& y) {
  const std::complex<double> i(0, 1);
  const double x = 2 * y(2).real();
  Eigen::Vector3cd d;
  d(0) = (-p.gamma_a1 / 2 - i * (p.delta_a1 + p.g11 * x)) * y(0) - i * p.j * y(1) +
         p.eps_a1 * std::exp(i * p.phi_a1);
  d(1) = (-p.gamma_a2 / 2 - i * (p.delta_a2 + p.g21 * x)) * y(1) - i * p.j * y(0) +
         p.eps_a2 * std::exp(i * p.phi_a2);
  d(2) = (-p.gamma_b1 / 2 - i * p.delta_b1) * y(2) -
         i * (p.g11 * std::norm(y(0)) + p.g21 * std::norm(y(1)));
  return d;
}

}  // namespace oracle

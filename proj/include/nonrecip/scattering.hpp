#pragma once

// Linearized fluctuation dynamics dV/dt = -M V + Gamma V_in with
// V = (da1, da2, db1, da1^+, da2^+, db1^+), solved in the frequency domain:
//
//   U(w) = Gamma (M - i w I)^{-1} Gamma - I
//   T_ij = |U_ij|^2 + |U_i,j+3|^2,   S_vac,i = sum_{l=4..6} |U_il|^2
//
// Indices in comments are 1-based; code is 0-based.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonrecip/golden_section.hpp"
#include "nonrecip/model.hpp"
#include "nonrecip/parallel.hpp"

namespace nonrecip {

template <typename Scalar>
using Matrix6c = Eigen::Matrix<Complex<Scalar>, 6, 6>;
template <typename Scalar>
using Vector6c = Eigen::Matrix<Complex<Scalar>, 6, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

class SingularMatrixError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoExtremumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reciprocal condition estimates below this are treated as singular.
inline constexpr double kSingularRcond = 1e-14;

/// Regularization added to T12 and T21 before taking the dB ratio.
inline constexpr double kIsolationFloor = 1e-15;

template <typename Scalar = double>
struct DriftMatrixT {
  Matrix6c<Scalar> m;
  Eigen::DiagonalMatrix<Scalar, 6> gamma_sqrt;
};

template <typename Scalar = double>
struct StabilityT {
  bool stable = false;
  Vector6c<Scalar> eigenvalues;
};

template <typename Scalar = double>
struct ScatteringResultT {
  Scalar omega = 0;
  Matrix6c<Scalar> u;
  Matrix3<Scalar> t;
  Vector3<Scalar> s_vac;
  bool stable = false;
  Scalar rcond = 0;
};

template <typename Scalar = double>
struct TransmissionRowT {
  Scalar omega = 0;
  Matrix3<Scalar> t;
  bool stable = false;

  // 1-based accessors matching the CSV columns.
  Scalar at(int i, int j) const { return t(i - 1, j - 1); }
};

template <typename Scalar = double>
struct IsolationResultT {
  Scalar omega_iso = 0;
  Scalar t12 = 0;
  Scalar t21 = 0;
  Scalar isolation_db = 0;
};

using DriftMatrix = DriftMatrixT<double>;
using Stability = StabilityT<double>;
using ScatteringResult = ScatteringResultT<double>;
using TransmissionRow = TransmissionRowT<double>;
using IsolationResult = IsolationResultT<double>;

/// Drift matrix of the linearized Langevin equations. Upper-left block:
///   [ ga1/2 + i D'1   i J             i G11         ]
///   [ i J             ga2/2 + i D'2   i G21         ]
///   [ i G11*          i G21*          gb1/2 + i Db1 ]
/// upper-right block [[0,0,iG11],[0,0,iG21],[iG11,iG21,0]], and the lower
/// blocks are the complex conjugates of the upper ones, swapped.
template <typename Scalar>
DriftMatrixT<Scalar> build_drift(const EffectiveParamsT<Scalar>& eff) {
  using C = Complex<Scalar>;
  const C i(0, 1);
  const C g11 = eff.g11_eff;
  const C g21 = eff.g21_eff;

  Matrix3<C> normal;
  normal << C(eff.gamma_a1 / 2, eff.delta_p1), i * eff.j, i * g11,
            i * eff.j, C(eff.gamma_a2 / 2, eff.delta_p2), i * g21,
            i * std::conj(g11), i * std::conj(g21), C(eff.gamma_b1 / 2, eff.delta_b1);
  Matrix3<C> anomalous;
  anomalous << C(0), C(0), i * g11,
               C(0), C(0), i * g21,
               i * g11, i * g21, C(0);

  DriftMatrixT<Scalar> d;
  d.m.template topLeftCorner<3, 3>() = normal;
  d.m.template topRightCorner<3, 3>() = anomalous;
  d.m.template bottomLeftCorner<3, 3>() = anomalous.conjugate();
  d.m.template bottomRightCorner<3, 3>() = normal.conjugate();

  Eigen::Matrix<Scalar, 6, 1> rates;
  rates << eff.gamma_a1, eff.gamma_a2, eff.gamma_b1, eff.gamma_a1, eff.gamma_a2, eff.gamma_b1;
  d.gamma_sqrt = Eigen::DiagonalMatrix<Scalar, 6>(rates.cwiseSqrt());
  return d;
}

/// Eigenvalues of M; stable iff every real part is positive, so all
/// fluctuation modes e^{-lambda t} decay.
template <typename Scalar>
StabilityT<Scalar> stability(const DriftMatrixT<Scalar>& drift) {
  Eigen::ComplexEigenSolver<Matrix6c<Scalar>> solver(drift.m, /*computeEigenvectors=*/false);
  StabilityT<Scalar> s;
  s.eigenvalues = solver.eigenvalues();
  s.stable = (s.eigenvalues.real().array() > Scalar(0)).all();
  return s;
}

template <typename Scalar>
StabilityT<Scalar> stability(const EffectiveParamsT<Scalar>& eff) {
  return stability(build_drift(eff));
}

/// Input-output scattering at one probe frequency; `stable` is passed
/// through so sweeps can diagonalize M once.
template <typename Scalar>
ScatteringResultT<Scalar> scattering_at(const DriftMatrixT<Scalar>& drift, Scalar omega,
                                        bool stable) {
  using C = Complex<Scalar>;
  const Matrix6c<Scalar> shifted = drift.m - C(0, omega) * Matrix6c<Scalar>::Identity();
  const Eigen::PartialPivLU<Matrix6c<Scalar>> lu(shifted);
  const Scalar rcond = lu.rcond();
  if (!(rcond >= Scalar(kSingularRcond))) {
    throw SingularMatrixError("M - i omega I is singular at omega = " +
                              std::to_string(static_cast<double>(omega)));
  }

  const Matrix6c<Scalar> gamma = drift.gamma_sqrt.diagonal().template cast<C>().asDiagonal();
  ScatteringResultT<Scalar> r;
  r.omega = omega;
  r.u = gamma * lu.solve(gamma) - Matrix6c<Scalar>::Identity();
  const Eigen::Matrix<Scalar, 6, 6> power = r.u.cwiseAbs2();
  r.t = power.template topLeftCorner<3, 3>() + power.template topRightCorner<3, 3>();
  r.s_vac = power.template topRightCorner<3, 3>().rowwise().sum();
  r.stable = stable;
  r.rcond = rcond;
  return r;
}

template <typename Scalar>
ScatteringResultT<Scalar> scattering_at(const EffectiveParamsT<Scalar>& eff, Scalar omega) {
  const auto drift = build_drift(eff);
  return scattering_at(drift, omega, stability(drift).stable);
}

/// S_out = T S_in + S_vac.
template <typename Scalar>
Vector3<Scalar> output_spectrum(const ScatteringResultT<Scalar>& res, const Vector3<Scalar>& s_in) {
  if ((s_in.array() < Scalar(0)).any() || !s_in.allFinite()) {
    throw DomainError("input spectrum entries must be finite and >= 0");
  }
  return res.t * s_in + res.s_vac;
}

template <typename Scalar>
std::vector<TransmissionRowT<Scalar>> transmission_sweep(const EffectiveParamsT<Scalar>& eff,
                                                         std::span<const Scalar> omegas,
                                                         unsigned threads = 1) {
  if (omegas.empty()) throw DomainError("frequency grid must be non-empty");
  const auto drift = build_drift(eff);
  const bool stable = stability(drift).stable;
  std::vector<TransmissionRowT<Scalar>> rows(omegas.size());
  parallel_for(omegas.size(), threads, [&](std::size_t k) {
    const auto r = scattering_at(drift, omegas[k], stable);
    rows[k] = {omegas[k], r.t, stable};
  });
  return rows;
}

/// 10 log10((T12 + eps) / (T21 + eps)); positive when T12 exceeds T21.
template <typename Scalar>
Scalar isolation_db(Scalar t12, Scalar t21) {
  const Scalar floor = Scalar(kIsolationFloor);
  return 10 * std::log10((t12 + floor) / (t21 + floor));
}

/// Locates the probe frequency with the largest |isolation_db| in [lo, hi]:
/// a coarse scan on `points` samples, then golden-section refinement inside
/// the neighbouring grid cells of the best sample.
template <typename Scalar>
IsolationResultT<Scalar> find_isolation(const EffectiveParamsT<Scalar>& eff, Scalar lo, Scalar hi,
                                        int points, Scalar refine_tol, unsigned threads = 1) {
  if (!(lo < hi)) throw DomainError("omega range requires lo < hi");
  if (points < 3) throw DomainError("isolation scan needs at least 3 points");
  if (!(refine_tol > 0)) throw DomainError("refine_tol must be > 0");

  const auto drift = build_drift(eff);
  const bool stable = stability(drift).stable;
  const auto contrast = [&](Scalar omega) {
    const auto r = scattering_at(drift, omega, stable);
    return isolation_db(r.t(0, 1), r.t(1, 0));
  };

  const std::size_t n = static_cast<std::size_t>(points);
  std::vector<Scalar> grid(n);
  std::vector<Scalar> db(n);
  for (std::size_t k = 0; k < n; ++k) {
    grid[k] = lo + (hi - lo) * static_cast<Scalar>(k) / static_cast<Scalar>(n - 1);
  }
  parallel_for(n, threads, [&](std::size_t k) { db[k] = contrast(grid[k]); });

  Scalar lowest = db[0];
  Scalar highest = db[0];
  std::size_t best = 0;
  for (std::size_t k = 0; k < n; ++k) {
    lowest = std::min(lowest, db[k]);
    highest = std::max(highest, db[k]);
    if (std::abs(db[k]) > std::abs(db[best])) best = k;
  }
  if (highest - lowest < Scalar(0.1)) {
    throw NoExtremumError("isolation contrast varies by less than 0.1 dB over the range");
  }

  const Scalar a = grid[best == 0 ? 0 : best - 1];
  const Scalar b = grid[best + 1 == n ? n - 1 : best + 1];
  const auto peak = golden_section_maximize(
      [&](Scalar omega) { return std::abs(contrast(omega)); }, a, b, refine_tol);
  const auto r = scattering_at(drift, peak.x, stable);
  return {peak.x, r.t(0, 1), r.t(1, 0), isolation_db(r.t(0, 1), r.t(1, 0))};
}

}  // namespace nonrecip

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "nonrecip/scattering.hpp"
#include "nonrecip/sweep.hpp"
#include "oracles/oracles.hpp"

using namespace nonrecip;

namespace {

constexpr double kPi = std::numbers::pi;

// Frozen from the Gauss-Jordan oracle in long double.
constexpr double kGoldenT12 = 0.9999999999999998;
constexpr double kGoldenT21 = 7.840606289884769e-4;

EffectiveParams isolator(double theta) { return symmetric_effective(10.0, 0.5, 1.0, theta); }

EffectiveParams random_effective(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  EffectiveParams e;
  e.delta_p1 = 5 + 10 * u(rng);
  e.delta_p2 = 5 + 10 * u(rng);
  e.delta_b1 = 5 + 10 * u(rng);
  e.j = u(rng);
  e.g11_eff = std::polar(u(rng), 2 * kPi * u(rng));
  e.g21_eff = std::polar(u(rng), 2 * kPi * u(rng));
  e.gamma_a1 = 0.5 + 1.5 * u(rng);
  e.gamma_a2 = 0.5 + 1.5 * u(rng);
  e.gamma_b1 = 0.5 + 1.5 * u(rng);
  return e;
}

double max_reciprocity_gap(const EffectiveParams& e) {
  const auto omegas = linspace(5, 15, 2001);
  double gap = 0;
  for (const auto& row : transmission_sweep<double>(e, omegas)) {
    gap = std::max(gap, std::abs(row.at(1, 2) - row.at(2, 1)));
  }
  return gap;
}

}  // namespace

TEST(Drift, DecoupledIsDiagonal) {
  EffectiveParams e;
  e.delta_p1 = 2;
  e.delta_p2 = -1;
  e.delta_b1 = 3;
  e.gamma_a1 = 0.4;
  const auto d = build_drift(e);
  Matrix6c<double> expected = Matrix6c<double>::Zero();
  expected.diagonal() << std::complex<double>(0.2, 2), std::complex<double>(0.5, -1),
      std::complex<double>(0.5, 3), std::complex<double>(0.2, -2), std::complex<double>(0.5, 1),
      std::complex<double>(0.5, -3);
  EXPECT_EQ(d.m, expected);
  EXPECT_NEAR(d.gamma_sqrt.diagonal()(0), std::sqrt(0.4), 1e-16);
  EXPECT_EQ(d.gamma_sqrt.diagonal()(4), 1.0);
}

TEST(Drift, ConjugateBlockSymmetry) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    const auto m = build_drift(random_effective(rng)).m;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        EXPECT_EQ(m(i + 3, j + 3), std::conj(m(i, j)));
        EXPECT_EQ(m(i + 3, j), std::conj(m(i, j + 3)));
      }
    }
  }
}

TEST(Drift, MatchesLinearizedEquations) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const auto e = random_effective(rng);
    const auto m = build_drift(e).m;
    const auto reference = oracle::drift_from_rhs(e.cast<long double>());
    for (int r = 0; r < 6; ++r) {
      for (int c = 0; c < 6; ++c) {
        EXPECT_NEAR(std::abs(std::complex<long double>(m(r, c)) - reference(r, c)), 0.0L, 1e-15L);
      }
    }
  }
}

TEST(Drift, EigenpairsGovernFreeDecay) {
  std::mt19937_64 rng(8);
  const auto e = random_effective(rng);
  const auto m = build_drift(e).m;
  const Eigen::ComplexEigenSolver<Matrix6c<double>> solver(m);
  const auto el = e.cast<long double>();
  const auto rhs = [&](long double, const oracle::Vec6& v) { return oracle::linearized_rhs(el, v); };
  for (int k = 0; k < 6; ++k) {
    const std::complex<double> lambda = solver.eigenvalues()(k);
    const Vector6c<double> v = solver.eigenvectors().col(k);
    EXPECT_LE((m * v - lambda * v).norm(), 1e-12);
    const oracle::Vec6 v0 = v.cast<std::complex<long double>>();
    const oracle::Vec6 v1 = rk4_integrate(rhs, 0.0L, v0, 1.0L, 2e-4L);
    const oracle::Vec6 expected = std::exp(-std::complex<long double>(lambda)) * v0;
    EXPECT_LE(static_cast<double>((v1 - expected).norm()), 1e-9);
  }
}

TEST(Stability, Cases) {
  EffectiveParams decoupled;
  decoupled.delta_p1 = decoupled.delta_p2 = decoupled.delta_b1 = 4;
  const auto s0 = stability(decoupled);
  EXPECT_TRUE(s0.stable);
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(s0.eigenvalues(k).real(), 0.5, 1e-14);

  for (const double theta : {0.0, kPi / 2, kPi, 3 * kPi / 2}) {
    const auto s = stability(isolator(theta));
    EXPECT_TRUE(s.stable);
    for (int k = 0; k < 6; ++k) EXPECT_GT(s.eigenvalues(k).real(), 0.0);
  }
  for (const double delta : {8.0, 12.0}) EXPECT_TRUE(stability(symmetric_effective(delta, 0.5, 1.0, kPi / 2)).stable);

  decoupled.gamma_b1 = -1.0;
  EXPECT_FALSE(stability(decoupled).stable);
  auto flipped = isolator(kPi / 2);
  flipped.gamma_b1 = -3.0;
  EXPECT_FALSE(stability(flipped).stable);
}

TEST(Scattering, DecoupledFullReflection) {
  EffectiveParams e;
  e.delta_p1 = e.delta_p2 = e.delta_b1 = 3;
  const auto r = scattering_at(e, 3.0);
  EXPECT_NEAR(r.t(0, 0), 1.0, 1e-14);
  EXPECT_EQ(r.t(0, 1), 0.0);
  EXPECT_EQ(r.t(1, 0), 0.0);
  EXPECT_TRUE(r.stable);
}

TEST(Scattering, QuarterPhaseIsolatesAtDetuning) {
  const auto r = scattering_at(isolator(kPi / 2), 10.0);
  EXPECT_LT(r.t(1, 0), 0.01);
  EXPECT_GT(r.t(0, 1), 0.9);
  EXPECT_NEAR(r.t(0, 1), kGoldenT12, 1e-12);
  EXPECT_NEAR(r.t(1, 0), kGoldenT21, 1e-15);
}

TEST(Scattering, ThreeQuarterPhaseReverses) {
  const auto r = scattering_at(isolator(3 * kPi / 2), 10.0);
  EXPECT_LT(r.t(0, 1), 0.01);
  EXPECT_GT(r.t(1, 0), 0.9);
  EXPECT_NEAR(r.t(1, 0), kGoldenT12, 1e-12);
  EXPECT_NEAR(r.t(0, 1), kGoldenT21, 1e-15);
}

TEST(Scattering, GoldenValuesFromDualOracles) {
  const auto e = isolator(kPi / 2).cast<long double>();
  const oracle::Mat6 u = oracle::scattering_by_gauss_jordan(e, 10.0L);
  oracle::Mat6 probed;
  for (int j = 0; j < 6; ++j) probed.col(j) = oracle::probe_column_rotating(e, 10.0L, j, 90.0L, 0.005L);

  const long double t12_inv = oracle::transmission(u, 0, 1);
  const long double t21_inv = oracle::transmission(u, 1, 0);
  EXPECT_LE(std::abs(t12_inv - oracle::transmission(probed, 0, 1)), 1e-9L);
  EXPECT_LE(std::abs(t21_inv - oracle::transmission(probed, 1, 0)), 1e-9L);
  EXPECT_LE((u - probed).cwiseAbs().maxCoeff(), 1e-9L);

  EXPECT_NEAR(static_cast<double>(t12_inv), kGoldenT12, 1e-15);
  EXPECT_NEAR(static_cast<double>(t21_inv), kGoldenT21, 1e-17);
}

TEST(Scattering, AgreesWithAlternateInversion) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> w(0, 20);
  for (int k = 0; k < 30; ++k) {
    const auto e = random_effective(rng);
    const double omega = w(rng);
    const auto r = scattering_at(e, omega);
    const auto u = oracle::scattering_by_gauss_jordan(e.cast<long double>(), omega);
    EXPECT_LE(static_cast<double>((r.u.cast<std::complex<long double>>() - u).cwiseAbs().maxCoeff()), 1e-12);
  }
}

TEST(Scattering, LabFrameProbe) {
  const auto e = isolator(kPi / 2);
  const auto el = e.cast<long double>();
  for (const double omega : {6.0, 8.5, 10.0, 11.0, 14.0}) {
    const auto r = scattering_at(e, omega);
    for (const int j : {0, 1}) {
      const oracle::Vec6 col = oracle::probe_column_lab(el, omega, j, 70.0L, 2e-3L, 20);
      const double scale = r.u.col(j).norm();
      const double err = static_cast<double>((col - r.u.col(j).cast<std::complex<long double>>()).norm());
      EXPECT_LE(err, 1e-6 * scale) << "omega " << omega << " column " << j;
    }
  }
}

TEST(Scattering, NegativeFrequencyConjugation) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> w(-15, 15);
  for (int k = 0; k < 30; ++k) {
    const auto e = random_effective(rng);
    const double omega = w(rng);
    const auto plus = scattering_at(e, omega).u;
    const auto minus = scattering_at(e, -omega).u;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        EXPECT_LE(std::abs(plus(i + 3, j + 3) - std::conj(minus(i, j))), 1e-12);
        EXPECT_LE(std::abs(plus(i + 3, j) - std::conj(minus(i, j + 3))), 1e-12);
      }
    }
  }
}

TEST(Scattering, ThetaReversalDuality) {
  // Holds when the two optical modes share detuning, damping and |G|.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 20; ++k) {
    const double theta = 2 * kPi * u(rng);
    auto e = symmetric_effective(5 + 10 * u(rng), u(rng), 0.5 + u(rng), theta);
    e.delta_b1 = 5 + 10 * u(rng);
    e.gamma_b1 = 0.5 + u(rng);
    e.j = u(rng);
    const auto reversed = with_coupling_phase(e, 2 * kPi - theta);
    const auto omegas = linspace(0, 20, 101);
    const auto a = transmission_sweep<double>(e, omegas);
    const auto b = transmission_sweep<double>(reversed, omegas);
    for (std::size_t n = 0; n < omegas.size(); ++n) {
      EXPECT_NEAR(a[n].at(1, 2), b[n].at(2, 1), 1e-12);
      EXPECT_NEAR(a[n].at(2, 1), b[n].at(1, 2), 1e-12);
    }
  }
}

TEST(Scattering, ReciprocalAtRealCouplings) {
  EXPECT_LE(max_reciprocity_gap(isolator(0.0)), 1e-10);
  EXPECT_LE(max_reciprocity_gap(isolator(kPi)), 1e-10);
  // Mode-symmetric parameters with theta in {0, pi}, under a common gauge phase.
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 10; ++k) {
    auto e = symmetric_effective(5 + 10 * u(rng), u(rng), 0.5 + u(rng), k % 2 == 0 ? 0.0 : kPi);
    e.delta_b1 = 5 + 10 * u(rng);
    e.gamma_b1 = 0.5 + u(rng);
    e.j = u(rng);
    const auto gauge = std::polar(1.0, 2 * kPi * u(rng));
    e.g11_eff *= gauge;
    e.g21_eff *= gauge;
    EXPECT_LE(max_reciprocity_gap(e), 1e-10);
  }
}

TEST(Scattering, NonNegativeEverywhere) {
  std::mt19937_64 rng(23);
  const auto omegas = linspace(-20, 20, 81);
  for (int k = 0; k < 20; ++k) {
    const auto e = random_effective(rng);
    for (const double omega : omegas) {
      const auto r = scattering_at(e, omega);
      EXPECT_GE(r.t.minCoeff(), 0.0);
      EXPECT_GE(r.s_vac.minCoeff(), 0.0);
    }
  }
}

TEST(Scattering, OverdampedMechanicsSuppressesContrast) {
  double previous = 2;
  for (const double gamma_b : {1.0, 10.0, 100.0}) {
    auto e = isolator(kPi / 2);
    e.gamma_b1 = gamma_b;
    const auto r = scattering_at(e, 10.0);
    const double contrast = std::abs(r.t(0, 1) - r.t(1, 0));
    EXPECT_LT(contrast, previous);
    previous = contrast;
  }
  EXPECT_LT(previous, 0.01);
}

TEST(Scattering, SingularShiftIsReported) {
  EffectiveParams e;
  e.gamma_a1 = e.gamma_a2 = e.gamma_b1 = 0;
  e.delta_p1 = e.delta_p2 = e.delta_b1 = 1;
  EXPECT_THROW(scattering_at(e, 1.0), SingularMatrixError);
}

TEST(OutputSpectrum, LinearMap) {
  const auto r = scattering_at(isolator(kPi / 2), 10.0);
  EXPECT_EQ(output_spectrum(r, Vector3<double>::Zero().eval()), r.s_vac);
  const Vector3<double> out = output_spectrum(r, Vector3<double>(1, 0, 0));
  EXPECT_DOUBLE_EQ(out(1), r.t(1, 0) + r.s_vac(1));
  EXPECT_DOUBLE_EQ(out(0), r.t(0, 0) + r.s_vac(0));
  EXPECT_THROW(output_spectrum(r, Vector3<double>(-1, 0, 0)), DomainError);
  EXPECT_THROW(output_spectrum(r, Vector3<double>(std::nan(""), 0, 0)), DomainError);
}

TEST(OutputSpectrum, SymmetricAtZeroPhase) {
  for (const double omega : {7.0, 10.0, 12.5}) {
    const auto r = scattering_at(isolator(0.0), omega);
    const Vector3<double> out = output_spectrum(r, Vector3<double>(1, 1, 0));
    EXPECT_NEAR(out(0), out(1), 1e-12);
  }
}

TEST(TransmissionSweep, IsolatingSpectrum) {
  const auto omegas = linspace(5, 15, 2001);
  const auto rows = transmission_sweep<double>(isolator(kPi / 2), omegas, 4);
  ASSERT_EQ(rows.size(), omegas.size());
  // Transmission 2 -> 1 peaks at the mechanical detuning.
  std::size_t peak = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(rows[k].omega, omegas[k]);
    EXPECT_TRUE(rows[k].stable);
    if (rows[k].at(1, 2) > rows[peak].at(1, 2)) peak = k;
  }
  EXPECT_EQ(rows[peak].omega, 10.0);
  // The dip of T21 nearest the detuning sits just below it; the global
  // minimum is at the band edge, where both transmissions fall off.
  std::size_t dip = 800;
  for (std::size_t k = 800; k <= 1200; ++k) {
    if (rows[k].at(2, 1) < rows[dip].at(2, 1)) dip = k;
  }
  EXPECT_NEAR(rows[dip].omega, 9.9876, 0.005);
  EXPECT_EQ(rows.back().omega, 15.0);
  EXPECT_NEAR(rows.back().at(2, 1), 4.0748974880730845e-4, 1e-12);
  EXPECT_THROW(transmission_sweep<double>(isolator(0), std::span<const double>{}), DomainError);
}

TEST(TransmissionSweep, ThreadCountDoesNotChangeResults) {
  const auto omegas = linspace(5, 15, 333);
  const auto one = transmission_sweep<double>(isolator(1.0), omegas, 1);
  const auto many = transmission_sweep<double>(isolator(1.0), omegas, 7);
  for (std::size_t k = 0; k < omegas.size(); ++k) EXPECT_EQ(one[k].t, many[k].t);
}

TEST(Isolation, DecibelRatio) {
  EXPECT_DOUBLE_EQ(isolation_db(1.0, 0.01), 10 * std::log10((1 + 1e-15) / (0.01 + 1e-15)));
  EXPECT_NEAR(isolation_db(1.0, 0.0), 150.0, 1e-9);
  EXPECT_EQ(isolation_db(0.3, 0.3), 0.0);
}

TEST(Isolation, PeakPositionsFromHighPrecisionSearch) {
  struct Case {
    double delta, omega_iso, db;
  };
  // Located with 30-digit arithmetic, independently of this library.
  const Case cases[] = {{8.0, 7.984591845315926, 30.04279399823789},
                        {10.0, 9.987610430484342, 32.0026146162103},
                        {12.0, 11.98964705313429, 33.59800937073672}};
  for (const auto& c : cases) {
    const auto e = symmetric_effective(c.delta, 0.5, 1.0, kPi / 2);
    const auto r = find_isolation(e, c.delta - 5, c.delta + 5, 2001, 1e-6, 2);
    EXPECT_NEAR(r.omega_iso, c.omega_iso, 2e-6) << c.delta;
    EXPECT_NEAR(r.isolation_db, c.db, 1e-8) << c.delta;
    EXPECT_DOUBLE_EQ(r.isolation_db, isolation_db(r.t12, r.t21));
    // The contrast peak sits within 0.016 of the detuning, below it.
    EXPECT_LT(r.omega_iso, c.delta);
    EXPECT_GT(r.omega_iso, c.delta - 0.016);
  }
}

TEST(Isolation, ReversedPhaseFlipsSign) {
  const auto r = find_isolation(isolator(3 * kPi / 2), 5.0, 15.0, 2001, 1e-6);
  EXPECT_NEAR(r.omega_iso, 9.987610430484342, 2e-6);
  EXPECT_NEAR(r.isolation_db, -32.0026146162103, 1e-8);
}

TEST(Isolation, ReciprocalHasNoExtremum) {
  EXPECT_THROW(find_isolation(isolator(0.0), 5.0, 15.0, 2001, 1e-6), NoExtremumError);
  EXPECT_THROW(find_isolation(isolator(kPi / 2), 15.0, 5.0, 2001, 1e-6), DomainError);
  EXPECT_THROW(find_isolation(isolator(kPi / 2), 5.0, 15.0, 2, 1e-6), DomainError);
  EXPECT_THROW(find_isolation(isolator(kPi / 2), 5.0, 15.0, 11, 0.0), DomainError);
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "spindamp/core.hpp"

using namespace spindamp;

namespace {

constexpr double kPi = 3.14159265358979323846;

SpinVector random_direction(std::mt19937& rng, double m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
  const double c = u(rng);
  const double s = std::sqrt(1.0 - c * c);
  const double p = ph(rng);
  return {m * s * std::cos(p), m * s * std::sin(p), m * c};
}

}  // namespace

TEST_CASE("vector algebra basics") {
  const Vec3 a{1.0, 2.0, 3.0};
  const Vec3 b{-2.0, 0.5, 1.0};
  REQUIRE(dot(a, b) == Catch::Approx(2.0));
  const Vec3 c = cross(a, b);
  REQUIRE(c.x == Catch::Approx(0.5));
  REQUIRE(c.y == Catch::Approx(-7.0));
  REQUIRE(c.z == Catch::Approx(4.5));
  REQUIRE(dot(c, a) == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(norm(Vec3{3.0, 4.0, 0.0}) == Catch::Approx(5.0));
}

TEST_CASE("stereographic projection of real cardinal points") {
  REQUIRE(std::abs(stereographic(complexify({0.0, 0.0, 1.0}), 1.0)) == 0.0);
  REQUIRE(stereographic(complexify({1.0, 0.0, 0.0}), 1.0) == Complex(1.0, 0.0));
  const StereoPoint xy = stereographic(complexify({0.0, 1.0, 0.0}), 1.0);
  REQUIRE(xy.real() == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(xy.imag() == Catch::Approx(1.0));
  REQUIRE_THROWS_AS(stereographic(complexify({0.0, 0.0, -1.0}), 1.0), PoleSingularity);
}

TEST_CASE("inverse stereographic recovers cardinal points and the south pole limit") {
  const SpinVector north = inverse_stereographic(Complex(0.0, 0.0), 2.0);
  REQUIRE(north.z == Catch::Approx(2.0));
  const SpinVector px = inverse_stereographic(Complex(1.0, 0.0), 1.0);
  REQUIRE(px.x == Catch::Approx(1.0));
  REQUIRE(px.y == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(px.z == Catch::Approx(0.0).margin(1e-15));
  const SpinVector south = inverse_stereographic(Complex(1e20, 3e19), 1.5);
  REQUIRE(south.x == 0.0);
  REQUIRE(south.y == 0.0);
  REQUIRE(south.z == -1.5);
}

TEST_CASE("round trip through the projection is exact on random states") {
  std::mt19937 rng(20240408);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.25 + 2.0 * (i % 7) / 7.0;
    const SpinVector v = random_direction(rng, m);
    if (v.z < -0.99 * m) continue;  // stay away from the pole guard
    const SpinVector back = inverse_stereographic(stereographic(complexify(v), m), m);
    REQUIRE(norm(back - v) < 1e-12 * m);
    REQUIRE(norm(back) == Catch::Approx(m).epsilon(1e-14));
  }
}

TEST_CASE("reconstruction from complex vectors has norm M exactly") {
  std::mt19937 rng(7771);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const ComplexSpinVector n{Complex(u(rng), u(rng)), Complex(u(rng), u(rng)),
                              Complex(u(rng), u(rng))};
    const double m = 1.0 + 0.5 * u(rng);
    SpinVector v;
    try {
      v = inverse_stereographic(stereographic(n, m), m);
    } catch (const PoleSingularity&) {
      continue;
    }
    REQUIRE(norm(v) == Catch::Approx(m).epsilon(1e-13));
  }
}

TEST_CASE("derivative of the reconstruction matches finite differences") {
  // xi(t) = (0.4 + 0.1 t) + i (0.2 t - 0.3), a straight line in the plane
  auto xi_of = [](double t) { return Complex(0.4 + 0.1 * t, 0.2 * t - 0.3); };
  const Complex xi_dot(0.1, 0.2);
  const double m = 1.3;
  const double t = 0.7, h = 1e-6;
  const SpinVector fd =
      (1.0 / (2.0 * h)) *
      (inverse_stereographic(xi_of(t + h), m) - inverse_stereographic(xi_of(t - h), m));
  const SpinVector an = inverse_stereographic_dot(xi_of(t), xi_dot, m);
  REQUIRE(norm(an - fd) < 1e-9);
}

TEST_CASE("spin to density matrix and back") {
  const SpinVector m{0.3, -0.4, 0.5};
  const DensityMatrix2 rho = spin_to_density(m);
  REQUIRE(trace(rho).real() == Catch::Approx(1.0));
  REQUIRE(hermiticity_defect(rho) < 1e-15);
  const SpinVector back = density_to_spin(rho);
  REQUIRE(norm(back - m) < 1e-14);
  REQUIRE_THROWS_AS(spin_to_density({1.0, 1.0, 1.0}), NotAState);
}

TEST_CASE("unit-norm spin gives a pure density matrix") {
  std::mt19937 rng(99);
  for (int i = 0; i < 50; ++i) {
    const SpinVector m = random_direction(rng, 1.0);
    REQUIRE(purity_defect(spin_to_density(m)) < 1e-14);
  }
  // Mixed states are not pure
  REQUIRE(purity_defect(spin_to_density({0.0, 0.0, 0.0})) == Catch::Approx(0.25));
}

TEST_CASE("density_to_spin validates its input") {
  DensityMatrix2 bad = spin_to_density({0.0, 0.0, 1.0});
  bad.rho12 = Complex(0.1, 0.0);  // breaks hermiticity (rho21 stays 0)
  REQUIRE_THROWS_AS(density_to_spin(bad), NotHermitian);
  DensityMatrix2 bad_trace = spin_to_density({0.0, 0.0, 1.0});
  bad_trace.rho22 = Complex(0.5, 0.0);
  REQUIRE_THROWS_AS(density_to_spin(bad_trace), BadTrace);
}

TEST_CASE("wavefunction maps agree with the density-matrix route") {
  const double th = 1.1, ph = 0.6;
  const WaveFunction2 psi{Complex(std::cos(0.5 * th)),
                          std::sin(0.5 * th) * std::exp(Complex(0.0, ph))};
  const SpinVector m = wavefunction_to_spin(psi);
  REQUIRE(m.x == Catch::Approx(std::sin(th) * std::cos(ph)));
  REQUIRE(m.y == Catch::Approx(std::sin(th) * std::sin(ph)));
  REQUIRE(m.z == Catch::Approx(std::cos(th)));
  const StereoPoint xi = wavefunction_to_xi(psi);
  REQUIRE(std::abs(xi - stereographic(complexify(m), 1.0)) < 1e-14);
}

TEST_CASE("wavefunction maps validate normalization and the pole") {
  REQUIRE_THROWS_AS(wavefunction_to_spin({Complex(1.0), Complex(1.0)}), NotNormalized);
  REQUIRE_THROWS_AS(wavefunction_to_xi({Complex(0.0), Complex(1.0)}), PoleSingularity);
}

TEST_CASE("density_to_wavefunction recovers the state up to phase") {
  const double th = 2.0, ph = -0.9;
  const WaveFunction2 psi{Complex(std::cos(0.5 * th)),
                          std::sin(0.5 * th) * std::exp(Complex(0.0, ph))};
  const DensityMatrix2 rho = spin_to_density(wavefunction_to_spin(psi));
  const WaveFunction2 back = density_to_wavefunction(rho);
  // same ray: |<psi|back>| = 1
  const Complex ov = std::conj(psi.psi1) * back.psi1 + std::conj(psi.psi2) * back.psi2;
  REQUIRE(std::abs(ov) == Catch::Approx(1.0).epsilon(1e-12));
  REQUIRE_THROWS_AS(density_to_wavefunction(spin_to_density({0.0, 0.0, 0.0})), NotPure);
  // south pole state factors too
  const WaveFunction2 down = density_to_wavefunction(spin_to_density({0.0, 0.0, -1.0}));
  REQUIRE(std::abs(down.psi2) == Catch::Approx(1.0));
}

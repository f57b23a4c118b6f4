// Stereographic projection of the magnetization sphere and the maps between
// the spin vector, the 2x2 density matrix and the two-component wavefunction.
#pragma once

#include <cmath>

#include "spindamp/types.hpp"

namespace spindamp {

// Relative guard radius around the projection pole M + N_z = 0.
inline constexpr double kEpsPole = 1e-12;

// xi = (N_x + i N_y) / (M + N_z). Works for real vectors through complexify().
// Throws PoleSingularity when |M + N_z| <= eps_pole * M.
inline StereoPoint stereographic(const ComplexSpinVector& n, double m_norm,
                                 double eps_pole = kEpsPole) {
  const Complex denom = m_norm + n.z;
  if (std::abs(denom) <= eps_pole * m_norm)
    throw PoleSingularity("stereographic: M + N_z vanishes (south pole)");
  return (n.x + Complex(0.0, 1.0) * n.y) / denom;
}

// Real magnetization recovered from xi; satisfies |M'| = M exactly.
// xi beyond 1/eps_pole is treated as the point at infinity (south pole).
inline SpinVector inverse_stereographic(const StereoPoint& xi, double m_norm,
                                        double eps_pole = kEpsPole) {
  const double a2 = std::norm(xi);
  if (!(a2 < 1.0 / (eps_pole * eps_pole)) || !std::isfinite(a2))
    return {0.0, 0.0, -m_norm};
  const double d = a2 + 1.0;
  return {m_norm * 2.0 * xi.real() / d, m_norm * 2.0 * xi.imag() / d,
          m_norm * (1.0 - a2) / d};
}

// Time derivative of the recovered magnetization from (xi, dxi/dt).
inline SpinVector inverse_stereographic_dot(const StereoPoint& xi, const StereoPoint& xi_dot,
                                            double m_norm) {
  const Complex xc = std::conj(xi);
  const Complex dc = std::conj(xi_dot);
  const double d = std::norm(xi) + 1.0;
  const double d2 = d * d;
  const Complex i(0.0, 1.0);
  const Complex mx = xi_dot * (1.0 - xc * xc) + dc * (1.0 - xi * xi);
  const Complex my = -i * (xi_dot * (1.0 + xc * xc) - dc * (1.0 + xi * xi));
  const Complex mz = -2.0 * (xi_dot * xc + xi * dc);
  return {m_norm * mx.real() / d2, m_norm * my.real() / d2, m_norm * mz.real() / d2};
}

// rho = (1 + M.sigma)/2 for |M| <= 1. Throws NotAState beyond the Bloch ball.
inline DensityMatrix2 spin_to_density(const SpinVector& m) {
  if (norm(m) > 1.0 + 1e-12)
    throw NotAState("spin_to_density: |M| > 1");
  return {Complex(0.5 * (1.0 + m.z)), 0.5 * Complex(m.x, -m.y),
          0.5 * Complex(m.x, m.y), Complex(0.5 * (1.0 - m.z))};
}

// Inverse map M = (rho12 + rho21, i(rho12 - rho21), rho11 - rho22).
// Validates hermiticity and unit trace to tol.
inline SpinVector density_to_spin(const DensityMatrix2& rho, double tol = 1e-9) {
  if (hermiticity_defect(rho) > tol)
    throw NotHermitian("density_to_spin: rho is not hermitian");
  if (std::abs(trace(rho) - 1.0) > tol)
    throw BadTrace("density_to_spin: tr(rho) != 1");
  const Complex i(0.0, 1.0);
  return {(rho.rho12 + rho.rho21).real(), (i * (rho.rho12 - rho.rho21)).real(),
          (rho.rho11 - rho.rho22).real()};
}

// xi = psi2/psi1 for a normalized two-component state.
inline StereoPoint wavefunction_to_xi(const WaveFunction2& psi, double eps_pole = kEpsPole) {
  const double n = norm(psi);
  if (std::abs(n - 1.0) > 1e-9)
    throw NotNormalized("wavefunction_to_xi: |psi| != 1");
  if (std::abs(psi.psi1) <= eps_pole)
    throw PoleSingularity("wavefunction_to_xi: psi1 vanishes");
  return psi.psi2 / psi.psi1;
}

// Unit spin vector of the pure state |psi><psi|.
inline SpinVector wavefunction_to_spin(const WaveFunction2& psi) {
  const double n = norm(psi);
  if (std::abs(n - 1.0) > 1e-9)
    throw NotNormalized("wavefunction_to_spin: |psi| != 1");
  const Complex c = std::conj(psi.psi1) * psi.psi2;
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(psi.psi1) - std::norm(psi.psi2)};
}

// rho = |psi><psi| must be pure and hermitian by construction; the converse
// map validates purity before factoring.
inline WaveFunction2 density_to_wavefunction(const DensityMatrix2& rho, double tol = 1e-9) {
  if (hermiticity_defect(rho) > tol)
    throw NotHermitian("density_to_wavefunction: rho is not hermitian");
  if (std::abs(trace(rho) - 1.0) > tol)
    throw BadTrace("density_to_wavefunction: tr(rho) != 1");
  if (purity_defect(rho) > tol)
    throw NotPure("density_to_wavefunction: rho^2 != rho");
  const double p1 = std::sqrt(std::max(0.0, rho.rho11.real()));
  if (p1 > tol) {
    // phase convention: psi1 real and positive
    return {Complex(p1), rho.rho21 / p1};
  }
  return {Complex(0.0), Complex(std::sqrt(std::max(0.0, rho.rho22.real())))};
}

}  // namespace spindamp

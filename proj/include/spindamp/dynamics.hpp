// Right-hand sides for the undamped and damped evolutions in all three
// representations (vector, stereographic, density matrix / wavefunction),
// a fixed-step RK4 integrator with drift diagnostics, and the gauge phase
// restoring the B0 trace term.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "spindamp/core.hpp"
#include "spindamp/pulses.hpp"
#include "spindamp/types.hpp"

namespace spindamp {

// Undamped precession dM/dt = -gamma M x B.
inline Vec3 bloch_rhs(const SpinVector& m, const Vec3& b, double gamma) {
  return -gamma * cross(m, b);
}

// Landau-Lifshitz form of the damped equation, divided by gamma. Used both
// by llg_rhs and by the effective-field construction, which must not divide
// by gamma.
inline Vec3 llg_rhs_over_gamma(const SpinVector& m, const Vec3& b, double alpha, double m_norm) {
  const double pre = 1.0 / (1.0 + alpha * alpha);
  const Vec3 mxb = cross(m, b);
  return -pre * mxb - (pre * alpha / m_norm) * cross(m, mxb);
}

// dM'/dt = -gamma/(1+a^2) M'xB - gamma a/((1+a^2)Mn) M'x(M'xB).
// Equivalent to the implicit Gilbert form when m_norm = |M'|.
inline Vec3 llg_rhs(const SpinVector& m, const Vec3& b, const DampedGyro& g, double m_norm) {
  return g.gamma * llg_rhs_over_gamma(m, b, g.alpha, m_norm);
}

// Defect |Mdot + gamma MxB - (alpha/Mn) MxMdot| of the implicit Gilbert
// equation; vanishes when Mdot = llg_rhs(M, B, g, |M|).
inline double gilbert_residual(const SpinVector& m, const Vec3& mdot, const Vec3& b,
                               const DampedGyro& g, double m_norm) {
  const Vec3 res = mdot + g.gamma * cross(m, b) - (g.alpha / m_norm) * cross(m, mdot);
  return norm(res);
}

// Riccati flow of the stereographic coordinate:
// dxi/dt = i gamma/(2(1 - i alpha)) (B- xi^2 + 2 Bz xi - B+), B+- = Bx +- i By.
inline Complex riccati_rhs(const StereoPoint& xi, const Vec3& b, const DampedGyro& g) {
  const Complex i(0.0, 1.0);
  const Complex bp(b.x, b.y);
  const Complex bm(b.x, -b.y);
  return i * g.gamma / (2.0 * Complex(1.0, -g.alpha)) * (bm * xi * xi + 2.0 * b.z * xi - bp);
}

// d(psi)/dt = -i (gamma/2) (B.sigma) psi, hbar = 1.
inline WaveFunction2 schrodinger_rhs(const WaveFunction2& psi, const Vec3& b, double gamma) {
  const Complex i(0.0, 1.0);
  const Complex bp(b.x, b.y);
  const Complex bm(b.x, -b.y);
  const Complex c = -i * 0.5 * gamma;
  return {c * (b.z * psi.psi1 + bm * psi.psi2), c * (bp * psi.psi1 - b.z * psi.psi2)};
}

// Damped density-matrix flow. The implicit equation
// d(rho)/dt = -i[H, rho] + i alpha [d(rho)/dt, rho] is resolved by mapping to
// the spin vector, applying the explicit Landau-Lifshitz form, and mapping
// back: d(rho)/dt = (1/2) dM'/dt . sigma. The default purity tolerance
// admits the O(dt^2) off-manifold displacement of RK4 stage states.
inline DensityMatrix2 damped_density_rhs(const DensityMatrix2& rho, const Vec3& b,
                                         const DampedGyro& g, double purity_tol = 1e-6) {
  if (purity_defect(rho) > purity_tol)
    throw NotPure("damped_density_rhs: rho is not (numerically) pure");
  const SpinVector m = density_to_spin(rho, purity_tol);
  const Vec3 md = llg_rhs(m, b, g, norm(m));
  return {Complex(0.5 * md.z), 0.5 * Complex(md.x, -md.y),
          0.5 * Complex(md.x, md.y), Complex(-0.5 * md.z)};
}

// Damped wavefunction flow via the effective field B - (alpha/gamma) dM'/dt,
// which is real, so the norm of psi is conserved exactly. The tolerance
// again admits RK4 stage displacement.
inline WaveFunction2 damped_wavefunction_rhs(const WaveFunction2& psi, const Vec3& b,
                                             const DampedGyro& g, double norm_tol = 1e-6) {
  const double n = norm(psi);
  if (std::abs(n - 1.0) > norm_tol)
    throw NotNormalized("damped_wavefunction_rhs: |psi| != 1");
  const Complex c = std::conj(psi.psi1) * psi.psi2;
  const SpinVector m{2.0 * c.real(), 2.0 * c.imag(), std::norm(psi.psi1) - std::norm(psi.psi2)};
  const Vec3 beff = b - g.alpha * llg_rhs_over_gamma(m, b, g.alpha, norm(m));
  return schrodinger_rhs(psi, beff, g.gamma);
}

// Phase factor exp(-i gamma int_0^t B0) that restores the trace part of the
// field. Composite Simpson quadrature; the default resolution is ~2000
// panels per unit time, deterministic for a given t.
inline Complex gauge_phase(const std::function<double(double)>& b0, double gamma, double t,
                           int panels = 0) {
  if (t == 0.0) return {1.0, 0.0};
  if (panels <= 0) panels = std::max(200, static_cast<int>(std::ceil(std::abs(t) * 2000.0)));
  const double h = t / (2.0 * panels);
  double acc = b0(0.0) + b0(t);
  for (int k = 1; k < 2 * panels; ++k) acc += (k % 2 == 1 ? 4.0 : 2.0) * b0(k * h);
  const double integral = acc * h / 3.0;
  return std::exp(Complex(0.0, -gamma * integral));
}

// ---------------------------------------------------------------------------
// Fixed-step RK4
// ---------------------------------------------------------------------------

inline constexpr double kDriftLimit = 1e-3;

struct EvolutionConfig {
  double t_start = 0.0;
  double t_end = 1.0;
  double dt = 1e-3;
  DampedGyro gyro;
  Pulse pulse = ConstantZ{0.0};
  int record_every = 1;

  void validate() const {
    if (!(t_end > t_start)) throw Error("EvolutionConfig: t_end must exceed t_start");
    if (!(dt > 0.0) || dt > (t_end - t_start) * (1.0 + 1e-12))
      throw Error("EvolutionConfig: need 0 < dt <= t_end - t_start");
    if (record_every < 1) throw Error("EvolutionConfig: record_every must be >= 1");
    validate_pulse(pulse);
  }
};

template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  double norm_drift = 0.0;  // max deviation of the state's invariant over recorded states
};

namespace detail {

inline double state_drift(const SpinVector& s, const SpinVector& s0) {
  return std::abs(norm(s) - norm(s0));
}
inline double state_drift(const StereoPoint&, const StereoPoint&) {
  return 0.0;  // xi carries no conserved norm; blow-up is caught by the finiteness check
}
inline double state_drift(const DensityMatrix2& s, const DensityMatrix2&) {
  return purity_defect(s);
}
inline double state_drift(const WaveFunction2& s, const WaveFunction2& s0) {
  return std::abs(norm(s) - norm(s0));
}

inline bool state_finite(const SpinVector& s) {
  return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.z);
}
inline bool state_finite(const StereoPoint& s) {
  return std::isfinite(s.real()) && std::isfinite(s.imag());
}
inline bool state_finite(const DensityMatrix2& s) {
  return state_finite(StereoPoint(s.rho11)) && state_finite(StereoPoint(s.rho12)) &&
         state_finite(StereoPoint(s.rho21)) && state_finite(StereoPoint(s.rho22));
}
inline bool state_finite(const WaveFunction2& s) {
  return state_finite(s.psi1) && state_finite(s.psi2);
}

}  // namespace detail

// Classic RK4 with steps of exactly cfg.dt (plus one shorter final step to
// land on t_end). States are never renormalized; the drift diagnostic is
// evaluated on recorded states and aborts with StepTooLarge past kDriftLimit.
template <class State, class Rhs>
Trajectory<State> integrate_rk4(Rhs&& rhs, const State& y0, const EvolutionConfig& cfg) {
  cfg.validate();
  const double span = cfg.t_end - cfg.t_start;
  const long n_full = static_cast<long>(std::floor(span / cfg.dt + 1e-9));
  const double rem = span - n_full * cfg.dt;
  const long n_steps = n_full + (rem > 1e-12 * span ? 1 : 0);

  Trajectory<State> out;
  State y = y0;
  double t = cfg.t_start;

  auto record = [&](double tr, const State& s) {
    if (!detail::state_finite(s))
      throw StepTooLarge("integrate_rk4: state became non-finite");
    out.norm_drift = std::max(out.norm_drift, detail::state_drift(s, y0));
    if (out.norm_drift > kDriftLimit)
      throw StepTooLarge("integrate_rk4: drift exceeded " + std::to_string(kDriftLimit));
    out.times.push_back(tr);
    out.states.push_back(s);
  };

  record(t, y);
  for (long i = 0; i < n_steps; ++i) {
    const double h = (i < n_full) ? cfg.dt : rem;
    const State k1 = rhs(t, y);
    const State k2 = rhs(t + 0.5 * h, y + (0.5 * h) * k1);
    const State k3 = rhs(t + 0.5 * h, y + (0.5 * h) * k2);
    const State k4 = rhs(t + h, y + h * k3);
    y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = (i + 1 < n_steps) ? cfg.t_start + (i + 1) * cfg.dt : cfg.t_end;
    if ((i + 1) % cfg.record_every == 0 || i + 1 == n_steps) record(t, y);
  }
  return out;
}

inline Trajectory<SpinVector> integrate_bloch(const EvolutionConfig& cfg, const SpinVector& m0) {
  return integrate_rk4(
      [&](double t, const SpinVector& m) { return bloch_rhs(m, field_at(cfg.pulse, t), cfg.gyro.gamma); },
      m0, cfg);
}

inline Trajectory<SpinVector> integrate_llg(const EvolutionConfig& cfg, const SpinVector& m0) {
  const double mn = norm(m0);
  if (!(mn > 0.0)) throw Error("integrate_llg: |M(0)| must be positive");
  return integrate_rk4(
      [&](double t, const SpinVector& m) { return llg_rhs(m, field_at(cfg.pulse, t), cfg.gyro, mn); },
      m0, cfg);
}

inline Trajectory<StereoPoint> integrate_riccati(const EvolutionConfig& cfg, const StereoPoint& xi0) {
  return integrate_rk4(
      [&](double t, const StereoPoint& xi) { return riccati_rhs(xi, field_at(cfg.pulse, t), cfg.gyro); },
      xi0, cfg);
}

inline Trajectory<DensityMatrix2> integrate_density(const EvolutionConfig& cfg,
                                                    const DensityMatrix2& rho0) {
  return integrate_rk4(
      [&](double t, const DensityMatrix2& r) { return damped_density_rhs(r, field_at(cfg.pulse, t), cfg.gyro); },
      rho0, cfg);
}

inline Trajectory<WaveFunction2> integrate_wavefunction(const EvolutionConfig& cfg,
                                                        const WaveFunction2& psi0) {
  return integrate_rk4(
      [&](double t, const WaveFunction2& p) { return damped_wavefunction_rhs(p, field_at(cfg.pulse, t), cfg.gyro); },
      psi0, cfg);
}

inline Trajectory<WaveFunction2> integrate_schrodinger(const EvolutionConfig& cfg,
                                                       const WaveFunction2& psi0) {
  return integrate_rk4(
      [&](double t, const WaveFunction2& p) { return schrodinger_rhs(p, field_at(cfg.pulse, t), cfg.gyro.gamma); },
      psi0, cfg);
}

}  // namespace spindamp

// The two applications: self-induced transparency under a sech pulse with
// damping (resonance shift, incomplete recovery) and dynamical localization
// of a driven two-level system (destroyed by damping: <q^2> = J0 of a
// complex argument can no longer vanish).
#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "spindamp/bessel.hpp"
#include "spindamp/closedform.hpp"
#include "spindamp/dynamics.hpp"
#include "spindamp/types.hpp"

namespace spindamp {

namespace detail {
inline constexpr double kPi = 3.14159265358979323846;
}

// ---------------------------------------------------------------------------
// Self-induced transparency
// ---------------------------------------------------------------------------

// Resonance bookkeeping for a sech pulse integrated from its center:
// x(inf) = gamma*a*tau*pi/2, resonant when x(inf) = 2 n pi (1 + alpha^2),
// i.e. gamma*a*tau = 4n(1 + alpha^2).
struct SitResonance {
  double x_infinity = 0.0;
  int nearest_n = 0;
  double deviation = 0.0;  // x_infinity - 2 pi n (1 + alpha^2)
  bool shifted = false;    // damping moves the resonance away from gamma*a*tau = 4n
};

inline SitResonance sit_resonance_check(double gamma, double a, double tau, double alpha) {
  if (!(tau > 0.0)) throw Error("sit_resonance_check: tau must be > 0");
  SitResonance r;
  r.x_infinity = gamma * a * tau * detail::kPi / 2.0;
  const double unit = 2.0 * detail::kPi * (1.0 + alpha * alpha);
  r.nearest_n = static_cast<int>(std::lround(r.x_infinity / unit));
  r.deviation = r.x_infinity - r.nearest_n * unit;
  r.shifted = alpha > 0.0;
  return r;
}

// Final state after a resonant pulse, starting from (0,0,M): the initial
// orientation is recovered only up to the damping factors tanh/sech.
inline SpinVector sit_final_state(double alpha, double x_bar_inf, double m) {
  return {m * std::tanh(alpha * x_bar_inf), 0.0, m / std::cosh(alpha * x_bar_inf)};
}

struct SitReport {
  double x_infinity = 0.0;            // gamma * pulse area from the pulse center onward
  std::optional<int> resonance_n;     // set when x_infinity = 2 n pi (1+alpha^2) within tolerance
  bool shifted = false;
  SpinVector final_state;             // numerically integrated state at t_end
  double recovery_error = 0.0;        // |final_state - initial|
  double closed_form_error = 0.0;     // |final_state - analytic damped solution at t_end|
};

// Integrates the damped equation across cfg's window (pulse and gyro
// arguments supersede the ones in cfg) and compares against the analytic
// solution referenced at cfg.t_start.
inline SitReport sit_run(const SechX& pulse, const DampedGyro& gyro, const SpinVector& initial,
                         const EvolutionConfig& cfg) {
  EvolutionConfig run = cfg;
  run.pulse = pulse;
  run.gyro = gyro;
  const auto traj = integrate_llg(run, initial);
  const SpinVector final_state = traj.states.back();

  const double mn = norm(initial);
  SpinVector closed;
  const Complex xi0 = stereographic(complexify(initial), mn);
  const Complex dena = 1.0 + xi0;
  if (std::abs(dena) <= kEpsPole * (1.0 + std::abs(xi0))) {
    closed = initial;  // a -> infinity corresponds to the fixed point (-M,0,0)
  } else {
    const Complex a0 = (1.0 - xi0) / dena;
    LinearXSolution sol;
    sol.m = mn;
    sol.r = std::abs(a0);
    sol.u = std::arg(a0);
    sol.gamma = gyro.gamma;
    sol.alpha = gyro.alpha;
    sol.pulse = SechX{pulse.a, pulse.tau, pulse.t0 - cfg.t_start};  // reference time 0 = t_start
    closed = linear_x_llg(sol, cfg.t_end - cfg.t_start);
  }

  SitReport rep;
  const SitResonance res = sit_resonance_check(gyro.gamma, pulse.a, pulse.tau, gyro.alpha);
  rep.x_infinity = res.x_infinity;
  if (std::abs(res.deviation) <= 1e-6 * std::max(1.0, std::abs(res.x_infinity)))
    rep.resonance_n = res.nearest_n;
  rep.shifted = res.shifted;
  rep.final_state = final_state;
  rep.recovery_error = norm(final_state - initial);
  rep.closed_form_error = norm(final_state - closed);
  return rep;
}

// ---------------------------------------------------------------------------
// Dynamical localization
// ---------------------------------------------------------------------------

// <q^2> = J0(chi/(1 - i alpha)) with chi = 2 a gamma / omega; for alpha > 0
// the argument leaves the real axis where all zeros of J0 live, so exact
// localization is impossible.
inline Complex dynloc_q2_of_chi(double chi, double alpha, const BesselConfig& cfg = {}) {
  const double lambda = chi / (1.0 + alpha * alpha);
  return bessel_j(0, Complex(lambda, lambda * alpha), cfg);
}

inline Complex dynloc_q2(double a, double gamma, double omega, double alpha,
                         const BesselConfig& cfg = {}) {
  if (!(omega > 0.0)) throw Error("dynloc_q2: omega must be > 0");
  return dynloc_q2_of_chi(2.0 * a * gamma / omega, alpha, cfg);
}

// Independent quadrature oracle for the undamped time average:
// (omega/2pi) int_0^{2pi/omega} exp(2 i a gamma sin(omega t)/omega) dt,
// uniform trapezoid over one period (spectrally accurate).
inline Complex dynloc_q2_numeric(double a, double gamma, double omega, int points = 4096) {
  if (!(omega > 0.0)) throw Error("dynloc_q2_numeric: omega must be > 0");
  const int n = std::max(points, 4096);
  const double chi = 2.0 * a * gamma / omega;
  Complex acc{0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * detail::kPi * k / n;
    acc += std::exp(Complex(0.0, chi * std::sin(th)));
  }
  return acc / static_cast<double>(n);
}

// Off-resonance secular frequency Omega = epsilon gamma <q^2> together with
// its small-alpha expansion at a J0 zero:
//   Omega = epsilon gamma [ -i chi J1(chi) alpha + (chi/2)^2 J2(chi) alpha^2 ] + O(alpha^3).
struct DynlocSecular {
  Complex omega;            // exact: epsilon * gamma * <q^2>
  Complex expansion;        // two-term alpha expansion above
  double expansion_error;   // |omega - expansion|
};

inline DynlocSecular dynloc_secular(double epsilon, double gamma, double chi, double alpha,
                                    const BesselConfig& cfg = {}) {
  DynlocSecular s;
  s.omega = epsilon * gamma * dynloc_q2_of_chi(chi, alpha, cfg);
  const double j1 = bessel_j(1, chi, cfg);
  const double j2 = bessel_j(2, chi, cfg);
  s.expansion = epsilon * gamma *
                (Complex(0.0, -1.0) * chi * j1 * alpha +
                 0.25 * chi * chi * j2 * alpha * alpha);
  s.expansion_error = std::abs(s.omega - s.expansion);
  return s;
}

// T(chi) = -sum_{m,n != 0} J_n(chi) J_{n-m}(chi) J_m(chi) / (m n), truncated
// at |m|,|n| <= n_max. Real by construction; implemented over cached J_k.
inline double dynloc_t_chi(double chi, int n_max, const BesselConfig& cfg = {}) {
  if (n_max < 1) throw Error("dynloc_t_chi: n_max must be >= 1");
  std::vector<double> j(2 * n_max + 1);
  for (int k = 0; k <= 2 * n_max; ++k) j[k] = bessel_j(k, chi, cfg);
  auto jat = [&](int k) {
    const int a = k < 0 ? -k : k;
    return (k < 0 && a % 2 == 1) ? -j[a] : j[a];
  };
  double acc = 0.0;
  for (int n = -n_max; n <= n_max; ++n) {
    if (n == 0) continue;
    double inner = 0.0;
    for (int m = -n_max; m <= n_max; ++m) {
      if (m == 0) continue;
      inner += jat(n - m) * jat(m) / m;
    }
    acc += jat(n) * inner / n;
  }
  return -acc;
}

// Resonant secular frequency Omega = 2 gamma^3 epsilon^3 T(chi) / omega^2.
inline double resonant_secular(double gamma, double epsilon, double omega, double chi,
                               int n_max = 50, const BesselConfig& cfg = {}) {
  if (!(omega > 0.0)) throw Error("resonant_secular: omega must be > 0");
  return 2.0 * gamma * gamma * gamma * epsilon * epsilon * epsilon *
         dynloc_t_chi(chi, n_max, cfg) / (omega * omega);
}

struct DynlocReport {
  double chi = 0.0;
  double lambda = 0.0;           // chi/(1 + alpha^2)
  Complex q2_mean;               // J0(lambda (1 + i alpha))
  Complex secular_omega;         // epsilon gamma <q^2>
  double t_chi = 0.0;
  double resonant_omega = 0.0;   // 2 gamma^3 epsilon^3 T(chi)/omega^2
  double expansion_error = 0.0;
};

inline DynlocReport dynloc_report(double chi, double gamma, double epsilon, double omega,
                                  double alpha, int n_max = 50, const BesselConfig& cfg = {}) {
  DynlocReport r;
  r.chi = chi;
  r.lambda = chi / (1.0 + alpha * alpha);
  r.q2_mean = dynloc_q2_of_chi(chi, alpha, cfg);
  const DynlocSecular s = dynloc_secular(epsilon, gamma, chi, alpha, cfg);
  r.secular_omega = s.omega;
  r.expansion_error = s.expansion_error;
  r.t_chi = dynloc_t_chi(chi, n_max, cfg);
  r.resonant_omega = resonant_secular(gamma, epsilon, omega, chi, n_max, cfg);
  return r;
}

}  // namespace spindamp

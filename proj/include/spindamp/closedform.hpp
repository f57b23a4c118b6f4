// Analytic solution catalog. Each family provides the undamped solution
// (analytic in the gyromagnetic factor), its damped counterpart, and the
// stereographic image. The generic pipeline complexifies the undamped
// solution via gamma -> gamma/(1 - i alpha), projects stereographically and
// reconstructs a real vector of constant norm, which reproduces the damped
// formulas identically.
#pragma once

#include <cmath>
#include <complex>
#include <variant>

#include "spindamp/core.hpp"
#include "spindamp/pulses.hpp"
#include "spindamp/types.hpp"

namespace spindamp {

enum class SolutionFamily { precession, linear_x };

// Precession about a constant z-field: Omega = gamma*B0.
struct PrecessionSolution {
  double m = 1.0;      // |M|
  double theta0 = 0.0; // initial polar angle
  double phi0 = 0.0;   // initial azimuth
  double omega = 0.0;  // Larmor frequency gamma*B0
  double alpha = 0.0;  // damping used by the dedicated damped evaluators

  double omega_prime() const { return omega / (1.0 + alpha * alpha); }
};

inline SpinVector precession_bloch(const PrecessionSolution& s, double t) {
  const double st = std::sin(s.theta0);
  const double ph = s.omega * t + s.phi0;
  return {s.m * st * std::cos(ph), s.m * st * std::sin(ph), s.m * std::cos(s.theta0)};
}

// Damped precession: spirals to (0,0,M) for Omega > 0, to (0,0,-M) for
// Omega < 0. The denominator cosh + cos(theta0) sinh is positive for all t.
inline SpinVector precession_llg(const PrecessionSolution& s, double t) {
  const double wp = s.omega_prime();
  const double g = s.alpha * wp * t;
  const double d = std::cosh(g) + std::cos(s.theta0) * std::sinh(g);
  const double st = std::sin(s.theta0);
  const double ph = wp * t + s.phi0;
  return {s.m * st * std::cos(ph) / d, s.m * st * std::sin(ph) / d,
          s.m * (std::cos(s.theta0) * std::cosh(g) + std::sinh(g)) / d};
}

// xi(t) = tan(theta0/2) e^{i(Omega' t + phi0)} e^{-alpha Omega' t}.
inline StereoPoint xi_precession(const PrecessionSolution& s, double t) {
  const double c = std::cos(0.5 * s.theta0);
  if (std::abs(c) <= kEpsPole)
    throw PoleSingularity("xi_precession: theta0 = pi is the projection pole");
  const double wp = s.omega_prime();
  return std::tan(0.5 * s.theta0) *
         std::exp(Complex(-s.alpha * wp * t, wp * t + s.phi0));
}

// d(xi)/dt = (i - alpha) Omega' xi.
inline StereoPoint xi_precession_derivative(const PrecessionSolution& s, double t) {
  return Complex(-s.alpha, 1.0) * s.omega_prime() * xi_precession(s, t);
}

// Drive along x with B = (b(t), 0, 0). Initial data enter through
// a = (1 - xi0)/(1 + xi0) = r e^{iu}, with xi0 the stereographic image of
// the orientation at the reference time t = 0.
struct LinearXSolution {
  double m = 1.0;
  double r = 0.0;      // |a|
  double u = 0.0;      // arg(a)
  double gamma = 1.0;
  double alpha = 0.0;  // damping used by the dedicated damped evaluators
  Pulse pulse = SechX{};

  double f(double t) const { return pulse_area(pulse, 0.0, t); }
  double x(double t) const { return gamma * f(t); }
  double xbar(double t) const { return x(t) / (1.0 + alpha * alpha); }
  Complex a() const { return std::polar(r, u); }

  static LinearXSolution from_angles(double m, double theta0, double phi0, double gamma,
                                     double alpha, Pulse pulse) {
    LinearXSolution s;
    s.m = m;
    s.gamma = gamma;
    s.alpha = alpha;
    s.pulse = std::move(pulse);
    const double c = std::cos(0.5 * theta0);
    if (std::abs(c) <= kEpsPole) {
      s.r = 1.0;  // xi0 -> infinity maps to a = -1
      s.u = 3.14159265358979323846;
      return s;
    }
    const Complex xi0 = std::tan(0.5 * theta0) * std::exp(Complex(0.0, phi0));
    const Complex a = (1.0 - xi0) / (1.0 + xi0);
    s.r = std::abs(a);
    s.u = std::arg(a);
    return s;
  }
};

namespace detail {

inline void require_x_polarized(const Pulse& p, const char* who) {
  if (!is_x_polarized(p)) throw UnsupportedPulse(std::string(who) + ": pulse is not x-polarized");
}

}  // namespace detail

inline SpinVector linear_x_bloch(const LinearXSolution& s, double t) {
  detail::require_x_polarized(s.pulse, "linear_x_bloch");
  const double x = s.x(t);
  const double r2 = s.r * s.r;
  const double d = 1.0 + r2;
  return {s.m * (1.0 - r2) / d, -2.0 * s.m * s.r * std::sin(x + s.u) / d,
          2.0 * s.m * s.r * std::cos(x + s.u) / d};
}

inline SpinVector linear_x_llg(const LinearXSolution& s, double t) {
  detail::require_x_polarized(s.pulse, "linear_x_llg");
  const double xb = s.xbar(t);
  const double e = std::exp(s.alpha * xb);
  const double e2 = e * e;
  const double r2 = s.r * s.r;
  const double d = e2 + r2;
  return {s.m * (e2 - r2) / d, -2.0 * s.m * e * s.r * std::sin(xb + s.u) / d,
          2.0 * s.m * e * s.r * std::cos(xb + s.u) / d};
}

// xi(t) = (1 - w)/(1 + w) with w = a e^{i gamma_bar f(t)}.
inline StereoPoint xi_secant(const LinearXSolution& s, double t) {
  detail::require_x_polarized(s.pulse, "xi_secant");
  const Complex gb = DampedGyro{s.gamma, s.alpha}.gamma_bar();
  const Complex w = s.a() * std::exp(Complex(0.0, 1.0) * gb * s.f(t));
  const Complex d = 1.0 + w;
  if (std::abs(d) <= kEpsPole * (1.0 + std::abs(w)))
    throw PoleSingularity("xi_secant: 1 + a e^{i gamma_bar f} vanishes");
  return (1.0 - w) / d;
}

// d(xi)/dt = -2 i gamma_bar b(t) w / (1 + w)^2.
inline StereoPoint xi_secant_derivative(const LinearXSolution& s, double t) {
  detail::require_x_polarized(s.pulse, "xi_secant_derivative");
  const Complex gb = DampedGyro{s.gamma, s.alpha}.gamma_bar();
  const Complex w = s.a() * std::exp(Complex(0.0, 1.0) * gb * s.f(t));
  const Complex d = 1.0 + w;
  if (std::abs(d) <= kEpsPole * (1.0 + std::abs(w)))
    throw PoleSingularity("xi_secant_derivative: 1 + a e^{i gamma_bar f} vanishes");
  const double b = field_at(s.pulse, t).x;
  return -2.0 * Complex(0.0, 1.0) * gb * b * w / (d * d);
}

using FamilyParams = std::variant<PrecessionSolution, LinearXSolution>;

// Undamped solution evaluated at the continued gyromagnetic factor:
// every occurrence of gamma becomes gamma/(1 - i alpha). The argument
// alpha supersedes any damping stored in params.
inline ComplexSpinVector complexified_bloch(SolutionFamily family, const FamilyParams& params,
                                            double alpha, double t) {
  const Complex cont = 1.0 / Complex(1.0, -alpha);
  if (family == SolutionFamily::precession) {
    const auto* s = std::get_if<PrecessionSolution>(&params);
    if (!s) throw UnknownFamily("complexified_bloch: params do not match precession");
    const Complex ph = s->omega * cont * t + s->phi0;
    const double st = std::sin(s->theta0);
    return {s->m * st * std::cos(ph), s->m * st * std::sin(ph),
            Complex(s->m * std::cos(s->theta0))};
  }
  if (family == SolutionFamily::linear_x) {
    const auto* s = std::get_if<LinearXSolution>(&params);
    if (!s) throw UnknownFamily("complexified_bloch: params do not match linear_x");
    detail::require_x_polarized(s->pulse, "complexified_bloch");
    const Complex z = s->gamma * cont * s->f(t) + s->u;
    const double r2 = s->r * s->r;
    const double d = 1.0 + r2;
    return {Complex(s->m * (1.0 - r2) / d), -2.0 * s->m * s->r * std::sin(z) / d,
            2.0 * s->m * s->r * std::cos(z) / d};
  }
  throw UnknownFamily("complexified_bloch: unknown family id");
}

// The transformation pipeline: complexify, project, reconstruct. The result
// is a real vector of norm M solving the damped equation, and coincides with
// the family's dedicated damped formula.
inline SpinVector bloch_to_llg(SolutionFamily family, const FamilyParams& params, double alpha,
                               double t) {
  const double m = std::visit([](const auto& s) { return s.m; }, params);
  const ComplexSpinVector n = complexified_bloch(family, params, alpha, t);
  const StereoPoint xi = stereographic(n, m);
  return inverse_stereographic(xi, m);
}

// Analytic time derivative of bloch_to_llg, obtained from the stereographic
// image and its closed-form derivative.
inline SpinVector llg_time_derivative(SolutionFamily family, const FamilyParams& params,
                                      double alpha, double t) {
  if (family == SolutionFamily::precession) {
    const auto* s = std::get_if<PrecessionSolution>(&params);
    if (!s) throw UnknownFamily("llg_time_derivative: params do not match precession");
    PrecessionSolution d = *s;
    d.alpha = alpha;
    return inverse_stereographic_dot(xi_precession(d, t), xi_precession_derivative(d, t), d.m);
  }
  if (family == SolutionFamily::linear_x) {
    const auto* s = std::get_if<LinearXSolution>(&params);
    if (!s) throw UnknownFamily("llg_time_derivative: params do not match linear_x");
    LinearXSolution d = *s;
    d.alpha = alpha;
    return inverse_stereographic_dot(xi_secant(d, t), xi_secant_derivative(d, t), d.m);
  }
  throw UnknownFamily("llg_time_derivative: unknown family id");
}

}  // namespace spindamp

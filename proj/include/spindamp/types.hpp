// Value types for damped two-level / spin-1/2 dynamics: real and complex
// 3-vectors, the stereographic coordinate, gyromagnetic parameters, and the
// 2x2 quantum state representations.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace spindamp {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Error taxonomy. Every throwing operation documents which of these it uses.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PoleSingularity : Error { using Error::Error; };   // projection hit the south pole
struct NotAState : Error { using Error::Error; };         // |M| > 1 where a quantum state is required
struct NotHermitian : Error { using Error::Error; };
struct BadTrace : Error { using Error::Error; };
struct NotPure : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct UnsupportedPulse : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct DomainTooLarge : Error { using Error::Error; };
struct UnknownFamily : Error { using Error::Error; };
struct StepTooLarge : Error { using Error::Error; };      // integrator drift exceeded its limit

// CSV ingestion failure; carries the 1-based line number of the offending row.
struct CsvError : Error {
  CsvError(const std::string& what, long line_no)
      : Error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
  long line;
};

// ---------------------------------------------------------------------------
// Real and complex 3-vectors
// ---------------------------------------------------------------------------

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline Vec3 operator*(const Vec3& v, double s) { return s * v; }
inline Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

struct CVec3 {
  Complex x{0.0, 0.0};
  Complex y{0.0, 0.0};
  Complex z{0.0, 0.0};
};

inline CVec3 operator+(const CVec3& a, const CVec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline CVec3 operator-(const CVec3& a, const CVec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline CVec3 operator*(const Complex& s, const CVec3& v) { return {s * v.x, s * v.y, s * v.z}; }

inline CVec3 cross(const CVec3& a, const CVec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline CVec3 complexify(const Vec3& v) { return {Complex(v.x), Complex(v.y), Complex(v.z)}; }

// The magnetization M and its analytic continuation N = M(gamma_bar).
using SpinVector = Vec3;
using ComplexSpinVector = CVec3;

// Stereographic image xi = (N_x + i N_y)/(M + N_z) of the (complexified)
// sphere; also equals psi2/psi1 for the unit state.
using StereoPoint = Complex;

// ---------------------------------------------------------------------------
// Gyromagnetic factor with Gilbert damping
// ---------------------------------------------------------------------------

struct DampedGyro {
  double gamma = 1.0;  // gyromagnetic factor (rad/s per field unit)
  double alpha = 0.0;  // dimensionless Gilbert damping, >= 0

  // Continued gyromagnetic factor gamma/(1 - i*alpha).
  Complex gamma_bar() const {
    if (alpha == 0.0) return Complex(gamma, 0.0);
    return gamma / Complex(1.0, -alpha);
  }
};

// ---------------------------------------------------------------------------
// Two-level quantum state representations
// ---------------------------------------------------------------------------

struct DensityMatrix2 {
  Complex rho11{0.0, 0.0};
  Complex rho12{0.0, 0.0};
  Complex rho21{0.0, 0.0};
  Complex rho22{0.0, 0.0};
};

inline DensityMatrix2 operator+(const DensityMatrix2& a, const DensityMatrix2& b) {
  return {a.rho11 + b.rho11, a.rho12 + b.rho12, a.rho21 + b.rho21, a.rho22 + b.rho22};
}
inline DensityMatrix2 operator*(double s, const DensityMatrix2& m) {
  return {s * m.rho11, s * m.rho12, s * m.rho21, s * m.rho22};
}

inline Complex trace(const DensityMatrix2& m) { return m.rho11 + m.rho22; }

// Largest elementwise deviation from rho^2 = rho; zero for a pure state.
inline double purity_defect(const DensityMatrix2& m) {
  const Complex d11 = m.rho11 * m.rho11 + m.rho12 * m.rho21 - m.rho11;
  const Complex d12 = m.rho11 * m.rho12 + m.rho12 * m.rho22 - m.rho12;
  const Complex d21 = m.rho21 * m.rho11 + m.rho22 * m.rho21 - m.rho21;
  const Complex d22 = m.rho21 * m.rho12 + m.rho22 * m.rho22 - m.rho22;
  return std::max(std::max(std::abs(d11), std::abs(d12)),
                  std::max(std::abs(d21), std::abs(d22)));
}

inline double hermiticity_defect(const DensityMatrix2& m) {
  return std::max({std::abs(m.rho21 - std::conj(m.rho12)),
                   std::abs(m.rho11.imag()), std::abs(m.rho22.imag())});
}

struct WaveFunction2 {
  Complex psi1{0.0, 0.0};
  Complex psi2{0.0, 0.0};
};

inline WaveFunction2 operator+(const WaveFunction2& a, const WaveFunction2& b) {
  return {a.psi1 + b.psi1, a.psi2 + b.psi2};
}
inline WaveFunction2 operator*(double s, const WaveFunction2& p) {
  return {s * p.psi1, s * p.psi2};
}

inline double norm(const WaveFunction2& p) {
  return std::sqrt(std::norm(p.psi1) + std::norm(p.psi2));
}

}  // namespace spindamp

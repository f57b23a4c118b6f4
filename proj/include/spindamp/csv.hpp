// CSV and report serialization: 12 significant digits, LF line endings,
// deterministic output for golden-file testing.
#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spindamp/core.hpp"
#include "spindamp/dynamics.hpp"
#include "spindamp/experiments.hpp"
#include "spindamp/types.hpp"

namespace spindamp {

inline std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline void write_spin_csv(std::ostream& out, const Trajectory<SpinVector>& tr) {
  out << "t,Mx,My,Mz\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const auto& s = tr.states[i];
    out << format_sig12(tr.times[i]) << ',' << format_sig12(s.x) << ',' << format_sig12(s.y)
        << ',' << format_sig12(s.z) << '\n';
  }
}

inline void write_xi_csv(std::ostream& out, const Trajectory<StereoPoint>& tr) {
  out << "t,re_xi,im_xi\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    out << format_sig12(tr.times[i]) << ',' << format_sig12(tr.states[i].real()) << ','
        << format_sig12(tr.states[i].imag()) << '\n';
  }
}

inline void write_psi_csv(std::ostream& out, const Trajectory<WaveFunction2>& tr) {
  out << "t,re_psi1,im_psi1,re_psi2,im_psi2\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const auto& p = tr.states[i];
    out << format_sig12(tr.times[i]) << ',' << format_sig12(p.psi1.real()) << ','
        << format_sig12(p.psi1.imag()) << ',' << format_sig12(p.psi2.real()) << ','
        << format_sig12(p.psi2.imag()) << '\n';
  }
}

// Density trajectories are exported through their spin image.
inline void write_density_csv(std::ostream& out, const Trajectory<DensityMatrix2>& tr) {
  out << "t,Mx,My,Mz\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const SpinVector s = density_to_spin(tr.states[i], 1e-6);
    out << format_sig12(tr.times[i]) << ',' << format_sig12(s.x) << ',' << format_sig12(s.y)
        << ',' << format_sig12(s.z) << '\n';
  }
}

namespace detail {

inline double csv_field(const std::string& text, long line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw CsvError("non-numeric field '" + text + "'", line_no);
  }
}

}  // namespace detail

// Reads "t,Mx,My,Mz" rows; a leading non-numeric header is skipped. Throws
// CsvError naming the offending line for short rows, non-numeric fields and
// non-increasing times.
inline Trajectory<SpinVector> read_spin_csv(std::istream& in) {
  Trajectory<SpinVector> tr;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string f[4];
    if (!std::getline(row, f[0], ',') || !std::getline(row, f[1], ',') ||
        !std::getline(row, f[2], ',') || !std::getline(row, f[3]))
      throw CsvError("expected 4 columns t,Mx,My,Mz", line_no);
    if (line_no == 1 && tr.times.empty()) {
      try {
        detail::csv_field(f[0], line_no);
      } catch (const CsvError&) {
        continue;  // header row
      }
    }
    const double t = detail::csv_field(f[0], line_no);
    const SpinVector s{detail::csv_field(f[1], line_no), detail::csv_field(f[2], line_no),
                       detail::csv_field(f[3], line_no)};
    if (!tr.times.empty() && !(t > tr.times.back()))
      throw CsvError("times must be strictly increasing", line_no);
    tr.times.push_back(t);
    tr.states.push_back(s);
  }
  if (tr.times.size() < 2) throw CsvError("need at least 2 rows", line_no);
  return tr;
}

inline void write_scan_csv(std::ostream& out,
                           const std::vector<std::pair<double, Complex>>& rows) {
  out << "param,value_re,value_im\n";
  for (const auto& [p, v] : rows)
    out << format_sig12(p) << ',' << format_sig12(v.real()) << ',' << format_sig12(v.imag())
        << '\n';
}

inline void write_report(std::ostream& out, const SitReport& r) {
  out << "x_infinity=" << format_sig12(r.x_infinity) << '\n';
  if (r.resonance_n)
    out << "resonance_n=" << *r.resonance_n << '\n';
  else
    out << "resonance_n=none\n";
  out << "shifted=" << (r.shifted ? "true" : "false") << '\n';
  out << "final_Mx=" << format_sig12(r.final_state.x) << '\n';
  out << "final_My=" << format_sig12(r.final_state.y) << '\n';
  out << "final_Mz=" << format_sig12(r.final_state.z) << '\n';
  out << "recovery_error=" << format_sig12(r.recovery_error) << '\n';
  out << "closed_form_error=" << format_sig12(r.closed_form_error) << '\n';
}

inline void write_report(std::ostream& out, const DynlocReport& r) {
  out << "chi=" << format_sig12(r.chi) << '\n';
  out << "lambda=" << format_sig12(r.lambda) << '\n';
  out << "q2_re=" << format_sig12(r.q2_mean.real()) << '\n';
  out << "q2_im=" << format_sig12(r.q2_mean.imag()) << '\n';
  out << "secular_omega_re=" << format_sig12(r.secular_omega.real()) << '\n';
  out << "secular_omega_im=" << format_sig12(r.secular_omega.imag()) << '\n';
  out << "t_chi=" << format_sig12(r.t_chi) << '\n';
  out << "resonant_omega=" << format_sig12(r.resonant_omega) << '\n';
  out << "expansion_error=" << format_sig12(r.expansion_error) << '\n';
}

}  // namespace spindamp

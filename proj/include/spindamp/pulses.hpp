// External field catalog: constant z-field, hyperbolic-secant x-pulse,
// cosine drive with static z-offset, and tabulated x-fields, plus pulse
// areas f(t) and a small textual spec language for the CLI.
#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spindamp/types.hpp"

namespace spindamp {

struct ConstantZ {
  double b0 = 1.0;  // B = (0, 0, b0)
};

struct SechX {
  double a = 1.0;    // peak amplitude
  double tau = 1.0;  // width, > 0
  double t0 = 0.0;   // center;  b(t) = a / cosh((t - t0)/tau)
};

struct CosXZ {
  double a = 1.0;        // B = (-a cos(omega t), 0, epsilon)
  double omega = 1.0;    // drive frequency, > 0
  double epsilon = 0.0;  // static z-field
};

struct TabulatedX {
  std::vector<std::pair<double, double>> samples;  // (t, b), strictly increasing t
};

using Pulse = std::variant<ConstantZ, SechX, CosXZ, TabulatedX>;

inline void validate_pulse(const Pulse& p) {
  if (const auto* s = std::get_if<SechX>(&p)) {
    if (!(s->tau > 0.0)) throw Error("SechX: tau must be > 0");
  } else if (const auto* c = std::get_if<CosXZ>(&p)) {
    if (!(c->omega > 0.0)) throw Error("CosXZ: omega must be > 0");
  } else if (const auto* tb = std::get_if<TabulatedX>(&p)) {
    if (tb->samples.size() < 2) throw Error("TabulatedX: need at least 2 samples");
    for (std::size_t i = 1; i < tb->samples.size(); ++i)
      if (!(tb->samples[i - 1].first < tb->samples[i].first))
        throw Error("TabulatedX: abscissae must be strictly increasing");
  }
}

inline bool is_x_polarized(const Pulse& p) {
  return std::holds_alternative<SechX>(p) || std::holds_alternative<TabulatedX>(p);
}

namespace detail {

inline double tabulated_value(const TabulatedX& tb, double t) {
  const auto& s = tb.samples;
  if (t < s.front().first || t > s.back().first)
    throw OutOfRange("TabulatedX: t outside sample range");
  auto it = std::lower_bound(s.begin(), s.end(), t,
                             [](const std::pair<double, double>& p, double v) { return p.first < v; });
  if (it == s.begin()) return it->second;
  if (it == s.end() || it->first > t) {
    auto lo = std::prev(it);
    const double w = (t - lo->first) / (it->first - lo->first);
    return (1.0 - w) * lo->second + w * it->second;
  }
  return it->second;
}

}  // namespace detail

inline Vec3 field_at(const Pulse& p, double t) {
  if (const auto* c = std::get_if<ConstantZ>(&p)) return {0.0, 0.0, c->b0};
  if (const auto* s = std::get_if<SechX>(&p))
    return {s->a / std::cosh((t - s->t0) / s->tau), 0.0, 0.0};
  if (const auto* c = std::get_if<CosXZ>(&p))
    return {-c->a * std::cos(c->omega * t), 0.0, c->epsilon};
  return {detail::tabulated_value(std::get<TabulatedX>(p), t), 0.0, 0.0};
}

// f(t) = integral of b over [from, to] for an x-polarized pulse.
// SechX uses its antiderivative 2 a tau arctan(tanh((t - t0)/(2 tau)));
// TabulatedX uses trapezoidal quadrature over the covered samples.
inline double pulse_area(const Pulse& p, double from, double to) {
  if (const auto* s = std::get_if<SechX>(&p)) {
    auto prim = [&](double t) {
      return 2.0 * s->a * s->tau * std::atan(std::tanh((t - s->t0) / (2.0 * s->tau)));
    };
    return prim(to) - prim(from);
  }
  if (const auto* tb = std::get_if<TabulatedX>(&p)) {
    const double sign = (to >= from) ? 1.0 : -1.0;
    const double lo = std::min(from, to), hi = std::max(from, to);
    const auto& s = tb->samples;
    if (lo < s.front().first || hi > s.back().first)
      throw OutOfRange("TabulatedX: integration limits outside sample range");
    double acc = 0.0;
    double tprev = lo, bprev = detail::tabulated_value(*tb, lo);
    for (const auto& [ts, bs] : s) {
      if (ts <= lo) continue;
      if (ts >= hi) break;
      acc += 0.5 * (bprev + bs) * (ts - tprev);
      tprev = ts;
      bprev = bs;
    }
    const double bhi = detail::tabulated_value(*tb, hi);
    acc += 0.5 * (bprev + bhi) * (hi - tprev);
    return sign * acc;
  }
  throw UnsupportedPulse("pulse_area: pulse is not x-polarized");
}

// f(+inf) - f(from); available in closed form only for SechX,
// where the antiderivative tends to a*tau*pi/2.
inline double pulse_area_to_infinity(const Pulse& p, double from) {
  const auto* s = std::get_if<SechX>(&p);
  if (!s) throw UnsupportedPulse("pulse_area_to_infinity: requires SechX");
  const double pi = 3.14159265358979323846;
  return s->a * s->tau * pi / 2.0 -
         2.0 * s->a * s->tau * std::atan(std::tanh((from - s->t0) / (2.0 * s->tau)));
}

// Two-column CSV "t,b"; an optional non-numeric header row is skipped.
inline TabulatedX tabulated_from_csv(std::istream& in) {
  TabulatedX tb;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string tf, bf;
    if (!std::getline(row, tf, ',') || !std::getline(row, bf))
      throw CsvError("tabulated pulse: expected two columns", line_no);
    try {
      std::size_t pos1 = 0, pos2 = 0;
      const double t = std::stod(tf, &pos1);
      const double b = std::stod(bf, &pos2);
      tb.samples.emplace_back(t, b);
    } catch (const std::exception&) {
      if (line_no == 1 && tb.samples.empty()) continue;  // header row
      throw CsvError("tabulated pulse: non-numeric field", line_no);
    }
  }
  validate_pulse(Pulse{tb});
  return tb;
}

inline TabulatedX tabulated_from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("tabulated pulse: cannot open " + path);
  return tabulated_from_csv(in);
}

namespace detail {

inline double parse_real(const std::string& text, const std::string& ctx) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw Error("");
    return v;
  } catch (const std::exception&) {
    throw Error("pulse spec: bad numeric value '" + text + "' for " + ctx);
  }
}

}  // namespace detail

// Textual pulse specs "kind:key=val,...". Kinds: constz (B0), sech (a, tau,
// t0), cosxz (a, omega, eps), table (CSV path). A bare first value binds to
// the kind's leading parameter, e.g. "constz:0.5" or "sech:2,tau=3".
inline Pulse parse_pulse_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? std::string() : spec.substr(colon + 1);

  if (kind == "table" || kind == "tabulated_x") {
    std::string path = rest;
    if (path.rfind("path=", 0) == 0) path = path.substr(5);
    if (path.empty()) throw Error("pulse spec: table requires a CSV path");
    return tabulated_from_csv_file(path);
  }

  std::vector<std::pair<std::string, std::string>> kv;
  std::istringstream parts(rest);
  std::string item;
  bool first = true;
  while (std::getline(parts, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      if (!first) throw Error("pulse spec: positional value allowed only first: '" + item + "'");
      kv.emplace_back("", item);
    } else {
      kv.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    first = false;
  }

  auto bind = [&](std::initializer_list<std::pair<const char*, double*>> fields,
                  const char* leading) {
    for (const auto& [key, val] : kv) {
      std::string k = key.empty() ? leading : key;
      bool matched = false;
      for (const auto& [name, slot] : fields) {
        if (k == name) {
          *slot = detail::parse_real(val, k);
          matched = true;
          break;
        }
      }
      if (!matched) throw Error("pulse spec: unknown key '" + k + "' for kind " + kind);
    }
  };

  Pulse p;
  if (kind == "constz" || kind == "constant_z") {
    ConstantZ c;
    bind({{"B0", &c.b0}, {"b0", &c.b0}}, "B0");
    p = c;
  } else if (kind == "sech" || kind == "sech_x") {
    SechX s;
    bind({{"a", &s.a}, {"tau", &s.tau}, {"t0", &s.t0}}, "a");
    p = s;
  } else if (kind == "cosxz" || kind == "cos_xz") {
    CosXZ c;
    bind({{"a", &c.a}, {"omega", &c.omega}, {"eps", &c.epsilon}, {"epsilon", &c.epsilon}}, "a");
    p = c;
  } else {
    throw UnsupportedPulse("pulse spec: unknown kind '" + kind + "'");
  }
  validate_pulse(p);
  return p;
}

}  // namespace spindamp

// Command-line front end: trajectory integration, closed-form evaluation,
// trajectory verification, and the transparency / localization experiments.
// Exit codes: 0 success, 1 usage or parse error, 2 integration could not
// proceed (instability or pole), 3 verification failure.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spindamp/spindamp.hpp"

namespace {

using namespace spindamp;

constexpr double kPi = 3.14159265358979323846;

SpinVector state_from_angles(double m, double theta0, double phi0) {
  return {m * std::sin(theta0) * std::cos(phi0), m * std::sin(theta0) * std::sin(phi0),
          m * std::cos(theta0)};
}

std::vector<double> time_grid(double t0, double t1, double dt) {
  const double span = t1 - t0;
  const long n_full = static_cast<long>(std::floor(span / dt + 1e-9));
  const double rem = span - n_full * dt;
  std::vector<double> ts;
  ts.reserve(n_full + 2);
  for (long i = 0; i <= n_full; ++i) ts.push_back(t0 + i * dt);
  if (rem > 1e-12 * span) ts.push_back(t1);
  return ts;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) throw Error("cannot open output file " + path);
  return out;
}

std::vector<double> linspace(double from, double to, int points) {
  if (points < 2) return {from};
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i) v[i] = from + (to - from) * i / (points - 1);
  return v;
}

struct SimulateOpts {
  std::string model, pulse_spec, out;
  double gamma = 1.0, alpha = 0.0, theta0 = 0.0, phi0 = 0.0, mnorm = 1.0;
  double t0 = 0.0, t1 = 1.0, dt = 1e-3;
  int record_every = 1;
};

int cmd_simulate(const SimulateOpts& o) {
  EvolutionConfig cfg;
  cfg.t_start = o.t0;
  cfg.t_end = o.t1;
  cfg.dt = o.dt;
  cfg.gyro = {o.gamma, o.alpha};
  cfg.pulse = parse_pulse_spec(o.pulse_spec);
  cfg.record_every = o.record_every;
  const SpinVector m0 = state_from_angles(o.mnorm, o.theta0, o.phi0);

  double drift = 0.0;
  auto out = open_out(o.out);
  if (o.model == "bloch") {
    if (o.alpha != 0.0) throw Error("model bloch is undamped; --alpha must be 0");
    const auto tr = integrate_bloch(cfg, m0);
    write_spin_csv(out, tr);
    drift = tr.norm_drift;
  } else if (o.model == "llg") {
    const auto tr = integrate_llg(cfg, m0);
    write_spin_csv(out, tr);
    drift = tr.norm_drift;
  } else if (o.model == "riccati") {
    const auto tr = integrate_riccati(cfg, stereographic(complexify(m0), o.mnorm));
    write_xi_csv(out, tr);
    drift = tr.norm_drift;
  } else if (o.model == "density") {
    if (std::abs(o.mnorm - 1.0) > 1e-12) throw Error("model density requires --Mnorm 1");
    const auto tr = integrate_density(cfg, spin_to_density(m0));
    write_density_csv(out, tr);
    drift = tr.norm_drift;
  } else if (o.model == "wavefunction") {
    if (std::abs(o.mnorm - 1.0) > 1e-12) throw Error("model wavefunction requires --Mnorm 1");
    const WaveFunction2 psi0{Complex(std::cos(0.5 * o.theta0)),
                             std::sin(0.5 * o.theta0) * std::exp(Complex(0.0, o.phi0))};
    const auto tr = integrate_wavefunction(cfg, psi0);
    write_psi_csv(out, tr);
    drift = tr.norm_drift;
  } else {
    throw Error("unknown model '" + o.model + "'");
  }
  std::cout << "norm_drift = " << format_sig12(drift) << "\n";
  return 0;
}

struct ClosedformOpts {
  std::string family, what = "llg", pulse_spec, out;
  double b0 = 1.0;
  double gamma = 1.0, alpha = 0.0, theta0 = 0.0, phi0 = 0.0, mnorm = 1.0;
  double t0 = 0.0, t1 = 1.0, dt = 1e-3;
};

int cmd_closedform(const ClosedformOpts& o) {
  const auto ts = time_grid(o.t0, o.t1, o.dt);
  auto out = open_out(o.out);

  auto write_spin = [&](auto&& eval) {
    Trajectory<SpinVector> tr;
    for (double t : ts) {
      tr.times.push_back(t);
      tr.states.push_back(eval(t));
    }
    write_spin_csv(out, tr);
  };
  auto write_xi = [&](auto&& eval) {
    Trajectory<StereoPoint> tr;
    for (double t : ts) {
      tr.times.push_back(t);
      tr.states.push_back(eval(t));
    }
    write_xi_csv(out, tr);
  };

  if (o.family == "precession") {
    const PrecessionSolution s{o.mnorm, o.theta0, o.phi0, o.gamma * o.b0, o.alpha};
    if (o.what == "bloch")
      write_spin([&](double t) { return precession_bloch(s, t); });
    else if (o.what == "llg")
      write_spin([&](double t) { return precession_llg(s, t); });
    else if (o.what == "xi")
      write_xi([&](double t) { return xi_precession(s, t); });
    else
      throw Error("unknown --what '" + o.what + "'");
  } else if (o.family == "linear_x") {
    if (o.pulse_spec.empty()) throw Error("family linear_x requires --pulse");
    const auto s = LinearXSolution::from_angles(o.mnorm, o.theta0, o.phi0, o.gamma, o.alpha,
                                                parse_pulse_spec(o.pulse_spec));
    if (o.what == "bloch")
      write_spin([&](double t) { return linear_x_bloch(s, t); });
    else if (o.what == "llg")
      write_spin([&](double t) { return linear_x_llg(s, t); });
    else if (o.what == "xi")
      write_xi([&](double t) { return xi_secant(s, t); });
    else
      throw Error("unknown --what '" + o.what + "'");
  } else {
    throw Error("unknown family '" + o.family + "'");
  }
  return 0;
}

struct VerifyOpts {
  std::string in, pulse_spec;
  double gamma = 1.0, alpha = 0.0, mnorm = 0.0, tol = 1e-6;
  int subsample = 0;
  unsigned seed = 1;
};

// Derivative estimates: 5-point central stencil on uniform grids, 3-point
// unequal-spacing stencil otherwise / at the edges of the interior.
int cmd_verify(const VerifyOpts& o) {
  std::ifstream in(o.in);
  if (!in) throw Error("cannot open input file " + o.in);
  const auto tr = read_spin_csv(in);
  const Pulse pulse = parse_pulse_spec(o.pulse_spec);
  const DampedGyro gyro{o.gamma, o.alpha};
  const std::size_t n = tr.times.size();
  if (n < 3) throw Error("verify: need at least 3 rows");
  const double mn = o.mnorm > 0.0 ? o.mnorm : norm(tr.states.front());

  bool uniform = true;
  const double h0 = tr.times[1] - tr.times[0];
  for (std::size_t i = 2; i < n && uniform; ++i)
    if (std::abs(tr.times[i] - tr.times[i - 1] - h0) > 1e-9 * std::max(1.0, std::abs(h0)))
      uniform = false;

  std::vector<std::size_t> idx;
  for (std::size_t i = 1; i + 1 < n; ++i) idx.push_back(i);
  if (o.subsample > 0 && static_cast<std::size_t>(o.subsample) < idx.size()) {
    std::mt19937 rng(o.seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(o.subsample);
    std::sort(idx.begin(), idx.end());
  }

  auto derivative = [&](std::size_t i) -> Vec3 {
    if (uniform && i >= 2 && i + 2 < n) {
      const double h = h0;
      return (1.0 / (12.0 * h)) *
             (tr.states[i - 2] - 8.0 * tr.states[i - 1] + 8.0 * tr.states[i + 1] -
              tr.states[i + 2]);
    }
    const double hl = tr.times[i] - tr.times[i - 1];
    const double hr = tr.times[i + 1] - tr.times[i];
    const double wl = -hr / (hl * (hl + hr));
    const double wc = (hr - hl) / (hl * hr);
    const double wr = hl / (hr * (hl + hr));
    return wl * tr.states[i - 1] + wc * tr.states[i] + wr * tr.states[i + 1];
  };

  double max_residual = 0.0;
  for (const std::size_t i : idx) {
    const Vec3 md = derivative(i);
    max_residual = std::max(
        max_residual, gilbert_residual(tr.states[i], md, field_at(pulse, tr.times[i]), gyro, mn));
  }
  double drift = 0.0;
  for (const auto& s : tr.states) drift = std::max(drift, std::abs(norm(s) - mn));

  std::cout << "max_residual = " << format_sig12(max_residual) << "\n";
  std::cout << "norm_drift = " << format_sig12(drift) << "\n";
  return (max_residual <= o.tol && drift <= o.tol) ? 0 : 3;
}

struct SitOpts {
  double gamma = 1.0, a = 1.0, tau = 1.0, alpha = 0.0, t0 = 0.0;
  double theta0 = 0.0, phi0 = 0.0, mnorm = 1.0;
  double window = 20.0, dt = 0.0;  // dt = 0 selects tau/1000
  bool symmetric = false;
  std::string scan, out;
  double scan_from = 0.0, scan_to = 1.0;
  int scan_points = 21;
};

int cmd_sit(const SitOpts& o) {
  auto window_cfg = [&](double tau) {
    EvolutionConfig cfg;
    cfg.t_start = o.symmetric ? o.t0 - o.window * tau : o.t0;
    cfg.t_end = o.t0 + o.window * tau;
    cfg.dt = o.dt > 0.0 ? o.dt : tau / 1000.0;
    return cfg;
  };
  const SpinVector m0 = state_from_angles(o.mnorm, o.theta0, o.phi0);

  if (o.scan.empty()) {
    const auto rep = sit_run(SechX{o.a, o.tau, o.t0}, DampedGyro{o.gamma, o.alpha}, m0,
                             window_cfg(o.tau));
    write_report(std::cout, rep);
    return 0;
  }

  if (o.out.empty()) throw Error("sit --scan requires --out");
  std::vector<std::pair<double, Complex>> rows;
  for (const double p : linspace(o.scan_from, o.scan_to, o.scan_points)) {
    SechX pulse{o.a, o.tau, o.t0};
    DampedGyro gyro{o.gamma, o.alpha};
    if (o.scan == "gatau")
      pulse.a = p / (o.gamma * o.tau);
    else if (o.scan == "alpha")
      gyro.alpha = p;
    else
      throw Error("unknown --scan '" + o.scan + "' (gatau|alpha)");
    const auto rep = sit_run(pulse, gyro, m0, window_cfg(pulse.tau));
    rows.emplace_back(p, Complex(rep.recovery_error, rep.final_state.y));
  }
  auto out = open_out(o.out);
  write_scan_csv(out, rows);  // value_re = recovery_error, value_im = final My
  return 0;
}

struct DynlocOpts {
  double chi = std::nan(""), a = std::nan(""), omega = 1.0;
  int chi_zero = 0;
  double gamma = 1.0, epsilon = 1.0, alpha = 0.0;
  int nmax = 50;
  std::string scan, out;
  double scan_from = 0.0, scan_to = 1.0;
  int scan_points = 21;
};

int cmd_dynloc(const DynlocOpts& o) {
  double chi;
  if (o.chi_zero > 0)
    chi = j0_zero(o.chi_zero);
  else if (!std::isnan(o.chi))
    chi = o.chi;
  else if (!std::isnan(o.a))
    chi = 2.0 * o.a * o.gamma / o.omega;
  else
    throw Error("dynloc needs one of --chi, --chi-zero, --a");

  if (o.scan.empty()) {
    write_report(std::cout, dynloc_report(chi, o.gamma, o.epsilon, o.omega, o.alpha, o.nmax));
    return 0;
  }

  if (o.out.empty()) throw Error("dynloc --scan requires --out");
  std::vector<std::pair<double, Complex>> rows;
  for (const double p : linspace(o.scan_from, o.scan_to, o.scan_points)) {
    if (o.scan == "alpha")
      rows.emplace_back(p, dynloc_q2_of_chi(chi, p));
    else if (o.scan == "chi")
      rows.emplace_back(p, dynloc_q2_of_chi(p, o.alpha));
    else
      throw Error("unknown --scan '" + o.scan + "' (alpha|chi)");
  }
  auto out = open_out(o.out);
  write_scan_csv(out, rows);  // value = <q^2>
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spindamp: damped spin dynamics via analytic continuation of Bloch solutions"};
  app.require_subcommand(1);

  SimulateOpts sim;
  auto* csim = app.add_subcommand("simulate", "integrate an equation of motion, write trajectory CSV");
  csim->add_option("--model", sim.model, "bloch|llg|riccati|density|wavefunction")->required();
  csim->add_option("--pulse", sim.pulse_spec, "pulse spec, e.g. constz:1.0 or sech:a=1,tau=1,t0=0")->required();
  csim->add_option("--gamma", sim.gamma, "gyromagnetic factor");
  csim->add_option("--alpha", sim.alpha, "Gilbert damping");
  csim->add_option("--theta0", sim.theta0, "initial polar angle (rad)");
  csim->add_option("--phi0", sim.phi0, "initial azimuth (rad)");
  csim->add_option("--Mnorm", sim.mnorm, "magnetization norm");
  csim->add_option("--t0", sim.t0, "start time");
  csim->add_option("--t1", sim.t1, "end time")->required();
  csim->add_option("--dt", sim.dt, "time step")->required();
  csim->add_option("--record-every", sim.record_every, "record every n-th step");
  csim->add_option("--out", sim.out, "output CSV path")->required();

  ClosedformOpts cf;
  auto* ccf = app.add_subcommand("closedform", "evaluate an analytic solution family on a time grid");
  ccf->add_option("--family", cf.family, "precession|linear_x")->required();
  ccf->add_option("--what", cf.what, "bloch|llg|xi (default llg)");
  ccf->add_option("--B0", cf.b0, "static z-field (precession)");
  ccf->add_option("--pulse", cf.pulse_spec, "x-polarized pulse spec (linear_x)");
  ccf->add_option("--gamma", cf.gamma, "gyromagnetic factor");
  ccf->add_option("--alpha", cf.alpha, "Gilbert damping");
  ccf->add_option("--theta0", cf.theta0, "initial polar angle (rad)");
  ccf->add_option("--phi0", cf.phi0, "initial azimuth (rad)");
  ccf->add_option("--Mnorm", cf.mnorm, "magnetization norm");
  ccf->add_option("--t0", cf.t0, "start time");
  ccf->add_option("--t1", cf.t1, "end time")->required();
  ccf->add_option("--dt", cf.dt, "grid step")->required();
  ccf->add_option("--out", cf.out, "output CSV path")->required();

  VerifyOpts ver;
  auto* cver = app.add_subcommand("verify", "check a trajectory CSV against the damped equation of motion");
  cver->add_option("--in", ver.in, "trajectory CSV (t,Mx,My,Mz)")->required();
  cver->add_option("--pulse", ver.pulse_spec, "pulse spec used to produce the trajectory")->required();
  cver->add_option("--gamma", ver.gamma, "gyromagnetic factor");
  cver->add_option("--alpha", ver.alpha, "Gilbert damping");
  cver->add_option("--Mnorm", ver.mnorm, "magnetization norm (default: from first row)");
  cver->add_option("--tol", ver.tol, "residual and drift tolerance");
  cver->add_option("--subsample", ver.subsample, "check only n random interior points (0 = all)");
  cver->add_option("--seed", ver.seed, "subsample RNG seed");

  SitOpts sit;
  auto* csit = app.add_subcommand("sit", "self-induced transparency under a damped sech pulse");
  csit->add_option("--gamma", sit.gamma, "gyromagnetic factor");
  csit->add_option("--a", sit.a, "sech amplitude");
  csit->add_option("--tau", sit.tau, "sech width");
  csit->add_option("--alpha", sit.alpha, "Gilbert damping");
  csit->add_option("--t0", sit.t0, "pulse center");
  csit->add_option("--theta0", sit.theta0, "initial polar angle (rad)");
  csit->add_option("--phi0", sit.phi0, "initial azimuth (rad)");
  csit->add_option("--Mnorm", sit.mnorm, "magnetization norm");
  csit->add_option("--window", sit.window, "integration half-width in units of tau");
  csit->add_option("--dt", sit.dt, "time step (default tau/1000)");
  csit->add_flag("--symmetric", sit.symmetric, "start at t0 - window*tau instead of the pulse center");
  csit->add_option("--scan", sit.scan, "scan parameter: gatau|alpha");
  csit->add_option("--scan-from", sit.scan_from, "scan range start");
  csit->add_option("--scan-to", sit.scan_to, "scan range end");
  csit->add_option("--scan-points", sit.scan_points, "scan point count");
  csit->add_option("--out", sit.out, "scan output CSV (param,recovery_error,final_My)");

  DynlocOpts dl;
  auto* cdl = app.add_subcommand("dynloc", "dynamical localization of a driven two-level system");
  cdl->add_option("--chi", dl.chi, "localization parameter 2 a gamma / omega");
  cdl->add_option("--chi-zero", dl.chi_zero, "use the k-th zero of J0 as chi");
  cdl->add_option("--a", dl.a, "drive amplitude (chi = 2 a gamma / omega)");
  cdl->add_option("--omega", dl.omega, "drive frequency");
  cdl->add_option("--gamma", dl.gamma, "gyromagnetic factor");
  cdl->add_option("--epsilon", dl.epsilon, "static z-field");
  cdl->add_option("--alpha", dl.alpha, "Gilbert damping");
  cdl->add_option("--nmax", dl.nmax, "T(chi) truncation order");
  cdl->add_option("--scan", dl.scan, "scan parameter: alpha|chi");
  cdl->add_option("--scan-from", dl.scan_from, "scan range start");
  cdl->add_option("--scan-to", dl.scan_to, "scan range end");
  cdl->add_option("--scan-points", dl.scan_points, "scan point count");
  cdl->add_option("--out", dl.out, "scan output CSV (param,q2_re,q2_im)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(csim)) return cmd_simulate(sim);
    if (app.got_subcommand(ccf)) return cmd_closedform(cf);
    if (app.got_subcommand(cver)) return cmd_verify(ver);
    if (app.got_subcommand(csit)) return cmd_sit(sit);
    if (app.got_subcommand(cdl)) return cmd_dynloc(dl);
  } catch (const spindamp::StepTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const spindamp::PoleSingularity& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const spindamp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

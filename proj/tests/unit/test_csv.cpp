#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>

#include "spindamp/csv.hpp"

using namespace spindamp;

TEST_CASE("format_sig12") {
  REQUIRE(format_sig12(0.0) == "0");
  REQUIRE(format_sig12(1.0) == "1");
  REQUIRE(format_sig12(-2.5) == "-2.5");
  REQUIRE(format_sig12(1e-9) == "1e-09");
  REQUIRE(format_sig12(3.14159265358979323846) == "3.14159265359");
  REQUIRE(format_sig12(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("spin trajectory writer golden") {
  Trajectory<SpinVector> tr;
  tr.times = {0.0, 0.5};
  tr.states = {{0.0, 0.0, 1.0}, {1.0, 0.25, -0.5}};
  std::ostringstream out;
  write_spin_csv(out, tr);
  REQUIRE(out.str() == "t,Mx,My,Mz\n0,0,0,1\n0.5,1,0.25,-0.5\n");
}

TEST_CASE("xi trajectory writer golden") {
  Trajectory<StereoPoint> tr;
  tr.times = {0.0};
  tr.states = {Complex(0.5, -0.25)};
  std::ostringstream out;
  write_xi_csv(out, tr);
  REQUIRE(out.str() == "t,re_xi,im_xi\n0,0.5,-0.25\n");
}

TEST_CASE("wavefunction trajectory writer golden") {
  Trajectory<WaveFunction2> tr;
  tr.times = {1.5};
  tr.states = {WaveFunction2{Complex(1.0, 0.0), Complex(0.0, -0.5)}};
  std::ostringstream out;
  write_psi_csv(out, tr);
  REQUIRE(out.str() == "t,re_psi1,im_psi1,re_psi2,im_psi2\n1.5,1,0,0,-0.5\n");
}

TEST_CASE("density trajectory exports its spin image") {
  Trajectory<DensityMatrix2> tr;
  tr.times = {0.0, 1.0};
  tr.states = {spin_to_density({0.0, 0.0, 1.0}), spin_to_density({1.0, 0.0, 0.0})};
  std::ostringstream out;
  write_density_csv(out, tr);
  REQUIRE(out.str() == "t,Mx,My,Mz\n0,0,0,1\n1,1,0,0\n");
}

TEST_CASE("spin csv round trip") {
  Trajectory<SpinVector> tr;
  tr.times = {0.0, 0.25, 0.5};
  tr.states = {{0.0, 0.0, 1.0}, {0.125, -0.5, 0.75}, {1.0, 0.25, -0.5}};
  std::ostringstream out;
  write_spin_csv(out, tr);
  std::istringstream in(out.str());
  const Trajectory<SpinVector> rt = read_spin_csv(in);
  REQUIRE(rt.times == tr.times);  // these values are exact at 12 significant digits
  for (std::size_t i = 0; i < tr.states.size(); ++i)
    REQUIRE(norm(rt.states[i] - tr.states[i]) == 0.0);
}

TEST_CASE("integrated trajectory survives a write/read cycle") {
  EvolutionConfig cfg;
  cfg.t_end = 1.0;
  cfg.dt = 0.01;
  cfg.gyro = {1.0, 0.1};
  cfg.pulse = ConstantZ{1.0};
  cfg.record_every = 10;
  const auto tr = integrate_llg(cfg, {1.0, 0.0, 0.0});
  std::ostringstream out;
  write_spin_csv(out, tr);
  std::istringstream in(out.str());
  const auto rt = read_spin_csv(in);
  REQUIRE(rt.times.size() == tr.times.size());
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    REQUIRE(rt.times[i] == Catch::Approx(tr.times[i]).margin(1e-11));
    REQUIRE(norm(rt.states[i] - tr.states[i]) < 1e-10);
  }
}

TEST_CASE("reader skips headers and blank lines, tolerates CRLF") {
  std::istringstream in("t,Mx,My,Mz\r\n0,0,0,1\r\n\r\n1,1,0,0\r\n");
  const auto tr = read_spin_csv(in);
  REQUIRE(tr.times.size() == 2);
  REQUIRE(tr.times[1] == 1.0);
  REQUIRE(tr.states[1].x == 1.0);

  std::istringstream bare("0,0,0,1\n1,1,0,0\n");
  REQUIRE(read_spin_csv(bare).times.size() == 2);
}

TEST_CASE("reader names the offending line") {
  std::istringstream shortrow("0,0,0,1\n1,1,0\n");
  try {
    read_spin_csv(shortrow);
    FAIL("expected CsvError");
  } catch (const CsvError& e) {
    REQUIRE(e.line == 2);
    REQUIRE(std::string(e.what()).find("line 2") != std::string::npos);
  }

  std::istringstream badfield("0,0,0,1\n0.5,0,0,1\n0.7,zero,0,1\n");
  try {
    read_spin_csv(badfield);
    FAIL("expected CsvError");
  } catch (const CsvError& e) {
    REQUIRE(e.line == 3);
    REQUIRE(std::string(e.what()).find("zero") != std::string::npos);
  }

  std::istringstream decreasing("0,0,0,1\n2,1,0,0\n1,0,1,0\n");
  try {
    read_spin_csv(decreasing);
    FAIL("expected CsvError");
  } catch (const CsvError& e) {
    REQUIRE(e.line == 3);
  }

  std::istringstream single("0,0,0,1\n");
  REQUIRE_THROWS_AS(read_spin_csv(single), CsvError);
  std::istringstream headeronly("t,Mx,My,Mz\n");
  REQUIRE_THROWS_AS(read_spin_csv(headeronly), CsvError);
}

TEST_CASE("scan writer golden") {
  std::ostringstream out;
  write_scan_csv(out, {{1.0, Complex(0.25, -2.0)}, {2.0, Complex(0.0, 0.5)}});
  REQUIRE(out.str() == "param,value_re,value_im\n1,0.25,-2\n2,0,0.5\n");
}

TEST_CASE("sit report golden") {
  SitReport r;
  r.x_infinity = 6.5;
  r.resonance_n = 1;
  r.shifted = true;
  r.final_state = {0.25, 0.0, 0.5};
  r.recovery_error = 0.125;
  r.closed_form_error = 1e-9;
  std::ostringstream out;
  write_report(out, r);
  REQUIRE(out.str() ==
          "x_infinity=6.5\nresonance_n=1\nshifted=true\nfinal_Mx=0.25\nfinal_My=0\n"
          "final_Mz=0.5\nrecovery_error=0.125\nclosed_form_error=1e-09\n");

  r.resonance_n.reset();
  r.shifted = false;
  std::ostringstream out2;
  write_report(out2, r);
  REQUIRE(out2.str().find("resonance_n=none\n") != std::string::npos);
  REQUIRE(out2.str().find("shifted=false\n") != std::string::npos);
}

TEST_CASE("dynloc report golden") {
  DynlocReport r;
  r.chi = 2.5;
  r.lambda = 2.5;
  r.q2_mean = Complex(0.0625, -0.125);
  r.secular_omega = Complex(0.5, 0.75);
  r.t_chi = -0.25;
  r.resonant_omega = -0.0125;
  r.expansion_error = 0.001;
  std::ostringstream out;
  write_report(out, r);
  REQUIRE(out.str() ==
          "chi=2.5\nlambda=2.5\nq2_re=0.0625\nq2_im=-0.125\nsecular_omega_re=0.5\n"
          "secular_omega_im=0.75\nt_chi=-0.25\nresonant_omega=-0.0125\n"
          "expansion_error=0.001\n");
}

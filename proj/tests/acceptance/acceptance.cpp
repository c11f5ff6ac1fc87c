// Acceptance checks 1-11. One PASS/FAIL line per criterion with its
// measured value and runtime; exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "../oracle_values.hpp"
#include "../support.hpp"
#include "lindloc/cli/commands.hpp"
#include "lindloc/dynamics.hpp"
#include "lindloc/eigen.hpp"
#include "lindloc/errors.hpp"
#include "lindloc/models.hpp"
#include "lindloc/spectral.hpp"

using namespace lindloc;
using namespace lindloc::test;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

const SpectralModel kFlat{SpectralKind::flat, 0.5 * std::numbers::inv_pi, 1.0};

struct NamedModel {
  std::string name;
  cli::RunConfig cfg;
  Generator gen;
};

// Every bundled config, under the modified generator.
std::vector<NamedModel> bundled_models() {
  std::vector<NamedModel> out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(LINDLOC_SOURCE_DIR "/configs")) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    auto cfg = cli::load_config(f.string());
    out.push_back({f.stem().string(), cfg,
                   build_generator(cli::build_system(cfg), GeneratorKind::modified)});
  }
  return out;
}

EnergyLevels levels_of(const ComplexMatrix& h) {
  const auto eig = hermitian_eig(h);
  return group_levels(eig, default_grouping_tol(eig));
}

ComplexMatrix two_qubit_hs(double e1, double e2) {
  const auto i2 = ComplexMatrix::identity(2);
  return kron(0.5 * e1 * pauli::z(), i2) + kron(i2, 0.5 * e2 * pauli::z());
}

void criterion1(Outcome& o) {
  const auto sxsx = kron(pauli::x(), pauli::x());
  const auto expected = kron(pauli::plus(), pauli::minus()) + kron(pauli::minus(), pauli::plus());
  const double resonant = max_abs_diff(secular_filter(sxsx, levels_of(two_qubit_hs(1.0, 1.0))), expected);
  const double detuned = secular_filter(sxsx, levels_of(two_qubit_hs(1.0, 1.5))).max_abs();
  o.detail << "resonant err " << resonant << ", detuned max " << detuned << " ";
  o.require(resonant <= 1e-12 && detuned <= 1e-12, "entrywise <= 1e-12");
}

void criterion2(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> dim(2, 16);
  double completeness = 0.0, conjugation = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = dim(rng);
    const auto lv = levels_of(random_hermitian(d, rng));
    const auto a = random_hermitian(d, rng);
    const auto dec = decompose_operator(a, lv);
    completeness = std::max(completeness, max_abs_diff(dec.sum(), a));
    for (const auto& t : dec.terms) {
      const auto* partner = dec.find(-t.omega, 1e-9);
      if (!partner) {
        o.require(false, "missing -omega partner");
        continue;
      }
      conjugation = std::max(conjugation, max_abs_diff(t.op.adjoint(), partner->op));
    }
  }
  o.detail << "sum err " << completeness << ", conjugation err " << conjugation << " ";
  o.require(completeness <= 1e-10 && conjugation <= 1e-10, "<= 1e-10");
}

void criterion3(Outcome& o) {
  double worst = 0.0;
  for (auto kind : {SpectralKind::flat, SpectralKind::ohmic}) {
    const SpectralModel s{kind, 0.3, 2.0};
    for (double beta : {0.5, 1.0, 2.0}) {
      for (int k = 1; k <= 100; ++k) {
        const double w = 0.05 * k;
        const double g = rate(w, beta, s);
        worst = std::max(worst, std::abs(g - rate(-w, beta, s) * std::exp(beta * w)) / g);
      }
    }
  }
  o.detail << "max rel err " << worst << " ";
  o.require(worst <= 1e-12, "relative 1e-12");
}

void criterion4(Outcome& o) {
  TwoQubitParams detuned;
  detuned.e2 = 1.5;
  const std::pair<const char*, SystemSpec> models[] = {
      {"single", single_qubit_model(1.0, 1.0, kFlat, 0.1)},
      {"resonant", two_qubit_model({})},
      {"detuned", two_qubit_model(detuned)},
      {"chain3", qubit_chain_model(3, {1.0, 1.0, 1.0}, 0.01, 0.01, {2.0, 1.5, 1.0}, kFlat)},
  };
  double worst = 0.0;
  for (const auto& [name, spec] : models) {
    const auto gen = build_modified_local(spec);
    worst = std::max(worst, gen.apply_partial(product_gibbs_state(gen)).max_abs());
  }
  o.detail << "max ||L'[tau_s]||_max " << worst << " ";
  o.require(worst <= 1e-9, "<= 1e-9");
}

void criterion5(Outcome& o, const std::vector<NamedModel>& models) {
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (const auto& m : models)
    for (int i = 0; i < 100; ++i)
      worst = std::max(worst, std::abs(audit(m.gen, random_density(m.gen.dim(), rng)).first_law_residual));
  o.detail << models.size() << " models, max |E_dot - sum Q_dot| " << worst << " ";
  o.require(worst <= 1e-10, "<= 1e-10");
}

SolverConfig solver_for(const Generator& gen, double t_max, std::size_t records) {
  SolverConfig s;
  s.dt = 0.95 * max_stable_dt(gen);
  s.t_max = t_max;
  s.record_stride = std::max<std::size_t>(1, static_cast<std::size_t>(t_max / s.dt) / records);
  return s;
}

void criterion6(Outcome& o, const std::vector<NamedModel>& models) {
  std::mt19937_64 rng(6);
  double min_sigma = std::numeric_limits<double>::infinity(), mismatch = 0.0;
  std::size_t points = 0;
  for (const auto& m : models) {
    double tau = slowest_relaxation_time(m.gen);
    const auto rho0 = random_pure(m.gen.dim(), rng);
    if (!std::isfinite(tau)) {
      // A bath with zero coupling never relaxes its qubit; size the run by
      // the slowest bath that does.
      double slowest = std::numeric_limits<double>::infinity();
      for (const auto& d : m.gen.dissipators) {
        double total = 0.0;
        for (const auto& ch : d.channels) total += ch.rate;
        if (total > 0.0) slowest = std::min(slowest, total);
      }
      tau = 2.0 / slowest;
      o.detail << "(" << m.name << ": t_max from coupled baths only) ";
    }
    try {
      const auto traj = evolve(m.gen, rho0, solver_for(m.gen, 20.0 * tau, 2000));
      for (const auto& r : traj.reports) {
        min_sigma = std::min(min_sigma, r.entropy_production);
        mismatch = std::max(mismatch, r.spohn_rhs_mismatch);
        ++points;
      }
    } catch (const Error& e) {
      o.require(false, m.name + ": " + e.what());
    }
  }
  o.detail << points << " points, min sigma " << min_sigma << ", Spohn mismatch " << mismatch << " ";
  o.require(min_sigma >= -1e-9, "sigma >= -1e-9");
  o.require(mismatch <= 1e-9, "Spohn mismatch <= 1e-9");
}

double steady_q1(double t1, double coupling = 0.01) {
  TwoQubitParams p;
  p.t1 = t1;
  p.alpha = p.beta_coupling = coupling;
  const auto gen = build_modified_local(two_qubit_model(p));
  return audit(gen, steady_state(gen).rho_ss).q_dot[0];
}

void criterion7(Outcome& o) {
  const auto gen = build_modified_local(two_qubit_model({}));
  const auto r = audit(gen, steady_state(gen).rho_ss);
  const double q_equal = steady_q1(1.0);
  const double below = steady_q1(0.999), above = steady_q1(1.001);
  const double rel = std::abs(r.q_dot[0] - oracle::kQ1_t20) / oracle::kQ1_t20;
  o.detail << "Q1 " << r.q_dot[0] << " (oracle rel err " << rel << "), Q1+Q2 "
           << r.q_dot[0] + r.q_dot[1] << ", |Q1(T1=T2)| " << std::abs(q_equal) << ", Q1(0.999) "
           << below << ", Q1(1.001) " << above << " ";
  o.require(r.q_dot[0] > 0.0 && r.q_dot[1] < 0.0, "(a) signs");
  o.require(std::abs(r.q_dot[0] + r.q_dot[1]) <= 1e-12, "(a) Q1 + Q2 = 0");
  o.require(std::abs(q_equal) <= 1e-12, "(b) |Q1| at equal temperatures");
  o.require(below < 0.0 && above > 0.0, "(c) sign change brackets T1 = T2");
  o.require(rel <= 1e-9, "magnitude matches frozen oracle");
  o.require(std::abs(steady_q1(0.5) - oracle::kQ1_t05) <= 1e-9 * std::abs(oracle::kQ1_t05),
            "T1 = 0.5 oracle");
  o.require(std::abs(steady_q1(1.5) - oracle::kQ1_t15) <= 1e-9 * oracle::kQ1_t15, "T1 = 1.5 oracle");
}

void criterion8(Outcome& o) {
  const double e = 1.0, t = 0.8, bc = 0.1;
  const auto gen = build_modified_local(single_qubit_model(e, t, kFlat, bc));
  const auto rho_ss = steady_state(gen).rho_ss;
  const double p_exc = 1.0 / (1.0 + std::exp(e / t));
  const double gibbs_err = std::max(std::abs(rho_ss(0, 0).real() - p_exc),
                                    std::abs(rho_ss(1, 1).real() - (1.0 - p_exc)));
  const double n = 1.0 / std::expm1(e / t);
  const double down = (n + 1.0) * bc * bc, up = n * bc * bc, total = up + down;
  const auto traj = evolve(gen, ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0}),
                           solver_for(gen, 20.0 * slowest_relaxation_time(gen), 1000));
  double traj_err = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double exact = up / total + (1.0 - up / total) * std::exp(-total * traj.times[i]);
    traj_err = std::max(traj_err, max_abs_diff(traj.states[i],
                                               ComplexMatrix::diagonal(std::vector<double>{exact, 1.0 - exact})));
  }
  o.detail << "Gibbs err " << gibbs_err << ", trajectory err " << traj_err << " over "
           << traj.times.size() << " records ";
  o.require(gibbs_err <= 1e-8, "Gibbs populations 1e-8");
  o.require(traj_err <= 1e-6, "rate equation 1e-6");
}

void criterion9(Outcome& o) {
  std::mt19937_64 rng(9);
  const auto gen = build_modified_local(two_qubit_model({}));
  const auto rho0 = random_pure(4, rng);
  auto final_state = [&](double dt) {
    SolverConfig s;
    s.dt = dt;
    s.t_max = 100.0;
    s.record_stride = 1U << 20;
    s.audit = false;
    return evolve(gen, rho0, s).states.back();
  };
  const auto a = final_state(0.04), b = final_state(0.02), c = final_state(0.01);
  const double ratio = max_abs_diff(a, b) / max_abs_diff(b, c);
  o.detail << "dt 0.04/0.02/0.01, ratio " << ratio << " ";
  o.require(ratio >= 12.0 && ratio <= 20.0, "ratio in [12, 20]");
}

void criterion10(Outcome& o, const std::vector<NamedModel>& models) {
  double worst = 0.0;
  for (const auto& m : models) {
    const double tau = slowest_relaxation_time(m.gen);
    if (!std::isfinite(tau)) {
      o.detail << "(" << m.name << ": no unique steady state, skipped) ";
      continue;
    }
    try {
      const auto ss = steady_state(m.gen);
      auto s = solver_for(m.gen, 50.0 * tau, 1);
      s.audit = false;
      const auto traj = evolve(m.gen, cli::initial_state(m.cfg, m.gen), s);
      worst = std::max(worst, max_abs_diff(traj.states.back(), ss.rho_ss));
    } catch (const Error& e) {
      o.require(false, m.name + ": " + e.what());
    }
  }
  o.detail << "max ||rho_ss - rho(t_max)||_max " << worst << " ";
  o.require(worst <= 1e-6, "<= 1e-6");
}

int run_cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "lindloc");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream os, es;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), os, es);
  if (out) *out = os.str() + es.str();
  return code;
}

void criterion11(Outcome& o) {
  const fs::path scratch = fs::temp_directory_path() / "lindloc_acceptance";
  fs::remove_all(scratch);
  const std::string configs = LINDLOC_SOURCE_DIR "/configs/";
  struct Case {
    std::string command, config;
    int expected;
  };
  const Case cases[] = {
      {"simulate", "single_qubit", 0},       {"steady", "single_qubit", 0},
      {"simulate", "two_qubit_resonant", 0}, {"steady", "two_qubit_resonant", 0},
      {"compare", "two_qubit_resonant", 0},  {"simulate", "two_qubit_naive", 0},
      {"compare", "two_qubit_naive", 0},     {"simulate", "two_qubit_detuned", 0},
      {"steady", "two_qubit_detuned", 0},    {"compare", "two_qubit_zz", 0},
      {"simulate", "qubit_chain3", 0},       {"steady", "qubit_chain3", 0},
      {"sweep", "sweep_t1", 0},              {"sweep", "sweep_alpha", 0},
      {"steady", "degenerate_null", 1},
  };
  int runs = 0;
  for (const auto& c : cases) {
    const auto dir = scratch / (c.command + "_" + c.config);
    const int code = run_cli({c.command, configs + c.config + ".yaml", "--out", dir.string()});
    o.require(code == c.expected, c.command + " " + c.config + " exit " + std::to_string(code));
    ++runs;
  }
  std::string msg;
  const int bad = run_cli({"simulate", LINDLOC_SOURCE_DIR "/tests/fixtures/missing_temperature.yaml"}, &msg);
  o.require(bad == 1 && msg.find("baths[0].temperature") != std::string::npos,
            "malformed config exit 1 naming baths[0].temperature");

  int round_trips = 0;
  for (const auto& e : fs::directory_iterator(configs)) {
    const auto cfg = cli::load_config(e.path().string());
    o.require(cli::parse_config(cli::dump_config(cfg)) == cfg, "round trip " + e.path().filename().string());
    ++round_trips;
  }

  auto read = [](const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  run_cli({"sweep", configs + "sweep_t1.yaml", "--out", (scratch / "jobs1").string(), "--jobs", "1"});
  run_cli({"sweep", configs + "sweep_t1.yaml", "--out", (scratch / "jobs4").string(), "--jobs", "4"});
  const auto serial = read(scratch / "jobs1" / "sweep.csv");
  o.require(!serial.empty() && serial == read(scratch / "jobs4" / "sweep.csv"),
            "sweep rows identical under --jobs 4");
  o.detail << runs + 1 << " CLI runs, " << round_trips << " round trips, sweep --jobs 4 deterministic ";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double limit_s;
    std::function<void(Outcome&)> run;
  };
  std::vector<NamedModel> models;
  try {
    models = bundled_models();
  } catch (const std::exception& e) {
    std::printf("cannot load bundled models: %s\n", e.what());
    return 1;
  }
  const Criterion criteria[] = {
      {1, 1.0, criterion1},
      {2, 5.0, criterion2},
      {3, 1.0, criterion3},
      {4, 10.0, criterion4},
      {5, 10.0, [&](Outcome& o) { criterion5(o, models); }},
      {6, 60.0, [&](Outcome& o) { criterion6(o, models); }},
      {7, 10.0, criterion7},
      {8, 5.0, criterion8},
      {9, 10.0, criterion9},
      {10, 60.0, [&](Outcome& o) { criterion10(o, models); }},
      {11, 30.0, criterion11},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < c.limit_s, "runtime limit");
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2d: %s  %.3fs (limit %gs)  %s\n", c.id, o.pass ? "PASS" : "FAIL", secs,
                c.limit_s, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures,
              std::size(criteria));
  return failures == 0 ? 0 : 1;
}

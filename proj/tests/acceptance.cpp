// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Usage: acceptance [--cli <path to carent executable>]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "carent/campaign.hpp"
#include "carent/counterexamples.hpp"
#include "carent/error.hpp"
#include "carent/purification.hpp"
#include "carent/report.hpp"
#include "oracles.hpp"

using namespace carent;

namespace {

constexpr double kLn2 = 0.6931471805599453;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::vector<Region> subsets(const Region& r) {
  std::vector<Region> out;
  const auto& s = r.sites();
  for (std::uint32_t mask = 0; mask < (1u << s.size()); ++mask) {
    std::vector<int> pick;
    for (std::size_t k = 0; k < s.size(); ++k)
      if (mask >> k & 1) pick.push_back(s[k]);
    out.emplace_back(pick);
  }
  return out;
}

Outcome car_correctness() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0;
  int pairs = 0;
  for (int n = 1; n <= 6; ++n) {
    const auto ctx = build_context(n);
    const Eigen::Index d = ctx->dim();
    std::vector<Matrix> a, ad;
    for (int i = 1; i <= n; ++i) {
      a.push_back(ctx->annihilator(i));
      ad.push_back(ctx->creator(i));
      worst = std::max(worst, max_abs(a.back() - oracle::jordan_wigner_annihilator(n, i)));
      worst = std::max(worst, max_abs(ad.back() - a.back().adjoint()));
    }
    const Matrix id = Matrix::Identity(d, d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        worst = std::max(worst, max_abs(ad[i] * a[j] + a[j] * ad[i] - (i == j ? 1.0 : 0.0) * id));
        worst = std::max(worst, max_abs(a[i] * a[j] + a[j] * a[i]));
        worst = std::max(worst, max_abs(ad[i] * ad[j] + ad[j] * ad[i]));
        pairs += 3;
      }
  }
  int checks = 0, failed = 0;
  const auto ctx = build_context(5);
  for (const Region& I : subsets(ctx->lattice())) {
    if (I.empty()) continue;
    for (const Region& J : subsets(ctx->lattice().minus(I))) {
      if (I.size() + J.size() > 5) continue;
      ++checks;
      if (!relative_commutant_check(*ctx, I, J).passed) ++failed;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-12 && failed == 0 && secs < 10.0,
          std::to_string(pairs) + " anticommutators max residual " + fmt(worst) + "; " +
              std::to_string(checks - failed) + "/" + std::to_string(checks) + " commutant checks; " +
              fmt(secs) + " s"};
}

Outcome ssa_universality() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  double worst = -1e300;
  int evaluated = 0, even_count = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 3 + t % 2;
    const auto ctx = build_context(n);
    const bool even = (t / 2) % 2 == 0;
    even_count += even;
    const int rank = 1 + static_cast<int>(rng() % (1u << n));
    const State s = random_state(ctx, ctx->lattice(), even, rank, rng());
    std::vector<std::pair<Region, Region>> cases;
    if (n == 3)
      cases = {{Region{1, 2}, Region{2, 3}}, {Region{1}, Region{3}}, {Region{1, 3}, Region{2, 3}},
               {Region{1}, Region{2, 3}}};
    else
      cases = {{Region{1, 2, 3}, Region{2, 3, 4}}, {Region{1, 3}, Region{2, 4}}, {Region{1, 2}, Region{2, 4}},
               {Region{1, 4}, Region{2, 3}}, {Region{1, 2, 4}, Region{3, 4}}};
    for (const auto& [I, J] : cases) {
      worst = std::max(worst, ssa_gap(s, I, J));
      ++evaluated;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-9 && secs < 60.0,
          "1000 states (" + std::to_string(even_count) + " even), " + std::to_string(evaluated) +
              " region pairs, max ssa_gap " + fmt(worst) + "; " + fmt(secs) + " s"};
}

Outcome even_state_suites() {
  const auto ctx = build_context(3);
  std::mt19937_64 rng(5150);
  double min_tri = 1e300, min_mono = 1e300;
  for (int t = 0; t < 1000; ++t) {
    const State s = random_state(ctx, ctx->lattice(), true, 1 + static_cast<int>(rng() % 8), rng());
    for (const auto& [I, J] : {std::pair{Region{1}, Region{2}}, std::pair{Region{1}, Region{3}},
                               std::pair{Region{2}, Region{3}}, std::pair{Region{1, 2}, Region{3}},
                               std::pair{Region{1}, Region{2, 3}}})
      min_tri = std::min(min_tri, triangle_gap(s, I, J));
    min_mono = std::min(min_mono, mono_ssa_gap(s, Region{1}, Region{2}, Region{3}));
    min_mono = std::min(min_mono, mono_ssa_gap(s, Region{1}, Region{3}, Region{2}));
    min_mono = std::min(min_mono, mono_ssa_gap(s, Region{2}, Region{3}, Region{1}));
  }
  const std::vector<Region> chain{Region{}, Region{3}};
  double min_step = 1e300;
  for (int t = 0; t < 200; ++t) {
    const State s = random_state(ctx, ctx->lattice(), true, 1 + static_cast<int>(rng() % 8), rng());
    const auto c = monotonicity_curve(s, Region{1}, Region{2}, chain);
    min_step = std::min(min_step, c[1] - c[0]);
  }
  return {min_tri >= -1e-9 && min_mono >= -1e-9 && min_step >= -1e-9,
          "min triangle_gap " + fmt(min_tri) + ", min mono_ssa_gap " + fmt(min_mono) +
              ", min monotonicity step " + fmt(min_step)};
}

Outcome symmetric_purification_check() {
  const auto ctx = build_context(4);
  std::mt19937_64 rng(777);
  double worst_entropy = 0, worst_restrict = 0, worst_spec = 0;
  int not_even = 0;
  for (int t = 0; t < 200; ++t) {
    const bool two = t % 2 == 1;
    const Region I = two ? Region{1, 2} : Region{1};
    const Region J = two ? Region{3, 4} : Region{2};
    const State rho = random_state(ctx, I, true, 1 + static_cast<int>(rng() % (two ? 4 : 2)), rng());
    const State p = symmetric_purification(rho, J);
    worst_entropy = std::max(worst_entropy, std::abs(entropy(p)));
    not_even += !is_even(p);
    worst_restrict = std::max(worst_restrict, density_distance(restrict(p, I), rho));
    // multiset comparison over the full sorted spectra (zeros included, same dimension)
    const auto a = eigh(rho.local()).eigenvalues;
    const auto b = eigh(restrict(p, J).local()).eigenvalues;
    worst_spec = std::max(worst_spec, (a - b).cwiseAbs().maxCoeff());
  }
  return {worst_entropy <= 1e-9 && not_even == 0 && worst_restrict <= 1e-10 && worst_spec <= 1e-9,
          "200 states; max S(pure) " + fmt(worst_entropy) + ", non-even " + std::to_string(not_even) +
              ", max restriction residual " + fmt(worst_restrict) + ", max spectrum mismatch " + fmt(worst_spec)};
}

Outcome counterexample_defaults() {
  const auto ctx = build_context(3);
  const auto d = violation_demo(ctx, Region{1}, Region{2}, Region{3}, State::tracial(ctx, Region{3}));
  // independent check: evaluate the entropies from the full density with the oracle
  const Matrix& full = d.full.local();
  const double s_k = oracle::von_neumann(oracle::partial_trace_keep_prefix(full, 1, 3));
  const double s_ki = oracle::von_neumann(oracle::partial_trace_keep_prefix(full, 2, 3));
  const double e1 = std::abs(d.s_K), e2 = std::abs(d.s_I - kLn2), e3 = std::abs(d.s_KI),
               e4 = std::abs(d.s_KJ - kLn2), e5 = std::abs(d.report.mono_ssa_gap + kLn2),
               e6 = std::abs(d.report.triangle_gap + kLn2);
  const double worst = std::max({e1, e2, e3, e4, e5, e6, std::abs(s_k), std::abs(s_ki)});
  return {worst <= 1e-9 && d.report.ssa_gap <= 1e-9,
          "mono_ssa_gap " + format_double(d.report.mono_ssa_gap) + ", triangle_gap " +
              format_double(d.report.triangle_gap) + ", ssa_gap " + fmt(d.report.ssa_gap) +
              ", max deviation " + fmt(worst)};
}

Outcome joint_extension_identities() {
  const auto ctx = build_context(5);
  std::mt19937_64 rng(4242);
  double worst_res = 0, worst_ent = 0;
  int built = 0;
  while (built < 50) {
    const bool two = built % 2 == 1;
    const Region I = two ? Region{2, 3} : Region{2};
    const Region J = two ? Region{4, 5} : Region{3};
    const State tilde = random_state(ctx, I, false, 1 + static_cast<int>(rng() % (two ? 4 : 2)), rng());
    if (density_distance(tilde, theta_state(tilde)) <= 1e-6) continue;
    const auto r = make_recipe(ctx, Region{1}, I, J, tilde);
    validate_recipe(r);
    const State psi = joint_extension(r);
    worst_res = std::max({worst_res, density_distance(restrict(psi, Region{1}), r.rho1),
                          density_distance(restrict(psi, I), r.rho2)});
    worst_ent = std::max(worst_ent, std::abs(entropy(psi) - entropy(tilde)));
    ++built;
  }
  return {worst_res <= 1e-10 && worst_ent <= 1e-9,
          "50 recipes; max restriction residual " + fmt(worst_res) + ", max |S(psi) - S(rho2~)| " + fmt(worst_ent)};
}

Outcome oddness_quantifier() {
  const auto ctx = build_context(3);
  std::mt19937_64 rng(99);
  double worst_even = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 3;
    const Region r = Region::range(1, n);
    const State s = random_state(ctx, r, true, 1 + static_cast<int>(rng() % (1u << n)), rng());
    worst_even = std::max(worst_even, std::abs(p_theta(s) - 1.0));
  }
  // odd eigenvector states: the default one and eigenvectors of random odd self-adjoint operators
  double worst_odd = 0;
  int odd_states = 0;
  std::normal_distribution<double> g;
  for (const Region& K : {Region{1}, Region{2}, Region{1, 2}, Region{1, 3}, Region{1, 2, 3}}) {
    worst_odd = std::max(worst_odd, p_theta(odd_eigenvector_state(ctx, K)));
    ++odd_states;
    for (int k = 0; k < 10; ++k) {
      Matrix a = Matrix::Zero(ctx->dim(), ctx->dim());
      for (const auto& e : monomial_basis(*ctx, K)) a += g(rng) * e.matrix;
      a = 0.5 * (a + a.adjoint()).eval();
      const auto odd = grade_split(*ctx, OperatorElement{a, K, {}}).second;
      try {
        worst_odd = std::max(worst_odd, p_theta(odd_eigenvector_state(ctx, K, odd)));
        ++odd_states;
      } catch (const ArgumentError&) {
        // degenerate top eigenvalue; skip this draw
      }
    }
  }
  double worst_sym = 0;
  bool in_range = true;
  for (int t = 0; t < 200; ++t) {
    const State a = random_state(ctx, ctx->lattice(), t % 3 == 0, 1 + static_cast<int>(rng() % 8), rng());
    const State b = random_state(ctx, ctx->lattice(), t % 2 == 0, 1 + static_cast<int>(rng() % 8), rng());
    const double ab = transition_probability(a, b), ba = transition_probability(b, a);
    worst_sym = std::max(worst_sym, std::abs(ab - ba));
    in_range = in_range && ab >= 0 && ab <= 1 && ba >= 0 && ba <= 1;
  }
  return {worst_even <= 1e-8 && worst_odd <= 1e-8 && worst_sym <= 1e-9 && in_range,
          "max |p_theta - 1| on 200 even states " + fmt(worst_even) + ", max p_theta on " +
              std::to_string(odd_states) + " odd eigenvector states " + fmt(worst_odd) +
              ", max fidelity asymmetry " + fmt(worst_sym)};
}

Outcome bounds() {
  std::mt19937_64 rng(31337);
  double worst_violation = -1e300;
  for (int t = 0; t < 2000; ++t) {
    const int n = 3 + t % 2;
    const auto ctx = build_context(n);
    const State s = random_state(ctx, ctx->lattice(), false, 1 + static_cast<int>(rng() % (1u << n)), rng());
    const std::vector<std::pair<Region, Region>> cases =
        n == 3 ? std::vector<std::pair<Region, Region>>{{Region{1}, Region{2}}, {Region{1}, Region{2, 3}},
                                                        {Region{2}, Region{1, 3}}}
               : std::vector<std::pair<Region, Region>>{{Region{1, 2}, Region{3, 4}}, {Region{1}, Region{2, 3, 4}},
                                                        {Region{1, 3}, Region{2}}};
    for (const auto& [I, K] : cases) worst_violation = std::max(worst_violation, -triangle_gap(s, I, K));
  }
  const auto ctx = build_context(2);
  int failed_mix = 0, strict_checked = 0, strict_failed = 0;
  double min_strict = 1e300;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    const Region r = t % 2 ? Region{1, 2} : Region{1};
    const int d = 1 << r.size();
    const State a = random_state(ctx, r, false, 1 + static_cast<int>(rng() % d), rng());
    const State b = random_state(ctx, r, false, 1 + static_cast<int>(rng() % d), rng());
    if (!mixing_bounds_check(a, b, u(rng)).holds) ++failed_mix;
    if (density_distance(a, b) > 1e-3) {
      const auto half = mixing_bounds_check(a, b, 0.5);
      ++strict_checked;
      min_strict = std::min(min_strict, half.concavity_slack);
      if (half.concavity_slack <= 1e-6) ++strict_failed;
    }
  }
  return {worst_violation <= 3 * kLn2 + 1e-9 && failed_mix == 0 && strict_failed == 0,
          "max triangle violation " + fmt(worst_violation) + " (bound " + fmt(3 * kLn2) + ") over 2000 states; " +
              std::to_string(500 - failed_mix) + "/500 mixing checks; min strict-concavity slack " +
              fmt(min_strict) + " over " + std::to_string(strict_checked) + " distinct pairs"};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(8675309);
  double worst = 0;
  int comparisons = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 4;
    const auto ctx = build_context(n);
    const State s = random_state(ctx, ctx->lattice(), t % 2 == 0, 1 + static_cast<int>(rng() % (1u << n)), rng());
    for (int keep = 1; keep < n; ++keep) {
      const Matrix expected = oracle::partial_trace_keep_prefix(s.local(), keep, n);
      worst = std::max(worst, max_abs(restrict(s, Region::range(1, keep)).local() - expected));
      ++comparisons;
    }
  }
  return {worst <= 1e-10, "100 states, " + std::to_string(comparisons) + " prefix restrictions, max deviation " +
                              fmt(worst)};
}

int run_command(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

Outcome determinism(const std::string& cli) {
  VerifyConfig cfg;
  cfg.trials = 60;
  cfg.seed = 11;
  cfg.parity = ParityMode::Mixed;
  const bool lib_verify = verify_json(run_verify(cfg)) == verify_json(run_verify(cfg)) &&
                          verify_json(run_verify(cfg)) == verify_json(run_verify_serial(cfg)) &&
                          verify_csv(run_verify(cfg)) == verify_csv(run_verify(cfg));
  const bool lib_table = table1_json(run_table1(3, 40)) == table1_json(run_table1(3, 40)) &&
                         table1_text(run_table1(3, 40)) == table1_text(run_table1(3, 40));
  std::string detail = std::string("library verify ") + (lib_verify ? "identical" : "DIFFERS") + ", table1 " +
                       (lib_table ? "identical" : "DIFFERS");
  bool ok = lib_verify && lib_table;
  if (!cli.empty()) {
    const auto dir = std::filesystem::temp_directory_path() / ("carent_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const std::vector<std::pair<std::string, std::string>> cmds = {
        {"table1", "table1 --trials 50 --seed 5"},
        {"verify", "verify --suite all --sites 3 --trials 100 --seed 7 --parity mixed"},
        {"verify_csv", "verify --suite ssa --sites 4 --trials 50 --seed 9 --format csv"}};
    bool cli_ok = true;
    for (const auto& [name, args] : cmds) {
      std::string first;
      for (int run = 0; run < 2; ++run) {
        const auto out = dir / (name + "_" + std::to_string(run) + ".out");
        const int code = run_command("\"" + cli + "\" " + args + " --out \"" + out.string() + "\"");
        const std::string bytes = slurp(out);
        cli_ok = cli_ok && code == 0 && !bytes.empty();
        if (run == 0)
          first = bytes;
        else
          cli_ok = cli_ok && bytes == first;
      }
    }
    const int usage = run_command("\"" + cli + "\" verify --I 1,1 --J 2 >/dev/null 2>&1");
    std::filesystem::remove_all(dir);
    ok = ok && cli_ok && usage == 2;
    detail += std::string("; CLI reruns ") + (cli_ok ? "byte-identical" : "DIFFER") + ", usage error exit " +
              std::to_string(usage);
  } else {
    detail += "; CLI not given, CLI reruns skipped";
    ok = false;
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"car_correctness", car_correctness},
      {"ssa_universality", ssa_universality},
      {"even_state_inequalities", even_state_suites},
      {"symmetric_purification", symmetric_purification_check},
      {"counterexample_defaults", counterexample_defaults},
      {"joint_extension_identities", joint_extension_identities},
      {"oddness_quantifier", oddness_quantifier},
      {"entropy_bounds", bounds},
      {"partial_trace_oracle", oracle_equivalence},
      {"determinism", [&] { return determinism(cli); }},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (k + 1) << " " << criteria[k].first << ": " << o.detail
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "carent/campaign.hpp"
#include "carent/counterexamples.hpp"
#include "carent/error.hpp"
#include "carent/purification.hpp"
#include "carent/report.hpp"

namespace {

using namespace carent;

constexpr int kExitOk = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitUsage = 2;

struct Common {
  int sites = 3;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
};

std::optional<Region> parse_region(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return Region::parse(text);
}

// Seed precedence: --seed, then CARENT_SEED, then 0.
std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t flag_value) {
  if (opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("CARENT_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ArgumentError("CARENT_SEED is not an unsigned integer");
  }
  return 0;
}

void write_report(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::filesystem::path path(out);
  if (path.is_relative())
    if (const char* dir = std::getenv("CARENT_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot open " + path.string() + " for writing");
  f << text;
}

std::string verify_text(const VerifyResult& r) {
  std::ostringstream os;
  os << "verify suite=" << to_string(r.config.suite) << " sites=" << r.config.sites
     << " trials=" << r.config.trials << " seed=" << r.config.seed
     << " parity=" << to_string(r.config.parity) << "\n";
  auto line = [&](const char* name, const std::optional<SuiteSummary>& s) {
    if (!s) return;
    os << name << ": evaluated=" << s->evaluated << " violations=" << s->violations
       << " indeterminate=" << s->indeterminate << " unexpected=" << s->unexpected
       << " min_gap=" << format_double(s->min_gap) << " max_gap=" << format_double(s->max_gap)
       << " max_violation=" << format_double(s->max_violation) << "\n";
  };
  line("ssa", r.ssa);
  line("triangle", r.triangle);
  line("mono-ssa", r.mono_ssa);
  return os.str();
}

std::string counterexample_text(const ViolationDemo& d) {
  std::ostringstream os;
  const auto& r = d.recipe;
  os << "K=" << r.K.to_string() << " I=" << r.I.to_string() << " J=" << r.J.to_string() << "\n"
     << "S(K)=" << format_double(d.s_K) << " S(I)=" << format_double(d.s_I) << " S(J)=" << format_double(d.s_J)
     << "\nS(KI)=" << format_double(d.s_KI) << " S(KJ)=" << format_double(d.s_KJ)
     << " S(KIJ)=" << format_double(d.s_KIJ) << "\n"
     << "mono_ssa_gap=" << format_double(d.report.mono_ssa_gap) << " (" << to_string(d.report.mono_ssa) << ")\n"
     << "triangle_gap=" << format_double(d.report.triangle_gap) << " (" << to_string(d.report.triangle) << ")\n"
     << "ssa_gap=" << format_double(d.report.ssa_gap) << " (" << to_string(d.report.ssa) << ")\n"
     << "reproduced=" << (d.reproduced() ? "true" : "false") << "\n";
  return os.str();
}

struct PurifyOutcome {
  std::string report;
  bool ok = false;
};

PurifyOutcome run_purify(const ContextPtr& ctx, const Region& I, const Region& J, int trials,
                         std::uint64_t seed, std::optional<int> rank, const std::string& format) {
  using nlohmann::ordered_json;
  ordered_json rows = ordered_json::array();
  std::ostringstream csv;
  csv << "trial,seed,rank,entropy_pure,even,restriction_residual,spectrum_residual,entropy_I,entropy_J,ok\n";
  bool all_ok = true;
  const int dim = 1 << I.size();
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = trial_seed(seed, static_cast<std::uint64_t>(t));
    const int rk = rank ? *rank : 1 + static_cast<int>(s % static_cast<std::uint64_t>(dim));
    const State rho = random_state(ctx, I, true, rk, s);
    const State pure = symmetric_purification(rho, J);
    const State onJ = restrict(pure, J);
    const double s_pure = entropy(pure);
    const bool even = is_even(pure);
    const double res_I = density_distance(restrict(pure, I), rho);
    const auto a = nonzero_spectrum(rho.local(), 1e-9);
    const auto b = nonzero_spectrum(onJ.local(), 1e-9);
    double res_spec = a.size() == b.size() ? 0.0 : 1.0;
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) res_spec = std::max(res_spec, std::abs(a[k] - b[k]));
    const bool ok = std::abs(s_pure) <= 1e-9 && even && res_I <= 1e-10 && res_spec <= 1e-9;
    all_ok = all_ok && ok;
    rows.push_back({{"trial", t},
                    {"seed", s},
                    {"rank", rk},
                    {"entropy_pure", s_pure},
                    {"even", even},
                    {"restriction_residual", res_I},
                    {"spectrum_residual", res_spec},
                    {"entropy_I", entropy(rho)},
                    {"entropy_J", entropy(onJ)},
                    {"ok", ok}});
    csv << t << "," << s << "," << rk << "," << format_double(s_pure) << "," << (even ? "true" : "false") << ","
        << format_double(res_I) << "," << format_double(res_spec) << "," << format_double(entropy(rho)) << ","
        << format_double(entropy(onJ)) << "," << (ok ? "true" : "false") << "\n";
  }
  if (format == "csv") return {csv.str(), all_ok};
  ordered_json out = {{"command", "purify"},
                      {"config", {{"sites", ctx->sites()}, {"I", I.sites()}, {"J", J.sites()}, {"trials", trials},
                                  {"seed", seed}}},
                      {"trials", rows},
                      {"all_ok", all_ok}};
  if (format == "text") {
    std::ostringstream os;
    os << "purify I=" << I.to_string() << " J=" << J.to_string() << " trials=" << trials
       << " all_ok=" << (all_ok ? "true" : "false") << "\n";
    return {os.str(), all_ok};
  }
  return {out.dump(2) + "\n", all_ok};
}

void add_common(CLI::App* cmd, Common& c, CLI::Option*& seed_opt) {
  cmd->add_option("--sites", c.sites, "number of lattice sites")->check(CLI::Range(1, kMaxSites));
  seed_opt = cmd->add_option("--seed", c.seed, "master seed (default: $CARENT_SEED or 0)");
  cmd->add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--out", c.out, "report path (default: stdout); relative paths honour $CARENT_OUTPUT_DIR");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy inequalities on finite CAR lattices"};
  app.require_subcommand(1);

  // verify
  Common vc;
  CLI::Option* v_seed = nullptr;
  std::string v_suite = "all", v_parity = "any", v_I, v_J, v_K;
  bool v_even = false;
  std::optional<int> v_rank;
  int v_trials = 100;
  double v_tol = 1e-9;
  auto* verify = app.add_subcommand("verify", "run an inequality suite over random states");
  add_common(verify, vc, v_seed);
  verify->add_option("--suite", v_suite)->check(CLI::IsMember({"ssa", "triangle", "mono-ssa", "all"}));
  verify->add_option("--trials", v_trials)->check(CLI::PositiveNumber);
  verify->add_flag("--even", v_even, "draw even states only");
  verify->add_option("--parity", v_parity)->check(CLI::IsMember({"any", "even", "mixed"}));
  verify->add_option("--rank", v_rank, "fixed density rank");
  verify->add_option("--I", v_I, "region, e.g. 1,3");
  verify->add_option("--J", v_J);
  verify->add_option("--K", v_K);
  verify->add_option("--tolerance", v_tol, "holds threshold")->check(CLI::PositiveNumber);

  // counterexample
  Common cc;
  CLI::Option* c_seed = nullptr;
  std::string c_I = "2", c_J, c_K = "1", c_rhoJ = "tracial";
  int c_jsites = 1;
  double c_tol = 1e-9;
  auto* cx = app.add_subcommand("counterexample", "build the noneven joint extension and measure violations");
  add_common(cx, cc, c_seed);
  cx->add_option("--K", c_K);
  cx->add_option("--I", c_I);
  cx->add_option("--J", c_J, "default: the next --J-sites sites after K and I");
  cx->add_option("--J-sites", c_jsites)->check(CLI::Range(1, kMaxSites));
  cx->add_option("--rhoJ", c_rhoJ)->check(CLI::IsMember({"tracial", "random"}));
  cx->add_option("--tolerance", c_tol)->check(CLI::PositiveNumber);

  // table1
  Common tc;
  CLI::Option* t_seed = nullptr;
  int t_trials = 200;
  auto* table = app.add_subcommand("table1", "reproduce the CAR column of the truth table");
  add_common(table, tc, t_seed);
  table->add_option("--trials", t_trials)->check(CLI::PositiveNumber);

  // purify
  Common pc;
  CLI::Option* p_seed = nullptr;
  std::string p_I = "1", p_J = "2";
  int p_trials = 20;
  std::optional<int> p_rank;
  auto* purify = app.add_subcommand("purify", "symmetric purification of random even states");
  add_common(purify, pc, p_seed);
  purify->add_option("--I", p_I);
  purify->add_option("--J", p_J);
  purify->add_option("--trials", p_trials)->check(CLI::PositiveNumber);
  purify->add_option("--rank", p_rank);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify) {
      VerifyConfig cfg;
      cfg.suite = parse_suite(v_suite);
      cfg.sites = vc.sites;
      cfg.trials = v_trials;
      cfg.seed = resolve_seed(v_seed, vc.seed);
      cfg.parity = v_even ? ParityMode::Even
                          : (v_parity == "even" ? ParityMode::Even
                                                : (v_parity == "mixed" ? ParityMode::Mixed : ParityMode::Any));
      cfg.rank = v_rank;
      cfg.I = parse_region(v_I);
      cfg.J = parse_region(v_J);
      cfg.K = parse_region(v_K);
      cfg.tolerance.holds = v_tol;
      const auto r = run_verify(cfg);
      write_report(vc.format == "csv" ? verify_csv(r) : (vc.format == "text" ? verify_text(r) : verify_json(r)),
                   vc.out);
      return r.exit_code() == 0 ? kExitOk : kExitUnexpected;
    }
    if (*cx) {
      const Region K = Region::parse(c_K);
      const Region I = Region::parse(c_I);
      Region J;
      if (!c_J.empty()) {
        J = Region::parse(c_J);
      } else {
        const int start = std::max(K.empty() ? 0 : K.back(), I.empty() ? 0 : I.back()) + 1;
        J = Region::range(start, start + c_jsites - 1);
      }
      int sites = cc.sites;
      for (const Region* r : {&K, &I, static_cast<const Region*>(&J)})
        if (!r->empty()) sites = std::max(sites, r->back());
      const auto ctx = build_context(sites);
      const std::uint64_t seed = resolve_seed(c_seed, cc.seed);
      const State rhoJ = c_rhoJ == "random"
                             ? random_state(ctx, J, true, 1 + static_cast<int>(seed % (1u << J.size())), seed)
                             : State::tracial(ctx, J);
      Tolerance tol;
      tol.holds = c_tol;
      const auto demo = violation_demo(ctx, K, I, J, rhoJ, std::nullopt, tol);
      write_report(cc.format == "csv" ? counterexample_csv(demo)
                                      : (cc.format == "text" ? counterexample_text(demo) : counterexample_json(demo)),
                   cc.out);
      return demo.reproduced() ? kExitOk : kExitUnexpected;
    }
    if (*table) {
      const auto t = run_table1(resolve_seed(t_seed, tc.seed), t_trials, tc.sites);
      write_report(tc.format == "csv" ? table1_csv(t) : (tc.format == "text" ? table1_text(t) : table1_json(t)),
                   tc.out);
      return t.all_passed ? kExitOk : kExitUnexpected;
    }
    if (*purify) {
      const Region I = Region::parse(p_I);
      const Region J = Region::parse(p_J);
      int sites = pc.sites;
      for (const Region* r : {&I, &J})
        if (!r->empty()) sites = std::max(sites, r->back());
      if (I.empty()) throw ArgumentError("purify needs a nonempty --I");
      const auto outcome =
          run_purify(build_context(sites), I, J, p_trials, resolve_seed(p_seed, pc.seed), p_rank, pc.format);
      write_report(outcome.report, pc.out);
      return outcome.ok ? kExitOk : kExitUnexpected;
    }
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SizeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    // inputs that are well formed but outside what the construction supports
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

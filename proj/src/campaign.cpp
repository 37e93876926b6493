#include "carent/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "carent/error.hpp"

namespace carent {

namespace {

// Violation of the triangle inequality cannot exceed 3 ln 2 for any state.
const double kTriangleBound = 3 * std::numbers::ln2;

SuiteSummary summarize(const std::vector<TrialRecord>& trials,
                       std::optional<GapRecord> TrialRecord::*field, bool upper_is_violation) {
  SuiteSummary s;
  s.min_gap = std::numeric_limits<double>::infinity();
  s.max_gap = -std::numeric_limits<double>::infinity();
  for (const auto& t : trials) {
    const auto& g = t.*field;
    if (!g) continue;
    ++s.evaluated;
    s.min_gap = std::min(s.min_gap, g->gap);
    s.max_gap = std::max(s.max_gap, g->gap);
    if (g->verdict == Verdict::Violated) ++s.violations;
    if (g->verdict == Verdict::Indeterminate) ++s.indeterminate;
    if (g->unexpected) ++s.unexpected;
  }
  if (s.evaluated == 0) s.min_gap = s.max_gap = 0;
  s.max_violation = upper_is_violation ? std::max(0.0, s.max_gap) : std::max(0.0, -s.min_gap);
  return s;
}

VerifyResult finish(const VerifyConfig& cfg, const SuiteRegions& regions, std::vector<TrialRecord> trials) {
  VerifyResult r{cfg, regions, std::move(trials), {}, {}, {}};
  const bool all = cfg.suite == Suite::All;
  if (all || cfg.suite == Suite::Ssa) r.ssa = summarize(r.trials, &TrialRecord::ssa, true);
  if (all || cfg.suite == Suite::Triangle) r.triangle = summarize(r.trials, &TrialRecord::triangle, false);
  if (all || cfg.suite == Suite::MonoSsa) r.mono_ssa = summarize(r.trials, &TrialRecord::mono_ssa, false);
  return r;
}

void check_config(const VerifyConfig& cfg) {
  if (cfg.sites < 1 || cfg.sites > kMaxSites) throw SizeError("site count out of range");
  if (cfg.trials < 1) throw ArgumentError("trials must be >= 1");
  if (cfg.tolerance.holds <= 0) throw ArgumentError("tolerance must be > 0");
  if (cfg.rank && (*cfg.rank < 1 || *cfg.rank > (1 << cfg.sites)))
    throw ArgumentError("rank outside [1, 2^sites]");
}

}  // namespace

Suite parse_suite(std::string_view text) {
  if (text == "ssa") return Suite::Ssa;
  if (text == "triangle") return Suite::Triangle;
  if (text == "mono-ssa") return Suite::MonoSsa;
  if (text == "all") return Suite::All;
  throw ArgumentError("unknown suite '" + std::string(text) + "'");
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::Ssa: return "ssa";
    case Suite::Triangle: return "triangle";
    case Suite::MonoSsa: return "mono-ssa";
    case Suite::All: return "all";
  }
  return "all";
}

std::string to_string(ParityMode p) {
  switch (p) {
    case ParityMode::Any: return "any";
    case ParityMode::Even: return "even";
    case ParityMode::Mixed: return "mixed";
  }
  return "any";
}

SuiteRegions resolve_regions(const VerifyConfig& cfg) {
  const int n = cfg.sites;
  SuiteRegions r;
  const bool needs_ssa = cfg.suite == Suite::All || cfg.suite == Suite::Ssa;
  const bool needs_tri = cfg.suite == Suite::All || cfg.suite == Suite::Triangle;
  const bool needs_mono = cfg.suite == Suite::All || cfg.suite == Suite::MonoSsa;

  if (cfg.I || cfg.J) {
    if (!cfg.I || !cfg.J) throw ArgumentError("--I and --J must be given together");
    r.ssa_I = r.tri_I = r.mono_I = *cfg.I;
    r.ssa_J = r.tri_J = r.mono_J = *cfg.J;
  } else {
    r.ssa_I = n >= 3 ? Region{1, 2} : Region{1};
    r.ssa_J = n >= 3 ? Region{2, 3} : (n >= 2 ? Region{2} : Region{1});
    r.tri_I = r.mono_I = Region{1};
    r.tri_J = r.mono_J = n >= 2 ? Region{2} : Region{};
  }
  r.mono_K = cfg.K ? *cfg.K : (n >= 3 ? Region{3} : Region{});

  const Region lattice = Region::range(1, n);
  auto inside = [&](const Region& x) {
    if (!lattice.contains(x)) throw ArgumentError("region " + x.to_string() + " outside the lattice");
  };
  if (needs_ssa) {
    inside(r.ssa_I);
    inside(r.ssa_J);
  }
  if (needs_tri) {
    inside(r.tri_I.unite(r.tri_J));
    if (!r.tri_I.disjoint(r.tri_J)) throw ArgumentError("triangle suite needs disjoint I and J");
  }
  if (needs_mono) {
    inside(r.mono_I.unite(r.mono_J).unite(r.mono_K));
    if (!r.mono_I.disjoint(r.mono_J) || !r.mono_I.disjoint(r.mono_K) || !r.mono_J.disjoint(r.mono_K))
      throw ArgumentError("mono-ssa suite needs mutually disjoint I, J, K");
  }
  return r;
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  // splitmix64 finalizer over a Weyl step
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TrialRecord run_trial(const ContextPtr& ctx, const VerifyConfig& cfg, const SuiteRegions& regions,
                      int index) {
  TrialRecord t;
  t.trial = index;
  t.seed = trial_seed(cfg.seed, static_cast<std::uint64_t>(index));
  std::mt19937_64 rng(t.seed);
  const int dim = 1 << cfg.sites;
  t.rank = cfg.rank ? *cfg.rank : std::uniform_int_distribution<int>(1, dim)(rng);
  switch (cfg.parity) {
    case ParityMode::Any: t.even = false; break;
    case ParityMode::Even: t.even = true; break;
    case ParityMode::Mixed: t.even = (index % 2) == 1; break;
  }
  const State phi = random_state(ctx, ctx->lattice(), t.even, t.rank, rng());
  const auto& tol = cfg.tolerance;
  const bool all = cfg.suite == Suite::All;

  if (all || cfg.suite == Suite::Ssa) {
    const double g = ssa_gap(phi, regions.ssa_I, regions.ssa_J);
    const Verdict v = classify(g, tol);
    t.ssa = GapRecord{g, v, v != Verdict::Holds};
  }
  if (all || cfg.suite == Suite::Triangle) {
    const double g = triangle_gap(phi, regions.tri_I, regions.tri_J);
    const Verdict v = classify(-g, tol);
    const bool unexpected = t.even ? v != Verdict::Holds : -g > kTriangleBound + tol.holds;
    t.triangle = GapRecord{g, v, unexpected};
  }
  if (all || cfg.suite == Suite::MonoSsa) {
    const double g = mono_ssa_gap(phi, regions.mono_I, regions.mono_J, regions.mono_K);
    const Verdict v = classify(-g, tol);
    t.mono_ssa = GapRecord{g, v, t.even && v != Verdict::Holds};
  }
  return t;
}

int VerifyResult::unexpected() const {
  int n = 0;
  for (const auto* s : {&ssa, &triangle, &mono_ssa})
    if (*s) n += (*s)->unexpected;
  return n;
}

VerifyResult run_verify(const VerifyConfig& cfg) {
  check_config(cfg);
  const auto regions = resolve_regions(cfg);
  const auto ctx = build_context(cfg.sites);
  std::vector<TrialRecord> trials(cfg.trials);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < cfg.trials; ++k) {
    try {
      trials[k] = run_trial(ctx, cfg, regions, k);
    } catch (...) {
#pragma omp critical(carent_campaign_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return finish(cfg, regions, std::move(trials));
}

VerifyResult run_verify_serial(const VerifyConfig& cfg) {
  check_config(cfg);
  const auto regions = resolve_regions(cfg);
  const auto ctx = build_context(cfg.sites);
  std::vector<TrialRecord> trials;
  trials.reserve(cfg.trials);
  for (int k = 0; k < cfg.trials; ++k) trials.push_back(run_trial(ctx, cfg, regions, k));
  return finish(cfg, regions, std::move(trials));
}

Table1Result run_table1(std::uint64_t seed, int trials, int sites) {
  if (sites < 3) throw ArgumentError("table1 needs at least 3 sites");
  Table1Result out;
  out.seed = seed;
  out.trials = trials;
  out.sites = sites;

  auto campaign = [&](Suite suite, ParityMode parity, std::uint64_t salt) {
    VerifyConfig cfg;
    cfg.suite = suite;
    cfg.sites = sites;
    cfg.trials = trials;
    cfg.seed = trial_seed(seed, salt);
    cfg.parity = parity;
    return run_verify(cfg);
  };
  auto holds_cell = [](std::string property, std::string suite, const SuiteSummary& s, bool upper) {
    Table1Cell c{std::move(property), std::move(suite), "holds", false, s.evaluated, s.min_gap, s.max_gap};
    c.passed = s.evaluated > 0 && (upper ? s.max_gap <= 1e-9 : s.min_gap >= -1e-9);
    return c;
  };

  const auto ssa_all = campaign(Suite::Ssa, ParityMode::Mixed, 1);
  const auto tri_even = campaign(Suite::Triangle, ParityMode::Even, 2);
  const auto mono_even = campaign(Suite::MonoSsa, ParityMode::Even, 3);
  out.cells.push_back(holds_cell("SSA", "ssa_all_states", *ssa_all.ssa, true));
  out.cells.push_back(holds_cell("Triangle", "triangle_even_states", *tri_even.triangle, false));
  out.cells.push_back(holds_cell("MONO-SSA", "mono_ssa_even_states", *mono_even.mono_ssa, false));

  const auto ctx = build_context(sites);
  const Region K{1}, I{2}, J{3};
  const auto demo = violation_demo(ctx, K, I, J, State::tracial(ctx, J));
  out.cells.push_back({"Triangle", "triangle_noneven_counterexample", "violated", demo.triangle_violated(), 1,
                       demo.report.triangle_gap, demo.report.triangle_gap});
  out.cells.push_back({"MONO-SSA", "mono_ssa_noneven_counterexample", "violated", demo.mono_ssa_violated(), 1,
                       demo.report.mono_ssa_gap, demo.report.mono_ssa_gap});

  // SSA on the counterexample state over every pair of nonempty subregions of K u I u J
  const Region KIJ = K.unite(I).unite(J);
  std::vector<Region> subs;
  for (int mask = 1; mask < (1 << KIJ.size()); ++mask) {
    std::vector<int> s;
    for (int b = 0; b < KIJ.size(); ++b)
      if (mask & (1 << b)) s.push_back(KIJ.sites()[b]);
    subs.emplace_back(std::move(s));
  }
  Table1Cell ssa_demo{"SSA", "ssa_counterexample_state", "holds", true, 0,
                      std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& a : subs)
    for (const auto& b : subs) {
      const double g = ssa_gap(demo.full, a, b);
      ++ssa_demo.trials;
      ssa_demo.min_gap = std::min(ssa_demo.min_gap, g);
      ssa_demo.max_gap = std::max(ssa_demo.max_gap, g);
    }
  ssa_demo.passed = ssa_demo.max_gap <= 1e-9;
  out.cells.push_back(ssa_demo);

  const auto& c = out.cells;
  out.ssa_mark = (c[0].passed && c[5].passed) ? "✓" : "✗";
  auto mixed_mark = [](const Table1Cell& even, const Table1Cell& counter) -> std::string {
    if (even.passed && counter.passed) return "✗ in general, ✓ for every even state";
    if (even.passed) return "✓ (no counterexample reproduced)";
    return "✗ (even-state suite failed)";
  };
  out.triangle_mark = mixed_mark(c[1], c[3]);
  out.mono_ssa_mark = mixed_mark(c[2], c[4]);
  out.all_passed = std::all_of(c.begin(), c.end(), [](const Table1Cell& x) { return x.passed; });
  return out;
}

}  // namespace carent

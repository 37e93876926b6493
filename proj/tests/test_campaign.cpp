#include "doctest.h"

#include "carent/campaign.hpp"
#include "carent/error.hpp"
#include "carent/report.hpp"

using namespace carent;

TEST_CASE("suite names round-trip") {
  for (Suite s : {Suite::Ssa, Suite::Triangle, Suite::MonoSsa, Suite::All}) CHECK(parse_suite(to_string(s)) == s);
  CHECK_THROWS_AS(parse_suite("bogus"), ArgumentError);
}

TEST_CASE("region defaults and validation") {
  VerifyConfig cfg;
  cfg.sites = 3;
  const auto r = resolve_regions(cfg);
  CHECK(r.ssa_I == Region{1, 2});
  CHECK(r.ssa_J == Region{2, 3});
  CHECK(r.mono_K == Region{3});

  VerifyConfig half = cfg;
  half.I = Region{1};
  CHECK_THROWS_AS(resolve_regions(half), ArgumentError);

  VerifyConfig outside = cfg;
  outside.I = Region{1};
  outside.J = Region{5};
  CHECK_THROWS_AS(resolve_regions(outside), ArgumentError);
}

TEST_CASE("trial seeds are distinct and stable") {
  CHECK(trial_seed(7, 0) == trial_seed(7, 0));
  CHECK(trial_seed(7, 0) != trial_seed(7, 1));
  CHECK(trial_seed(7, 0) != trial_seed(8, 0));
}

TEST_CASE("parallel and serial campaigns produce identical records") {
  VerifyConfig cfg;
  cfg.sites = 3;
  cfg.trials = 30;
  cfg.seed = 17;
  cfg.parity = ParityMode::Mixed;
  const auto a = run_verify(cfg);
  const auto b = run_verify_serial(cfg);
  CHECK(verify_json(a) == verify_json(b));
  CHECK(verify_csv(a) == verify_csv(b));
  REQUIRE(a.ssa);
  CHECK(a.ssa->evaluated == 30);
  CHECK(a.ssa->unexpected == 0);
  CHECK(a.mono_ssa->unexpected == 0);
  CHECK(a.exit_code() == 0);
}

TEST_CASE("even campaigns never violate triangle or MONO-SSA") {
  VerifyConfig cfg;
  cfg.sites = 4;
  cfg.trials = 25;
  cfg.seed = 3;
  cfg.parity = ParityMode::Even;
  const auto r = run_verify(cfg);
  for (const auto& t : r.trials) {
    CHECK(t.even);
    CHECK(t.triangle->verdict == Verdict::Holds);
    CHECK(t.mono_ssa->verdict == Verdict::Holds);
  }
}

TEST_CASE("fixed rank is honoured") {
  VerifyConfig cfg;
  cfg.suite = Suite::Ssa;
  cfg.trials = 5;
  cfg.rank = 2;
  const auto r = run_verify(cfg);
  for (const auto& t : r.trials) CHECK(t.rank == 2);
  CHECK_FALSE(r.trials[0].triangle.has_value());
  cfg.rank = 9;
  CHECK_THROWS_AS(run_verify(cfg), ArgumentError);
}

TEST_CASE("table1 renders the CAR column") {
  const auto t = run_table1(5, 20, 3);
  CHECK(t.all_passed);
  CHECK(t.cells.size() == 6);
  CHECK(t.ssa_mark == "✓");
  CHECK(t.triangle_mark == "✗ in general, ✓ for every even state");
  CHECK(t.mono_ssa_mark == "✗ in general, ✓ for every even state");
  CHECK(table1_json(t) == table1_json(run_table1(5, 20, 3)));
  CHECK(table1_text(t).find("MONO-SSA") != std::string::npos);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.0, -0.6931471805599453, 1e-300, 123456.789}) CHECK(std::stod(format_double(v)) == v);
}

#include "carent/report.hpp"

#include <charconv>
#include <sstream>

#include "json.hpp"

namespace carent {

namespace {

using nlohmann::ordered_json;

ordered_json region_json(const Region& r) { return r.sites(); }

ordered_json gap_or_null(const std::optional<GapRecord>& g) {
  return g ? ordered_json(g->gap) : ordered_json(nullptr);
}

ordered_json verdict_or_null(const std::optional<GapRecord>& g) {
  return g ? ordered_json(to_string(g->verdict)) : ordered_json(nullptr);
}

ordered_json summary_json(const std::optional<SuiteSummary>& s) {
  if (!s) return nullptr;
  return {{"evaluated", s->evaluated},   {"violations", s->violations},
          {"indeterminate", s->indeterminate}, {"unexpected", s->unexpected},
          {"min_gap", s->min_gap},       {"max_gap", s->max_gap},
          {"max_violation", s->max_violation}};
}

ordered_json matrix_json(const Matrix& m) {
  ordered_json re = ordered_json::array(), im = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json rr = ordered_json::array(), ii = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return {{"real", std::move(re)}, {"imag", std::move(im)}};
}

ordered_json state_json(const State& s) {
  return {{"region", region_json(s.region())},
          {"entropy", entropy(s)},
          {"even", is_even(s)},
          {"p_theta", p_theta(s)},
          {"density", matrix_json(s.local())}};
}

std::string csv_region(const Region& r) { return "\"" + r.to_list() + "\""; }

std::string csv_gap(const std::optional<GapRecord>& g) { return g ? format_double(g->gap) : ""; }
std::string csv_verdict(const std::optional<GapRecord>& g) { return g ? to_string(g->verdict) : ""; }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string verify_json(const VerifyResult& r) {
  const auto& c = r.config;
  ordered_json cfg = {{"suite", to_string(c.suite)},
                      {"sites", c.sites},
                      {"trials", c.trials},
                      {"seed", c.seed},
                      {"parity", to_string(c.parity)},
                      {"rank", c.rank ? ordered_json(*c.rank) : ordered_json(nullptr)},
                      {"tolerance", c.tolerance.holds}};
  const auto& g = r.regions;
  ordered_json regions = {
      {"ssa", {{"I", region_json(g.ssa_I)}, {"J", region_json(g.ssa_J)}}},
      {"triangle", {{"I", region_json(g.tri_I)}, {"J", region_json(g.tri_J)}}},
      {"mono_ssa", {{"I", region_json(g.mono_I)}, {"J", region_json(g.mono_J)}, {"K", region_json(g.mono_K)}}}};
  ordered_json trials = ordered_json::array();
  for (const auto& t : r.trials) {
    trials.push_back({{"trial", t.trial},
                      {"seed", t.seed},
                      {"regions", regions},
                      {"parity", t.even ? "even" : "any"},
                      {"rank", t.rank},
                      {"gaps", {{"ssa", gap_or_null(t.ssa)},
                                {"triangle", gap_or_null(t.triangle)},
                                {"mono_ssa", gap_or_null(t.mono_ssa)}}},
                      {"verdicts", {{"ssa", verdict_or_null(t.ssa)},
                                    {"triangle", verdict_or_null(t.triangle)},
                                    {"mono_ssa", verdict_or_null(t.mono_ssa)}}}});
  }
  ordered_json out = {{"command", "verify"},
                      {"config", std::move(cfg)},
                      {"trials", std::move(trials)},
                      {"summary", {{"ssa", summary_json(r.ssa)},
                                   {"triangle", summary_json(r.triangle)},
                                   {"mono_ssa", summary_json(r.mono_ssa)},
                                   {"unexpected_violations", r.unexpected()}}}};
  return out.dump(2) + "\n";
}

std::string verify_csv(const VerifyResult& r) {
  std::ostringstream os;
  os << "trial,seed,parity,rank,ssa_I,ssa_J,triangle_I,triangle_J,mono_I,mono_J,mono_K,"
        "ssa_gap,triangle_gap,mono_ssa_gap,ssa_verdict,triangle_verdict,mono_ssa_verdict\n";
  const auto& g = r.regions;
  for (const auto& t : r.trials) {
    os << t.trial << ',' << t.seed << ',' << (t.even ? "even" : "any") << ',' << t.rank << ','
       << csv_region(g.ssa_I) << ',' << csv_region(g.ssa_J) << ',' << csv_region(g.tri_I) << ','
       << csv_region(g.tri_J) << ',' << csv_region(g.mono_I) << ',' << csv_region(g.mono_J) << ','
       << csv_region(g.mono_K) << ',' << csv_gap(t.ssa) << ',' << csv_gap(t.triangle) << ','
       << csv_gap(t.mono_ssa) << ',' << csv_verdict(t.ssa) << ',' << csv_verdict(t.triangle) << ','
       << csv_verdict(t.mono_ssa) << '\n';
  }
  return os.str();
}

std::string table1_json(const Table1Result& t) {
  ordered_json cells = ordered_json::array();
  for (const auto& c : t.cells)
    cells.push_back({{"property", c.property},
                     {"suite", c.suite},
                     {"expected", c.expected},
                     {"passed", c.passed},
                     {"trials", c.trials},
                     {"min_gap", c.min_gap},
                     {"max_gap", c.max_gap}});
  ordered_json out = {{"command", "table1"},
                      {"seed", t.seed},
                      {"trials", t.trials},
                      {"sites", t.sites},
                      {"car_column", {{"SSA", t.ssa_mark}, {"Triangle", t.triangle_mark}, {"MONO-SSA", t.mono_ssa_mark}}},
                      {"cells", std::move(cells)},
                      {"all_passed", t.all_passed}};
  return out.dump(2) + "\n";
}

std::string table1_csv(const Table1Result& t) {
  std::ostringstream os;
  os << "property,suite,expected,passed,trials,min_gap,max_gap\n";
  for (const auto& c : t.cells)
    os << c.property << ',' << c.suite << ',' << c.expected << ',' << (c.passed ? "pass" : "fail") << ','
       << c.trials << ',' << format_double(c.min_gap) << ',' << format_double(c.max_gap) << '\n';
  return os.str();
}

std::string table1_text(const Table1Result& t) {
  std::ostringstream os;
  os << "Entropy inequalities on CAR systems (seed " << t.seed << ", " << t.trials << " trials, " << t.sites
     << " sites)\n\n";
  os << "  Property   CAR systems\n";
  os << "  SSA        " << t.ssa_mark << "\n";
  os << "  Triangle   " << t.triangle_mark << "\n";
  os << "  MONO-SSA   " << t.mono_ssa_mark << "\n\n";
  for (const auto& c : t.cells)
    os << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.suite << " (expect " << c.expected
       << ", gaps " << format_double(c.min_gap) << " .. " << format_double(c.max_gap) << ")\n";
  return os.str();
}

std::string counterexample_json(const ViolationDemo& d) {
  const auto& r = d.recipe;
  ordered_json out = {
      {"command", "counterexample"},
      {"regions", {{"K", region_json(r.K)}, {"I", region_json(r.I)}, {"J", region_json(r.J)}}},
      {"recipe", {{"rho1", state_json(r.rho1)},
                  {"rho2_tilde", state_json(r.rho2_tilde)},
                  {"rho2", state_json(r.rho2)},
                  {"rhoJ", state_json(r.rhoJ)},
                  {"u1", "v_K"}}},
      {"entropies", {{"K", d.s_K}, {"I", d.s_I}, {"J", d.s_J}, {"KI", d.s_KI}, {"KJ", d.s_KJ}, {"KIJ", d.s_KIJ}}},
      {"gaps", {{"mono_ssa", d.report.mono_ssa_gap}, {"triangle", d.report.triangle_gap}, {"ssa", d.report.ssa_gap}}},
      {"verdicts", {{"mono_ssa", to_string(d.report.mono_ssa)},
                    {"triangle", to_string(d.report.triangle)},
                    {"ssa", to_string(d.report.ssa)}}},
      {"residuals", {{"restriction_K", d.residual_K},
                     {"restriction_I", d.residual_I},
                     {"extension_entropy", d.entropy_residual},
                     {"KJ_vs_J_entropy", d.kj_residual}}},
      {"entropy_rho2_tilde", d.s_rho2_tilde},
      {"reproduced", d.reproduced()}};
  return out.dump(2) + "\n";
}

std::string counterexample_csv(const ViolationDemo& d) {
  std::ostringstream os;
  os << "K,I,J,S_K,S_I,S_J,S_KI,S_KJ,S_KIJ,mono_ssa_gap,triangle_gap,ssa_gap,residual_K,residual_I,"
        "entropy_residual,reproduced\n";
  const auto& r = d.recipe;
  os << csv_region(r.K) << ',' << csv_region(r.I) << ',' << csv_region(r.J) << ',' << format_double(d.s_K) << ','
     << format_double(d.s_I) << ',' << format_double(d.s_J) << ',' << format_double(d.s_KI) << ','
     << format_double(d.s_KJ) << ',' << format_double(d.s_KIJ) << ',' << format_double(d.report.mono_ssa_gap)
     << ',' << format_double(d.report.triangle_gap) << ',' << format_double(d.report.ssa_gap) << ','
     << format_double(d.residual_K) << ',' << format_double(d.residual_I) << ','
     << format_double(d.entropy_residual) << ',' << (d.reproduced() ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace carent

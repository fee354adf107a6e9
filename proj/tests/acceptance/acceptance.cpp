// Acceptance checks. Prints one PASS/FAIL line per criterion; exit status 1
// when any selected criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rbcm/cli.hpp"
#include "rbcm/closed_form.hpp"
#include "rbcm/galois_field.hpp"
#include "rbcm/map_topology.hpp"
#include "rbcm/perm_a5.hpp"
#include "rbcm/projective_group.hpp"
#include "rbcm/rbcm_search.hpp"
#include "rbcm/subgroup_oracle.hpp"

using namespace rbcm;

namespace {

// Wall-clock limits in seconds; zero means no limit.
constexpr double kLimitA5 = 10.0;
constexpr double kLimitTraceSweep = 60.0;
constexpr double kLimitLemmaSweep = 900.0;

constexpr std::size_t kMinWorkedSteps = 12;

const std::vector<std::uint32_t> kTracePrimes{5, 7, 11, 13, 17, 19};
const std::vector<std::uint32_t> kNormPrimes{5, 7, 11, 13, 17, 19};
const std::vector<std::uint32_t> kSweepPrimes{7, 11, 13};
const std::vector<std::uint32_t> kTopologyPrimes{5, 7, 11, 13};

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit;
  std::function<Outcome()> check;
};

Perm5 P(std::string_view s) { return Perm5::from_cycles(s); }

bool contains_class(const std::vector<A5Class>& classes, int valence, const char* s, const char* w) {
  for (const auto& c : classes)
    if (c.valence == valence && a5_isomorphic(c.sigma, c.omega, P(s), P(w)))
      return true;
  return false;
}

std::string valence_list(const std::vector<A5Class>& classes) {
  std::ostringstream os;
  for (std::size_t i = 0; i < classes.size(); ++i)
    os << (i ? "," : "") << classes[i].valence;
  return os.str();
}

Outcome a5_type_I() {
  const auto classes = enumerate_a5_rbcms(PermRbcmType::I);
  bool large = false;
  for (const auto& c : classes)
    large |= c.valence > 6;
  const bool ok = classes.size() == 2 && contains_class(classes, 4, "(1425)", "(123)") &&
                  contains_class(classes, 6, "(12)(345)", "(123)") && !large;
  return {ok, std::to_string(classes.size()) + " classes, valences " + valence_list(classes)};
}

Outcome a5_type_II() {
  const auto classes = enumerate_a5_rbcms(PermRbcmType::II);
  const auto d10 = a5_violation(P("(12345)"), P("(14)(23)"), PermRbcmType::II);
  const bool rejected = d10 && d10->find("dihedral(10)") != std::string::npos;
  const bool listed = contains_class(classes, 3, "(123)", "(24)(35)") &&
                      contains_class(classes, 5, "(12345)", "(12)(34)") &&
                      contains_class(classes, 5, "(12345)", "(13)(24)");
  const bool ok = classes.size() == 3 && listed && rejected;
  std::string detail = std::to_string(classes.size()) + " classes (expected 3), valences " + valence_list(classes) +
                       "; listed three " + (listed ? "present" : "missing") + "; ((12345),(14)(23)) " +
                       (rejected ? "rejected as dihedral(10)" : "not rejected");
  return {ok, detail};
}

Outcome worked_steps() {
  const auto steps = verify_worked_steps();
  std::size_t passed = 0;
  std::string failures;
  for (const auto& s : steps) {
    passed += s.pass;
    if (!s.pass)
      failures += " " + s.label;
  }
  return {steps.size() >= kMinWorkedSteps && passed == steps.size(),
          std::to_string(passed) + "/" + std::to_string(steps.size()) + " identities" + failures};
}

Outcome trace_sweep() {
  std::size_t elements = 0, mismatches = 0;
  for (std::uint32_t p : kTracePrimes) {
    const ProjectiveGroup g(make_context(p));
    const FieldContext& ctx = g.field();
    for (const auto& x : g.psl_elements()) {
      ++elements;
      const std::uint64_t ord = order(ctx, x);
      const auto t = trace_order_test(ctx, x);
      const bool ok = t ? static_cast<std::uint64_t>(*t) == ord : (ord < 2 || ord > 5);
      mismatches += !ok;
    }
  }
  return {mismatches == 0, std::to_string(elements) + " elements, " + std::to_string(mismatches) + " mismatches"};
}

Outcome norm_counts() {
  std::size_t equations = 0, wrong = 0;
  for (std::uint32_t p : kNormPrimes) {
    const FieldContext ctx = make_context(p);
    for (std::uint32_t c = 1; c < p; ++c) {
      ++equations;
      wrong += solve_norm_equation(FpElem{c}, ctx).size() != p + 1;
    }
  }
  return {wrong == 0, std::to_string(equations) + " equations, " + std::to_string(wrong) + " with a count other than p+1"};
}

Outcome lemma_equivalence() {
  std::ostringstream os;
  bool ok = true;
  for (std::uint32_t p : kSweepPrimes) {
    const ProjectiveGroup g(make_context(p));
    const LemmaSweepReport r = lemma_oracle_sweep(g);
    std::map<std::string, std::size_t> kinds;
    for (const auto& d : r.disagreements)
      ++kinds[d.family + " n=" + std::to_string(d.n) + " a^2=" + std::to_string(d.a2.value) + " criterion " +
              (d.criterion ? "true" : "false") + " oracle " + d.oracle_diagnosis];
    os << " p=" << p << ": " << r.type_I_checked + r.type_II_beta_checked + r.type_II_checked << " checked, "
       << r.disagreements.size() << " disagreements";
    for (const auto& [k, n] : kinds)
      os << " [" << k << " x" << n << "]";
    if (!r.gamma_n2_half_square_cases.empty())
      os << ", " << r.gamma_n2_half_square_cases.size() << " permitted 2a^2=1 cases";
    os << ';';
    ok &= r.disagreements.empty();
  }
  return {ok, os.str()};
}

Outcome completeness() {
  std::ostringstream os;
  bool ok = true;
  for (std::uint32_t p : kSweepPrimes) {
    const ProjectiveGroup g(make_context(p));
    const ValidationReport r = cross_validate(g);
    std::size_t dups = 0;
    for (const auto& b : r.buckets)
      dups += b.duplicates.size();
    os << " p=" << p << ": misses " << r.total_misses() << ", spuria " << r.total_spuria() << ", duplicates " << dups
       << (r.duplicates_witnessed() ? " (all witnessed)" : " (UNWITNESSED)");
    for (const auto& b : r.buckets)
      for (const auto& s : b.spuria)
        os << " [" << to_string(s.params.family) << " " << s.params.describe() << ": " << s.reason << "]";
    os << ';';
    ok &= r.total_misses() == 0 && r.total_spuria() == 0 && r.duplicates_witnessed();
  }
  return {ok, os.str()};
}

Outcome valence_divisibility() {
  std::size_t classes = 0, bad = 0;
  for (std::uint32_t p : kSweepPrimes) {
    const ProjectiveGroup g(make_context(p));
    for (RbcmType t : {RbcmType::I, RbcmType::II})
      for (const auto& c : reduce_to_iso_classes(g, enumerate_rbcms(g, t).specs)) {
        ++classes;
        bad += !valence_divisibility_holds(p, t, c.key.valence);
      }
  }
  return {bad == 0, std::to_string(classes) + " classes, " + std::to_string(bad) + " violations"};
}

Outcome topology() {
  std::size_t maps = 0, bad = 0;
  for (std::uint32_t p : kTopologyPrimes) {
    const ProjectiveGroup pg(make_context(p));
    const DenseGroup g = DenseGroup::psl(pg);
    for (RbcmType t : {RbcmType::I, RbcmType::II})
      for (const auto& c : reduce_to_iso_classes(pg, enumerate_rbcms(pg, t).specs)) {
        ++maps;
        const CayleyMapStruct m = map_from_spec(pg, g, c.representative);
        const bool ok = faces_partition_arcs(m) && m.euler_char % 2 == 0 && m.genus >= 0 &&
                        m.euler_char == 2 - 2 * m.genus && uniform_face_length(m) > 0;
        bad += !ok;
      }
  }
  return {bad == 0, std::to_string(maps) + " maps, " + std::to_string(bad) + " with a broken invariant"};
}

std::string run_verify(unsigned jobs) {
  const std::string j = std::to_string(jobs);
  const char* argv[] = {"rbcm", "verify", "--p", "7", "--p", "11", "--p", "13", "--format", "json", "--jobs", j.c_str()};
  std::ostringstream out, err;
  cli::run_cli(static_cast<int>(std::size(argv)), argv, out, err);
  return out.str();
}

Outcome determinism() {
  const std::string a = run_verify(1), b = run_verify(1), c = run_verify(4);
  const bool ok = !a.empty() && a == b && a == c;
  return {ok, std::to_string(a.size()) + " bytes; repeat " + (a == b ? "identical" : "differs") + ", jobs 1 vs 4 " +
                  (a == c ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  app.add_option("--criterion", only, "Run only these criteria (repeatable)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "A5 type I classification", kLimitA5, a5_type_I},
      {2, "A5 type II classification", kLimitA5, a5_type_II},
      {3, "worked-step identities", 0, worked_steps},
      {4, "trace-order sweep", kLimitTraceSweep, trace_sweep},
      {5, "norm-equation counts", 0, norm_counts},
      {6, "generation criteria vs closure", kLimitLemmaSweep, lemma_equivalence},
      {7, "closed-form completeness", 0, completeness},
      {8, "valence divisibility", 0, valence_divisibility},
      {9, "topology invariants", 0, topology},
      {10, "determinism", 0, determinism},
  };

  const std::set<int> selected(only.begin(), only.end());
  bool all = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id))
      continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = c.check();
    if (!o.detail.empty() && o.detail.front() == ' ')
      o.detail.erase(0, 1);
    if (!o.detail.empty() && o.detail.back() == ';')
      o.detail.pop_back();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0 && secs > c.limit) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(c.limit)) + " s limit";
    }
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs;
    std::cout << "criterion " << c.id << " " << (o.pass ? "PASS" : "FAIL") << " " << c.name << ": " << o.detail
              << " (" << time.str() << " s)" << std::endl;
    all &= o.pass;
  }
  return all ? 0 : 1;
}

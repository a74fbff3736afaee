// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   acceptance [--solver exact|modular] [--jobs N]

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "orbitspace/flatten.hpp"
#include "orbitspace/groups.hpp"
#include "orbitspace/invariants.hpp"
#include "orbitspace/phat.hpp"
#include "orbitspace/pipeline.hpp"
#include "orbitspace/refdata.hpp"
#include "orbitspace/strata.hpp"
#include "orbitspace/textio.hpp"
#include "support/oracle.hpp"

using namespace orbitspace;

RingPtr catalog_ring(const std::string& group);

namespace {

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

PhatOptions g_options;
std::map<std::string, VerifyReport> g_verify;
std::map<std::string, PhatMatrix> g_phat;

const PhatMatrix& phat_of(const std::string& name) {
  auto it = g_phat.find(name);
  if (it == g_phat.end()) {
    it = g_phat.emplace(name, compute_phat(BasicInvariantSet(catalog(name)), g_options).matrix).first;
  }
  return it->second;
}

const VerifyReport& verified(const std::string& group) {
  auto it = g_verify.find(group);
  if (it == g_verify.end()) it = g_verify.emplace(group, verify_group(group, g_options)).first;
  return it->second;
}

std::string counts(const CompareReport& r) {
  return std::to_string(r.matched) + "/" + std::to_string(r.compared);
}

void report_mismatches(Check& c, const std::string& what, const CompareReport& r) {
  for (const auto& m : r.mismatches) {
    std::string d = what + " " + m.entry;
    if (!m.differences.empty()) d += " (" + m.differences.front() + ")";
    c.expect(false, d);
  }
}

// The reference transform applied to the computed P̂(p) reproduces every
// reference flat entry.
void reproduction(Check& c, const std::string& group, std::size_t entries) {
  const VerifyReport& r = verified(group);
  const auto ref = load_reference(group);
  c.expect(r.reference_phat.ok(), group + " reference flat matrix reproduced");
  c.expect(r.reference_phat.compared == entries,
           group + " compared " + std::to_string(r.reference_phat.compared) + " entries, expected " +
               std::to_string(entries));
  report_mismatches(c, group, r.reference_phat);
  const auto& g = catalog(group);
  const int top = 2 * g.degrees.back();
  c.expect(ref.flat_phat(0, g.rank - 1) ==
               Polynomial::variable(ref.q_ring, g.rank - 1).scaled(top),
           group + " Euler entry P[1,l]");
  c.note(group + ": " + counts(r.reference_phat) + " flat entries match");
}

void criterion1(Check& c) {
  reproduction(c, "E7", 28);
  const auto ref = load_reference("E7");
  const RingPtr q = ref.q_ring;
  c.expect(ref.flat_phat(1, 1) == parse_polynomial("4 q1^5+20 q1^2 q2+20 q1 q3+10 q4", q),
           "E7 P[2,2]");
  c.expect(ref.flat_phat(6, 6).coefficient(Monomial::variable(*q, 0, 17)) == 16,
           "E7 P[7,7] leading term 16 q1^17");
}

void criterion2(Check& c) {
  reproduction(c, "E8", 36);
  const auto ref = load_reference("E8");
  c.expect(ref.flat_phat(1, 1) == parse_polynomial("15 q1^7+70 q1^3 q2+7 q1 q3+7 q4", ref.q_ring),
           "E8 P[2,2]");
  const PhatMatrix& m = phat_of("E8");
  c.expect(m(7, 7).term_count() <= 163, "E8 P[8,8] fits the 163-monomial space");
}

void criterion3(Check& c) {
  for (const auto& [group, params] : {std::pair<std::string, std::size_t>{"E7", 31}, {"E8", 48}}) {
    const VerifyReport& r = verified(group);
    c.expect(r.parameters == params, group + " has " + std::to_string(r.parameters) +
                                         " free parameters, expected " + std::to_string(params));
    const RingPtr p = catalog_ring(group);
    c.expect(generic_unit_transform(p, GradedRing::graded("q", p->weights())).count() == params,
             group + " generic transform parameter count");
    c.expect(r.flat_transform.ok(), group + " independent flat transform equals the reference one");
    report_mismatches(c, group + " transform", r.flat_transform);
    c.expect(r.flat_phat.ok(), group + " independent flat matrix equals the reference one");
    c.note(group + ": " + std::to_string(r.parameters) + " parameters, transform " +
           counts(r.flat_transform));
  }
}

void criterion4(Check& c) {
  oracle::Random rng(4);
  for (const auto& name : catalog_names()) {
    const auto& g = catalog(name);
    const std::size_t l = g.rank;
    const BasicInvariantSet s(g);
    const PhatMatrix& m = phat_of(name);
    const PhatCheck pc = check_phat(m);
    c.expect(pc.ok(), name + " symmetry/homogeneity/Euler row" +
                          (pc.ok() ? "" : ": " + pc.problems.front()));
    const auto dp = check_defining_property(m, s, 10, 90001);
    c.expect(dp.ok() && dp.points == 10, name + " defining property at 10 fresh points");

    const FlatnessResult fr = solve_flatness(m, g_options.lane);
    const BasisTransform t = normalize_scales(fr.transform, m);
    const PhatMatrix flat = transform_phat(m, t);
    const FlatMetric fm = flat_metric(flat);
    c.expect(fm.constant && fm.nondegenerate, name + " flat metric constant and non-degenerate");
    c.expect(check_phat(flat).ok(), name + " flat matrix structure");
    const Rational top = 2 * g.degrees.back();
    bool confined = true;
    for (std::size_t a = 0; a < l; ++a) {
      for (std::size_t b = 0; b < l; ++b) {
        const Polynomial d = flat(a, b).derivative(l - 1);
        confined = confined && (a + b == l - 1 ? d == Polynomial::constant(flat.ring(), top)
                                                : d.is_zero());
      }
    }
    c.expect(confined, name + " last flat variable confined to the anti-diagonal with constant " +
                           to_string(top));

    const BasisTransform inv = invert_transform(t);
    bool round = true;
    for (int k = 0; k < 10; ++k) {
      const auto pt = rng.point(l);
      round = round && inv.apply(t.apply(pt)) == pt && t.apply(inv.apply(pt)) == pt;
    }
    c.expect(round, name + " transform/inverse round trip");
  }
  const RingPtr e8 = GradedRing::graded("p", {2, 8, 12, 14, 18, 20, 24, 30});
  c.expect(enumerate_graded_monomials(*e8, 58).size() == 163, "163 monomials at E8 degree 58");
  c.note("groups " + std::to_string(catalog_names().size()) + ", 163 monomials at degree 58");
}

void criterion5(Check& c) {
  for (const char* name : {"B2", "B3"}) {
    const PhatMatrix sym = oracle::symbolic_phat(catalog(name));
    c.expect(phat_of(name) == sym, std::string(name) + " interpolated matrix equals the symbolic one");
  }
  const PhatMatrix& m = phat_of("B2");
  const BasicInvariantSet s(catalog("B2"));
  auto at = [&](std::vector<Rational> x) { return classify_point(m, s.values(x)); };
  const auto interior = at({1, 2});
  c.expect(interior.rank == 2 && interior.positive_definite, "B2 interior point: rank 2, positive definite");
  for (const std::vector<Rational> x : {std::vector<Rational>{1, 1}, {0, 3}, {2, -2}, {5, 0}}) {
    const auto mirror = at(x);
    c.expect(mirror.rank == 1 && mirror.psd && !mirror.positive_definite, "B2 mirror point: rank 1");
  }
  const auto origin = at({0, 0});
  c.expect(origin.rank == 0 && origin.psd, "B2 origin: rank 0");
  const auto system = stratum_system(m, 1);
  c.expect(system.equations.size() == 1 && system.equations[0].value == poly_det(m.matrix()),
           "B2 rank-1 stratum equation is det P");
}

void criterion6(Check& c) {
  for (const auto& name : catalog_names()) {
    const auto& g = catalog(name);
    const auto r = verify_group_numerics(g);
    c.expect(r.ok(), name + " degree identities" + (r.ok() ? "" : ": " + r.failures.front()));
    for (std::size_t a = 0; a < g.rank; ++a) {
      c.expect(g.degrees[a] + g.degrees[g.rank - 1 - a] == g.degrees.back() + 2, name + " duality");
    }
  }
  c.expect(catalog("E7").order == 2903040 && catalog("E7").reflections == 63, "E7 order and N");
  c.expect(verify_group_numerics(catalog("E7")).computed_order == 2903040, "E7 product of degrees");
  c.expect(verify_group_numerics(catalog("E8")).computed_reflections == 120, "E8 N");
}

}  // namespace

RingPtr catalog_ring(const std::string& group) {
  return GradedRing::graded("p", catalog(group).degrees);
}

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string solver = "modular";
  app.add_option("--solver", solver)->check(CLI::IsMember({"exact", "modular"}));
  app.add_option("--jobs", g_options.jobs)->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  g_options.lane = solver == "exact" ? SolverLane::kExact : SolverLane::kModular;

  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"E7 bit-exact reproduction of the reference flat matrix", criterion1},
      {"E8 bit-exact reproduction of the reference flat matrix", criterion2},
      {"independent flattening reproduces the reference transforms", criterion3},
      {"structural properties", criterion4},
      {"small-group symbolic oracle and B2 strata", criterion5},
      {"group numerics", criterion6},
  };
  std::cout << "solver: " << solver << "\n";
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && c.ok();
    std::ostringstream line;
    line << "criterion " << i + 1 << ": " << (c.ok() ? "PASS" : "FAIL") << "  " << criteria[i].first;
    for (const auto& n : c.notes()) line << "; " << n;
    line.precision(2);
    line << std::fixed << " [" << secs << " s]";
    std::cout << line.str() << "\n";
    for (const auto& f : c.failures()) std::cout << "    failed: " << f << "\n";
  }
  return all ? 0 : 1;
}

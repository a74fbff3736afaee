#include "orbitspace/groups.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "orbitspace/errors.hpp"

namespace orbitspace {

namespace {

using Form = std::vector<int>;

// All sign patterns of Σ ±x_i over the given (1-based) index sets.
std::vector<Form> signed_combinations(std::size_t rank,
                                      const std::vector<std::vector<int>>& index_sets,
                                      int scale = 1) {
  std::vector<Form> out;
  for (const auto& idx : index_sets) {
    const std::size_t k = idx.size();
    for (unsigned signs = 0; signs < (1U << k); ++signs) {
      Form f(rank, 0);
      for (std::size_t t = 0; t < k; ++t) {
        f[static_cast<std::size_t>(idx[t] - 1)] = (signs >> t & 1U) ? -scale : scale;
      }
      out.push_back(std::move(f));
    }
  }
  return out;
}

ReflectionGroupData make_e7() {
  ReflectionGroupData g;
  g.name = "E7";
  g.rank = 7;
  g.degrees = {2, 6, 8, 10, 12, 14, 18};
  g.coeffs = {Rational(1, 24), Rational(1, 24), Rational(1, 8), Rational(1, 24),
              Rational(1, 24), Rational(1, 8),  Rational(1, 24)};
  g.forms = signed_combinations(
      7, {{1, 2, 7}, {1, 3, 6}, {1, 4, 5}, {2, 3, 5}, {2, 4, 6}, {3, 4, 7}, {5, 6, 7}});
  g.order = 2903040;
  g.reflections = 63;
  return g;
}

ReflectionGroupData make_e8() {
  ReflectionGroupData g;
  g.name = "E8";
  g.rank = 8;
  g.degrees = {2, 8, 12, 14, 18, 20, 24, 30};
  g.coeffs = {Rational(1, 120), Rational(1, 48), Rational(1, 48), Rational(1, 48),
              Rational(1, 48),  Rational(1, 48), Rational(1, 48), Rational(1, 240)};
  g.forms = signed_combinations(8, {{1}, {2}, {3}, {4}, {5}, {6}, {7}, {8}}, 2);
  const auto quads = signed_combinations(
      8, {{1, 2, 3, 4}, {1, 2, 5, 6}, {1, 2, 7, 8}, {1, 3, 5, 7}, {1, 3, 6, 8},
          {1, 4, 6, 7}, {1, 4, 5, 8}, {2, 3, 5, 8}, {2, 3, 6, 7}, {2, 4, 5, 7},
          {2, 4, 6, 8}, {3, 4, 5, 6}, {3, 4, 7, 8}, {5, 6, 7, 8}});
  g.forms.insert(g.forms.end(), quads.begin(), quads.end());
  g.order = 696729600;
  g.reflections = 120;
  return g;
}

ReflectionGroupData make_b2() {
  ReflectionGroupData g;
  g.name = "B2";
  g.rank = 2;
  g.degrees = {2, 4};
  g.coeffs = {Rational(1, 6), Rational(1, 6)};
  g.forms = signed_combinations(2, {{1}, {2}, {1, 2}});
  g.order = 8;
  g.reflections = 4;
  return g;
}

ReflectionGroupData make_b3() {
  ReflectionGroupData g;
  g.name = "B3";
  g.rank = 3;
  g.degrees = {2, 4, 6};
  g.coeffs = {Rational(1, 10), Rational(1, 2), Rational(1, 10)};
  g.forms = signed_combinations(3, {{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}});
  g.order = 48;
  g.reflections = 9;
  return g;
}

// Tetrahedral weight orbit; not closed under negation (odd degree 3).
ReflectionGroupData make_a3() {
  ReflectionGroupData g;
  g.name = "A3";
  g.rank = 3;
  g.degrees = {2, 3, 4};
  g.coeffs = {Rational(1, 4), Rational(1, 24), Rational(1, 4)};
  g.forms = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  g.order = 24;
  g.reflections = 6;
  return g;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

const std::map<std::string, ReflectionGroupData>& registry() {
  static const std::map<std::string, ReflectionGroupData> groups = [] {
    std::map<std::string, ReflectionGroupData> m;
    for (auto g : {make_e7(), make_e8(), make_b2(), make_b3(), make_a3()}) {
      validate_forms(g);
      const auto report = verify_group_numerics(g);
      if (!report.ok()) throw DataIntegrityError(g.name + ": " + report.failures.front());
      m.emplace(g.name, std::move(g));
    }
    return m;
  }();
  return groups;
}

}  // namespace

const ReflectionGroupData& catalog(std::string_view name) {
  const std::string key = upper(name);
  const auto& reg = registry();
  if (auto it = reg.find(key); it != reg.end()) return it->second;
  if (key == "H3" || key == "H4" || key.rfind("I2", 0) == 0) {
    throw Error("group " + std::string(name) +
                " is not crystallographic: its invariant forms need irrational "
                "coefficients, which exact rational arithmetic cannot represent");
  }
  std::string known;
  for (const auto& n : catalog_names()) known += (known.empty() ? "" : ", ") + n;
  throw Error("unknown group '" + std::string(name) + "' (known: " + known + ")");
}

std::vector<std::string> catalog_names() { return {"A3", "B2", "B3", "E7", "E8"}; }

GroupNumericsReport verify_group_numerics(const ReflectionGroupData& g) {
  GroupNumericsReport r;
  const auto& d = g.degrees;
  const int l = static_cast<int>(g.rank);
  r.computed_order = 1;
  for (int v : d) r.computed_order *= v;
  r.computed_reflections = d.empty() ? 0 : l * d.back() / 2;
  if (d.size() != g.rank || g.coeffs.size() != g.rank) {
    r.failures.push_back("degree or coefficient list length differs from rank " +
                         std::to_string(l));
    return r;
  }
  if (r.computed_order != g.order) {
    r.failures.push_back("product of degrees " + to_string(r.computed_order) +
                         " != group order " + to_string(g.order));
  }
  int sum = 0;
  for (int v : d) sum += v;
  if (sum != g.reflections + l) {
    r.failures.push_back("sum of degrees " + std::to_string(sum) + " != N + l = " +
                         std::to_string(g.reflections + l));
  }
  for (int a = 0; a < l; ++a) {
    const int lhs = d[static_cast<std::size_t>(a)] + d[static_cast<std::size_t>(l - 1 - a)];
    if (lhs != d.back() + 2) {
      r.failures.push_back("d_" + std::to_string(a + 1) + " + d_" + std::to_string(l - a) +
                           " = " + std::to_string(lhs) + " != d_l + 2 = " +
                           std::to_string(d.back() + 2));
    }
  }
  if (l * d.back() != 2 * g.reflections) {
    r.failures.push_back("l d_l / 2 = " + std::to_string(r.computed_reflections) +
                         " != N = " + std::to_string(g.reflections));
  }
  return r;
}

void validate_forms(const ReflectionGroupData& g) {
  std::set<std::vector<int>> seen;
  for (const auto& f : g.forms) {
    if (f.size() != g.rank) {
      throw DataIntegrityError(g.name + ": form of length " + std::to_string(f.size()) +
                               " in a rank " + std::to_string(g.rank) + " group");
    }
    if (std::all_of(f.begin(), f.end(), [](int v) { return v == 0; })) {
      throw DataIntegrityError(g.name + ": zero linear form");
    }
    if (!seen.insert(f).second) throw DataIntegrityError(g.name + ": duplicate linear form");
  }
  const bool all_even =
      std::all_of(g.degrees.begin(), g.degrees.end(), [](int v) { return v % 2 == 0; });
  if (!all_even) return;
  for (const auto& f : g.forms) {
    std::vector<int> neg(f);
    for (auto& v : neg) v = -v;
    if (!seen.contains(neg)) throw DataIntegrityError(g.name + ": form list not closed under negation");
  }
}

}  // namespace orbitspace

#include "orbitspace/phat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "orbitspace/errors.hpp"
#include "orbitspace/parallel.hpp"
#include "orbitspace/textio.hpp"

namespace orbitspace {

PhatMatrix::PhatMatrix(PolynomialMatrix entries) : m_(std::move(entries)) {
  if (!m_.is_symmetric()) throw DataIntegrityError("P-hat matrix is not symmetric");
}

PhatCheck check_phat(const PhatMatrix& m, bool expect_euler_row) {
  PhatCheck check;
  const auto& ring = *m.ring();
  const std::size_t l = m.size();
  auto label = [](std::size_t a, std::size_t b) {
    return "P[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "]";
  };
  for (std::size_t a = 0; a < l; ++a) {
    for (std::size_t b = a; b < l; ++b) {
      if (!(m(a, b) == m(b, a))) check.problems.push_back(label(a, b) + " is not symmetric");
      const int degree = ring.weight(a) + ring.weight(b) - 2;
      if (!m(a, b).is_homogeneous_of(degree)) {
        check.problems.push_back(label(a, b) + " is not homogeneous of degree " +
                                 std::to_string(degree));
      }
    }
  }
  if (expect_euler_row) {
    for (std::size_t a = 0; a < l; ++a) {
      const Polynomial expected =
          Polynomial::variable(m.ring(), a).scaled(Rational(2 * ring.weight(a)));
      if (!(m(0, a) == expected)) {
        check.problems.push_back(label(0, a) + " = " + format_polynomial(m(0, a)) +
                                 ", expected " + format_polynomial(expected));
      }
    }
  }
  return check;
}

RationalMatrix gram_at(const BasicInvariantSet& s, std::span<const Rational> x) {
  const RationalMatrix j = s.gradient_rows(x);
  return j.transposed() * j;
}

std::vector<std::vector<Rational>> interpolation_points(const ReflectionGroupData& g,
                                                        std::size_t count,
                                                        std::uint64_t seed, int bound) {
  if (bound < 1) throw Error("coordinate bound must be positive");
  std::mt19937_64 engine(seed);
  // Rejection sampling keeps the draw identical on every platform, unlike
  // std::uniform_int_distribution.
  const auto span = static_cast<std::uint64_t>(2 * bound + 1);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / span * span;
  auto draw = [&]() -> int {
    std::uint64_t r;
    do {
      r = engine();
    } while (r >= limit);
    return static_cast<int>(r % span) - bound;
  };
  const BasicInvariantSet s(g);
  std::vector<std::vector<Rational>> points;
  std::vector<int> x(g.rank);
  while (points.size() < count) {
    for (auto& v : x) v = draw();
    const bool off_forms = std::all_of(g.forms.begin(), g.forms.end(), [&](const auto& f) {
      return std::inner_product(f.begin(), f.end(), x.begin(), 0) != 0;
    });
    if (!off_forms) continue;
    std::vector<Rational> point(x.begin(), x.end());
    // det j vanishes exactly on the reflecting hyperplanes.
    if (determinant(s.gradient_rows(point)) == 0) continue;
    points.push_back(std::move(point));
  }
  return points;
}

Polynomial express_in_basis(std::span<const std::vector<Rational>> basis_values,
                            std::span<const Rational> values, int degree,
                            const RingPtr& ring, SolverLane lane) {
  if (basis_values.size() != values.size()) {
    throw Error("express_in_basis: sample and value counts differ");
  }
  const auto monomials = enumerate_graded_monomials(*ring, degree);
  const std::size_t n = monomials.size();
  const std::size_t m = values.size();
  if (n == 0) {
    if (std::any_of(values.begin(), values.end(), [](const Rational& v) { return v != 0; })) {
      throw InconsistentSystemError("no monomial of degree " + std::to_string(degree) +
                                    " but the sampled values are not all zero");
    }
    return Polynomial(ring);
  }
  const auto required = static_cast<std::size_t>(std::ceil(kDefaultSurplus * static_cast<double>(n)));
  if (m < required) {
    throw UnderdeterminedSystemError("express_in_basis: " + std::to_string(m) +
                                     " samples for " + std::to_string(n) +
                                     " monomials, need at least " + std::to_string(required));
  }
  const std::size_t l = ring->arity();
  std::vector<unsigned> max_exp(l, 0);
  for (const auto& mono : monomials) {
    for (std::size_t i = 0; i < l; ++i) max_exp[i] = std::max(max_exp[i], mono.exponent(i));
  }
  RationalMatrix a(m, n);
  std::vector<std::vector<Rational>> powers(l);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& pv = basis_values[r];
    if (pv.size() != l) throw Error("express_in_basis: sample has wrong length");
    for (std::size_t i = 0; i < l; ++i) {
      powers[i].assign(max_exp[i] + 1, Rational(1));
      for (unsigned e = 1; e <= max_exp[i]; ++e) powers[i][e] = powers[i][e - 1] * pv[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
      Rational v = 1;
      for (std::size_t i = 0; i < l; ++i) {
        const unsigned e = monomials[c].exponent(i);
        if (e) v *= powers[i][e];
      }
      a(r, c) = std::move(v);
    }
  }
  const auto x = solve_unique(a, values, lane);
  std::vector<Term> terms;
  for (std::size_t c = 0; c < n; ++c) {
    if (x[c] != 0) terms.push_back({monomials[c], x[c]});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

PhatResult compute_phat(const BasicInvariantSet& s, const PhatOptions& options) {
  const auto& g = s.group();
  const std::size_t l = s.rank();
  const RingPtr& ring = s.p_ring();
  const int top = 2 * g.degrees.back() - 2;
  const std::size_t needed = std::max<std::size_t>(count_graded_monomials(g.degrees, top), 1);
  const auto count = static_cast<std::size_t>(
      std::ceil(std::max(options.surplus, kDefaultSurplus) * static_cast<double>(needed)));

  int bound = options.coordinate_bound;
  for (int attempt = 0;; ++attempt) {
    const auto points = interpolation_points(g, count, options.seed, bound);
    std::vector<InvariantEvaluation> evals(points.size());
    parallel_for(points.size(), options.jobs,
                 [&](std::size_t k) { evals[k] = s.evaluate(points[k]); });
    std::vector<std::vector<Rational>> basis_values(points.size());
    std::vector<RationalMatrix> grams(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
      basis_values[k] = evals[k].values;
      grams[k] = evals[k].jacobian.transposed() * evals[k].jacobian;
    }

    std::vector<std::pair<std::size_t, std::size_t>> entries;
    for (std::size_t a = 0; a < l; ++a) {
      for (std::size_t b = a; b < l; ++b) entries.emplace_back(a, b);
    }
    // Largest systems first so parallel workers finish together.
    std::stable_sort(entries.begin(), entries.end(), [&](const auto& u, const auto& v) {
      return g.degrees[u.first] + g.degrees[u.second] > g.degrees[v.first] + g.degrees[v.second];
    });
    PolynomialMatrix out(ring, l);
    try {
      parallel_for(entries.size(), options.jobs, [&](std::size_t e) {
        const auto [a, b] = entries[e];
        std::vector<Rational> values(points.size());
        for (std::size_t k = 0; k < points.size(); ++k) values[k] = grams[k](a, b);
        out(a, b) = express_in_basis(basis_values, values, g.degrees[a] + g.degrees[b] - 2,
                                     ring, options.lane);
      });
    } catch (const UnderdeterminedSystemError&) {
      if (attempt >= 4) throw;
      bound *= 2;
      continue;
    }
    for (std::size_t a = 0; a < l; ++a) {
      for (std::size_t b = 0; b < a; ++b) out(a, b) = out(b, a);
    }
    return {PhatMatrix(std::move(out)), points.size(), bound};
  }
}

DefiningPropertyReport check_defining_property(const PhatMatrix& m,
                                               const BasicInvariantSet& s,
                                               std::size_t count, std::uint64_t seed) {
  DefiningPropertyReport report;
  const auto points = interpolation_points(s.group(), count, seed);
  for (const auto& x : points) {
    const auto eval = s.evaluate(x);
    const RationalMatrix gram = eval.jacobian.transposed() * eval.jacobian;
    for (std::size_t a = 0; a < m.size(); ++a) {
      for (std::size_t b = a; b < m.size(); ++b) {
        if (m(a, b).evaluate(eval.values) != gram(a, b)) {
          std::string where;
          for (const auto& v : x) where += (where.empty() ? "" : ",") + to_string(v);
          report.mismatches.push_back("P[" + std::to_string(a + 1) + "," +
                                      std::to_string(b + 1) + "] at x = (" + where + ")");
        }
      }
    }
    ++report.points;
  }
  return report;
}

}  // namespace orbitspace

#include "orbitspace/invariants.hpp"

#include "orbitspace/errors.hpp"

namespace orbitspace {

BasicInvariantSet::BasicInvariantSet(const ReflectionGroupData& group)
    : group_(&group),
      x_ring_(GradedRing::uniform("x", group.rank)),
      p_ring_(GradedRing::graded("p", group.degrees)) {}

InvariantEvaluation BasicInvariantSet::evaluate(std::span<const Rational> x) const {
  const std::size_t l = rank();
  if (x.size() != l) throw Error("invariant evaluation: point has wrong length");

  // Clear denominators: x = X / den with X integral.
  Integer den = lcm_of_denominators(x);
  std::vector<Integer> xi(l);
  for (std::size_t i = 0; i < l; ++i) xi[i] = den / x[i].get_den() * x[i].get_num();

  const auto& d = group_->degrees;
  const int max_degree = d.back();
  std::vector<Integer> sum_pow(l);             // Σ_r v_r^{d_a}
  std::vector<std::vector<Integer>> grad(l, std::vector<Integer>(l));  // Σ_r v_r^{d_a-1} f_ri
  std::vector<Integer> pw(static_cast<std::size_t>(max_degree) + 1);
  for (const auto& f : group_->forms) {
    Integer v = 0;
    for (std::size_t i = 0; i < l; ++i) {
      if (f[i] != 0) v += f[i] * xi[i];
    }
    if (v == 0) continue;
    pw[0] = 1;
    for (int e = 1; e <= max_degree; ++e) pw[e] = pw[e - 1] * v;
    for (std::size_t a = 0; a < l; ++a) {
      sum_pow[a] += pw[d[a]];
      const Integer& lower = pw[d[a] - 1];
      for (std::size_t i = 0; i < l; ++i) {
        if (f[i] == 1) {
          grad[a][i] += lower;
        } else if (f[i] == -1) {
          grad[a][i] -= lower;
        } else if (f[i] != 0) {
          grad[a][i] += lower * f[i];
        }
      }
    }
  }

  InvariantEvaluation out;
  out.values.resize(l);
  out.jacobian = RationalMatrix(l, l);
  for (std::size_t a = 0; a < l; ++a) {
    const Rational& c = group_->coeffs[a];
    Rational v(sum_pow[a], power(den, static_cast<unsigned long>(d[a])));
    v.canonicalize();
    out.values[a] = c * v;
    const Rational scale = c * d[a] / Rational(power(den, static_cast<unsigned long>(d[a] - 1)));
    for (std::size_t i = 0; i < l; ++i) out.jacobian(i, a) = scale * grad[a][i];
  }
  return out;
}

std::vector<Rational> BasicInvariantSet::values(std::span<const Rational> x) const {
  return evaluate(x).values;
}

RationalMatrix BasicInvariantSet::gradient_rows(std::span<const Rational> x) const {
  return evaluate(x).jacobian;
}

std::size_t dense_term_count(std::size_t variables, int degree) {
  // C(degree + n - 1, n - 1), saturating.
  Integer c = 1;
  for (std::size_t k = 1; k < variables; ++k) {
    c *= static_cast<unsigned long>(degree) + k;
    c /= static_cast<unsigned long>(k);
  }
  return c.fits_ulong_p() ? c.get_ui() : static_cast<std::size_t>(-1);
}

void BasicInvariantSet::materialize(std::size_t term_budget) {
  const std::size_t l = rank();
  for (int d : group_->degrees) {
    const std::size_t estimate = dense_term_count(l, d);
    if (estimate > term_budget) {
      throw Error("materializing the degree " + std::to_string(d) + " invariant of " +
                  group_->name + " needs about " + std::to_string(estimate) +
                  " terms per form, over the budget of " + std::to_string(term_budget));
    }
  }
  std::vector<Polynomial> polys;
  std::vector<Polynomial> linear;
  for (const auto& f : group_->forms) {
    Polynomial lf(x_ring_);
    for (std::size_t i = 0; i < l; ++i) {
      if (f[i] != 0) lf = lf + Polynomial::variable(x_ring_, i).scaled(f[i]);
    }
    linear.push_back(std::move(lf));
  }
  for (std::size_t a = 0; a < l; ++a) {
    Polynomial sum(x_ring_);
    for (const auto& lf : linear) sum = sum + lf.pow(static_cast<unsigned>(group_->degrees[a]));
    polys.push_back(sum.scaled(group_->coeffs[a]));
  }
  polys_ = std::move(polys);
}

BasicInvariantSet build_basic_invariants(const ReflectionGroupData& group, bool materialize,
                                         std::size_t term_budget) {
  BasicInvariantSet s(group);
  if (materialize) s.materialize(term_budget);
  return s;
}

}  // namespace orbitspace

#include "orbitspace/strata.hpp"

#include "orbitspace/errors.hpp"

namespace orbitspace {

StratumSystem stratum_system(const PhatMatrix& phat, std::size_t k) {
  const std::size_t l = phat.size();
  if (k > l) throw Error("stratum rank " + std::to_string(k) + " exceeds " + std::to_string(l));
  StratumSystem s;
  s.rank = k;
  if (k < l) s.equations = poly_minors(phat.matrix(), k + 1, true);
  for (std::size_t order = 1; order <= k; ++order) {
    auto minors = poly_principal_minors(phat.matrix(), order);
    s.nonneg.insert(s.nonneg.end(), minors.begin(), minors.end());
  }
  if (k > 0) s.witnesses = poly_minors(phat.matrix(), k, true);
  return s;
}

Polynomial section_p1(const Polynomial& p) {
  const RingPtr& ring = p.ring();
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < ring->arity(); ++i) {
    images.push_back(i == 0 ? Polynomial::constant(ring, 1) : Polynomial::variable(ring, i));
  }
  return p.substitute(images, ring);
}

StratumSystem section_p1(const StratumSystem& system) {
  StratumSystem out = system;
  for (auto* list : {&out.equations, &out.nonneg, &out.witnesses}) {
    for (auto& m : *list) m.value = section_p1(m.value);
  }
  return out;
}

Polynomial rehomogenize(const Polynomial& p, int degree) {
  const RingPtr& ring = p.ring();
  const int w = ring->weight(0);
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    const int missing = degree - t.monomial.degree();
    if (missing < 0 || missing % w != 0) {
      throw Error("rehomogenize: a term of degree " + std::to_string(t.monomial.degree()) +
                  " cannot be completed to degree " + std::to_string(degree));
    }
    const unsigned e = t.monomial.exponent(0) + static_cast<unsigned>(missing / w);
    terms.push_back({t.monomial.with_exponent(*ring, 0, e), t.coefficient});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

PointClass classify_point(const PhatMatrix& phat, std::span<const Rational> point) {
  const RationalMatrix m = phat.matrix().evaluate(point);
  PointClass c;
  c.rank = rank(m);
  c.psd = is_positive_semidefinite(m);
  c.positive_definite = c.psd && c.rank == m.rows();
  return c;
}

}  // namespace orbitspace

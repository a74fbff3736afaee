#include "orbitspace/polynomial.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <utility>

#include "orbitspace/errors.hpp"

namespace orbitspace {

// ---------------------------------------------------------------- GradedRing

GradedRing::GradedRing(std::vector<std::string> names, std::vector<int> weights)
    : names_(std::move(names)), weights_(std::move(weights)) {
  if (names_.size() != weights_.size()) {
    throw Error("GradedRing: names and weights differ in length");
  }
  if (names_.size() > kMaxVariables) {
    throw Error("GradedRing: at most " + std::to_string(kMaxVariables) +
                " variables are supported");
  }
  for (int w : weights_) {
    if (w < 1) throw Error("GradedRing: weights must be >= 1");
  }
}

RingPtr GradedRing::uniform(std::string_view prefix, std::size_t arity) {
  return graded(prefix, std::vector<int>(arity, 1));
}

RingPtr GradedRing::graded(std::string_view prefix, std::vector<int> weights) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    names.push_back(std::string(prefix) + std::to_string(i + 1));
  }
  return std::make_shared<const GradedRing>(std::move(names), std::move(weights));
}

std::optional<std::size_t> GradedRing::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_ring(const RingPtr& a, const RingPtr& b, std::string_view what) {
  if (!same_ring(a, b)) {
    throw RingMismatchError(std::string(what) + ": operands live in different rings");
  }
}

// ------------------------------------------------------------------ Monomial

Monomial::Monomial(const GradedRing& ring, std::span<const int> exponents) {
  if (exponents.size() != ring.arity()) {
    throw Error("Monomial: exponent vector does not match ring arity");
  }
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0 || exponents[i] > static_cast<int>(kMaxExponent)) {
      throw Error("Monomial: exponent out of range");
    }
    exps_[i] = static_cast<std::uint8_t>(exponents[i]);
    degree_ += exponents[i] * ring.weight(i);
  }
}

Monomial Monomial::variable(const GradedRing& ring, std::size_t index,
                            unsigned exponent) {
  std::vector<int> e(ring.arity(), 0);
  e.at(index) = static_cast<int>(exponent);
  return Monomial(ring, e);
}

std::vector<int> Monomial::exponents(std::size_t arity) const {
  return std::vector<int>(exps_.begin(), exps_.begin() + static_cast<long>(arity));
}

Monomial Monomial::times(const Monomial& other, const GradedRing& ring) const {
  Monomial out;
  for (std::size_t i = 0; i < ring.arity(); ++i) {
    const unsigned e = unsigned{exps_[i]} + other.exps_[i];
    if (e > kMaxExponent) throw Error("Monomial: exponent overflow");
    out.exps_[i] = static_cast<std::uint8_t>(e);
  }
  out.degree_ = degree_ + other.degree_;
  return out;
}

Monomial Monomial::with_exponent(const GradedRing& ring, std::size_t index,
                                 unsigned exponent) const {
  if (exponent > kMaxExponent) throw Error("Monomial: exponent overflow");
  Monomial out = *this;
  out.degree_ += (static_cast<int>(exponent) - exps_[index]) * ring.weight(index);
  out.exps_[index] = static_cast<std::uint8_t>(exponent);
  return out;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (auto e : exps_) {
    h ^= e;
    h *= 1099511628211ULL;
  }
  return h;
}

// ---------------------------------------------------------------- Polynomial

namespace {

bool descending(const Term& a, const Term& b) { return a.monomial > b.monomial; }

// Coefficients scaled to integers by a common denominator.
struct IntegerForm {
  std::vector<std::pair<Monomial, Integer>> terms;
  Integer denominator;
};

IntegerForm to_integer_form(std::span<const Term> terms) {
  IntegerForm f;
  f.denominator = 1;
  for (const auto& t : terms) {
    mpz_lcm(f.denominator.get_mpz_t(), f.denominator.get_mpz_t(),
            t.coefficient.get_den_mpz_t());
  }
  f.terms.reserve(terms.size());
  for (const auto& t : terms) {
    Integer c = f.denominator / t.coefficient.get_den();
    c *= t.coefficient.get_num();
    f.terms.emplace_back(t.monomial, std::move(c));
  }
  return f;
}

}  // namespace

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw Error("Polynomial: null ring");
}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> sorted_terms)
    : ring_(std::move(ring)), terms_(std::move(sorted_terms)) {}

Polynomial Polynomial::constant(RingPtr ring, const Rational& value) {
  std::vector<Term> terms;
  if (value != 0) terms.push_back({Monomial(), value});
  return Polynomial(std::move(ring), std::move(terms));
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  auto m = Monomial::variable(*ring, index);
  return Polynomial(std::move(ring), std::vector<Term>{{m, Rational(1)}});
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m,
                                const Rational& coefficient) {
  std::vector<Term> terms;
  if (coefficient != 0) terms.push_back({m, coefficient});
  return Polynomial(std::move(ring), std::move(terms));
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), descending);
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().monomial == t.monomial) {
      merged.back().coefficient += t.coefficient;
    } else {
      if (!merged.empty() && merged.back().coefficient == 0) merged.pop_back();
      merged.push_back(std::move(t));
    }
  }
  if (!merged.empty() && merged.back().coefficient == 0) merged.pop_back();
  return Polynomial(std::move(ring), std::move(merged));
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) {
    return terms_.back().coefficient;
  }
  return 0;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), m,
      [](const Term& t, const Monomial& key) { return t.monomial > key; });
  if (it != terms_.end() && it->monomial == m) return it->coefficient;
  return 0;
}

std::optional<int> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().monomial.degree();
}

bool Polynomial::is_homogeneous() const {
  return terms_.empty() ||
         terms_.front().monomial.degree() == terms_.back().monomial.degree();
}

bool Polynomial::is_homogeneous_of(int degree) const {
  return terms_.empty() || (terms_.front().monomial.degree() == degree &&
                            terms_.back().monomial.degree() == degree);
}

Polynomial Polynomial::operator-() const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coefficient = -t.coefficient;
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::scaled(const Rational& factor) const {
  if (factor == 0) return Polynomial(ring_);
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coefficient *= factor;
  return Polynomial(ring_, std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring_, b.ring_, "add");
  std::vector<Term> out;
  out.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  while (i != a.terms_.end() || j != b.terms_.end()) {
    if (j == b.terms_.end() || (i != a.terms_.end() && i->monomial > j->monomial)) {
      out.push_back(*i++);
    } else if (i == a.terms_.end() || j->monomial > i->monomial) {
      out.push_back(*j++);
    } else {
      Rational c = i->coefficient + j->coefficient;
      if (c != 0) out.push_back({i->monomial, std::move(c)});
      ++i;
      ++j;
    }
  }
  return Polynomial(a.ring_, std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring_, b.ring_, "multiply");
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
  const GradedRing& ring = *a.ring_;
  const IntegerForm fa = to_integer_form(a.terms_);
  const IntegerForm fb = to_integer_form(b.terms_);

  std::unordered_map<Monomial, Integer, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : fa.terms) {
    for (const auto& [mb, cb] : fb.terms) {
      Integer& slot = acc[ma.times(mb, ring)];
      mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
  const Integer den = fa.denominator * fb.denominator;
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c == 0) continue;
    Rational q(c, den);
    q.canonicalize();
    out.push_back({m, std::move(q)});
  }
  std::sort(out.begin(), out.end(), descending);
  return Polynomial(a.ring_, std::move(out));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring_, b.ring_) || a.terms_.size() != b.terms_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].monomial != b.terms_[i].monomial ||
        a.terms_[i].coefficient != b.terms_[i].coefficient) {
      return false;
    }
  }
  return true;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= ring_->arity()) throw Error("derivative: variable index out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const unsigned e = t.monomial.exponent(var);
    if (e == 0) continue;
    // Lowering one exponent preserves the relative order of distinct terms.
    out.push_back({t.monomial.with_exponent(*ring_, var, e - 1),
                   t.coefficient * static_cast<unsigned long>(e)});
  }
  return Polynomial(ring_, std::move(out));
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  const std::size_t n = ring_->arity();
  if (point.size() != n) {
    throw Error("evaluate: point has " + std::to_string(point.size()) +
                " coordinates, ring has " + std::to_string(n));
  }
  std::vector<std::vector<Rational>> powers(n);
  auto power_of = [&](std::size_t i, unsigned e) -> const Rational& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(1);
    while (cache.size() <= e) cache.push_back(cache.back() * point[i]);
    return cache[e];
  };
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coefficient;
    for (std::size_t i = 0; i < n; ++i) {
      if (auto e = t.monomial.exponent(i); e != 0) v *= power_of(i, e);
    }
    sum += v;
  }
  return sum;
}

namespace {

class Substituter {
 public:
  Substituter(const GradedRing& source, std::span<const Polynomial> images,
              const RingPtr& target)
      : source_(source), images_(images), target_(target), powers_(images.size()) {}

  Polynomial run(const std::vector<const Term*>& terms, std::size_t var) {
    if (var == source_.arity()) {
      Rational c = 0;
      for (const Term* t : terms) c += t->coefficient;
      return Polynomial::constant(target_, c);
    }
    std::map<unsigned, std::vector<const Term*>> groups;
    for (const Term* t : terms) groups[t->monomial.exponent(var)].push_back(t);
    Polynomial result(target_);
    for (const auto& [e, group] : groups) {
      Polynomial inner = run(group, var + 1);
      result = result + (e == 0 ? inner : power(var, e) * inner);
    }
    return result;
  }

 private:
  const Polynomial& power(std::size_t var, unsigned e) {
    auto& cache = powers_[var];
    if (cache.empty()) cache.push_back(Polynomial::constant(target_, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images_[var]);
    return cache[e];
  }

  const GradedRing& source_;
  std::span<const Polynomial> images_;
  RingPtr target_;
  std::vector<std::vector<Polynomial>> powers_;
};

}  // namespace

Polynomial Polynomial::substitute(std::span<const Polynomial> images,
                                  const RingPtr& target) const {
  if (images.size() != ring_->arity()) {
    throw Error("substitute: need one image per variable");
  }
  for (const auto& img : images) require_same_ring(img.ring(), target, "substitute");
  std::vector<const Term*> all;
  all.reserve(terms_.size());
  for (const auto& t : terms_) all.push_back(&t);
  Substituter s(*ring_, images, target);
  return s.run(all, 0);
}

Polynomial Polynomial::rebind(const RingPtr& target) const {
  if (target->arity() != ring_->arity()) {
    throw RingMismatchError("rebind: arity differs");
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    out.push_back({Monomial(*target, t.monomial.exponents(target->arity())),
                   t.coefficient});
  }
  std::sort(out.begin(), out.end(), descending);
  return Polynomial(target, std::move(out));
}

Rational Polynomial::content() const {
  if (terms_.empty()) return 0;
  Integer g = 0;
  Integer l = 1;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coefficient.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coefficient.get_den_mpz_t());
  }
  Rational c(g, l);
  c.canonicalize();
  if (terms_.front().coefficient < 0) c = -c;
  return c;
}

Polynomial combine(const Polynomial& lhs, const Polynomial& rhs, CombineOp op) {
  switch (op) {
    case CombineOp::kAdd:
      return lhs + rhs;
    case CombineOp::kSubtract:
      return lhs - rhs;
    case CombineOp::kMultiply:
      return lhs * rhs;
  }
  throw Error("combine: unknown operation");
}

// ----------------------------------------------------------------- monomials

namespace {

void enumerate(const GradedRing& ring, std::size_t var, std::size_t prefix,
               int remaining, std::vector<int>& exps, std::vector<Monomial>& out) {
  if (var == prefix) {
    if (remaining == 0) out.emplace_back(ring, exps);
    return;
  }
  const int w = ring.weight(var);
  for (int e = remaining / w; e >= 0; --e) {
    exps[var] = e;
    enumerate(ring, var + 1, prefix, remaining - e * w, exps, out);
  }
  exps[var] = 0;
}

}  // namespace

std::vector<Monomial> enumerate_graded_monomials(const GradedRing& ring, int degree,
                                                 std::size_t prefix) {
  std::vector<Monomial> out;
  if (degree < 0 || prefix > ring.arity()) return out;
  std::vector<int> exps(ring.arity(), 0);
  enumerate(ring, 0, prefix, degree, exps, out);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<Monomial> enumerate_graded_monomials(const GradedRing& ring, int degree) {
  return enumerate_graded_monomials(ring, degree, ring.arity());
}

std::uint64_t count_graded_monomials(std::span<const int> weights, int degree) {
  if (degree < 0) return 0;
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(degree) + 1, 0);
  ways[0] = 1;
  for (int w : weights) {
    for (int d = w; d <= degree; ++d) ways[d] += ways[d - w];
  }
  return ways[degree];
}

}  // namespace orbitspace

#pragma once

// Sparse multivariate polynomials with exact rational coefficients over a
// weighted ("graded") variable ring.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orbitspace/rational.hpp"

namespace orbitspace {

inline constexpr std::size_t kMaxVariables = 12;
inline constexpr unsigned kMaxExponent = 255;

class GradedRing {
 public:
  GradedRing(std::vector<std::string> names, std::vector<int> weights);

  // Variables prefix1..prefixN, all of weight 1.
  static std::shared_ptr<const GradedRing> uniform(std::string_view prefix,
                                                   std::size_t arity);
  // Variables prefix1..prefixN carrying the given weights.
  static std::shared_ptr<const GradedRing> graded(std::string_view prefix,
                                                  std::vector<int> weights);

  std::size_t arity() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  int weight(std::size_t i) const { return weights_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& weights() const { return weights_; }

  // Index of the named variable, if present.
  std::optional<std::size_t> find(std::string_view name) const;

  bool operator==(const GradedRing& other) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> weights_;
};

using RingPtr = std::shared_ptr<const GradedRing>;

// Value equality of rings (identical names and weights).
bool same_ring(const RingPtr& a, const RingPtr& b);
// Throws RingMismatchError unless same_ring(a, b).
void require_same_ring(const RingPtr& a, const RingPtr& b, std::string_view what);

// Exponent vector plus its cached weighted degree. Ordering is graded
// lexicographic: weighted degree first, then the exponent vectors compared
// lexicographically in the ring's variable order. Two monomials are only
// comparable when they come from the same ring.
class Monomial {
 public:
  Monomial() = default;
  Monomial(const GradedRing& ring, std::span<const int> exponents);

  static Monomial variable(const GradedRing& ring, std::size_t index,
                           unsigned exponent = 1);

  unsigned exponent(std::size_t i) const { return exps_[i]; }
  int degree() const { return degree_; }
  bool is_one() const { return degree_ == 0 && exps_ == decltype(exps_){}; }
  std::vector<int> exponents(std::size_t arity) const;

  // Product of monomials; throws if an exponent would overflow.
  Monomial times(const Monomial& other, const GradedRing& ring) const;
  // Same monomial with the exponent of `index` replaced.
  Monomial with_exponent(const GradedRing& ring, std::size_t index,
                         unsigned exponent) const;

  auto operator<=>(const Monomial& other) const {
    if (auto c = degree_ <=> other.degree_; c != 0) return c;
    return exps_ <=> other.exps_;
  }
  bool operator==(const Monomial& other) const = default;

  std::size_t hash() const;

 private:
  std::array<std::uint8_t, kMaxVariables> exps_{};
  int degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct Term {
  Monomial monomial;
  Rational coefficient;
};

// Immutable polynomial value. Terms are kept in descending graded-lex order and
// never carry a zero coefficient.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring);  // zero

  static Polynomial constant(RingPtr ring, const Rational& value);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial monomial(RingPtr ring, const Monomial& m,
                             const Rational& coefficient = 1);
  // Combines like terms, prunes zeros and sorts.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term (0 if absent).
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;

  // Weighted degree of the leading term; nullopt for the zero polynomial.
  std::optional<int> degree() const;
  // Zero counts as homogeneous of every degree.
  bool is_homogeneous() const;
  bool is_homogeneous_of(int degree) const;

  Polynomial operator-() const;
  Polynomial scaled(const Rational& factor) const;
  Polynomial pow(unsigned exponent) const;
  Polynomial derivative(std::size_t var) const;

  Rational evaluate(std::span<const Rational> point) const;

  // Replaces variable i by images[i]; all images share `target` ring.
  Polynomial substitute(std::span<const Polynomial> images,
                        const RingPtr& target) const;
  // Reinterprets the exponents in another ring of the same arity.
  Polynomial rebind(const RingPtr& target) const;

  // Integer content: polynomial / content has coprime integer coefficients and
  // a positive leading coefficient. Zero for the zero polynomial.
  Rational content() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  Polynomial(RingPtr ring, std::vector<Term> sorted_terms);

  RingPtr ring_;
  std::vector<Term> terms_;
};

enum class CombineOp { kAdd, kSubtract, kMultiply };

Polynomial combine(const Polynomial& lhs, const Polynomial& rhs, CombineOp op);

// All monomials of the ring with exactly the given weighted degree, in
// descending canonical order.
std::vector<Monomial> enumerate_graded_monomials(const GradedRing& ring,
                                                 int degree);
// Variant restricted to the first `prefix` variables.
std::vector<Monomial> enumerate_graded_monomials(const GradedRing& ring,
                                                 int degree,
                                                 std::size_t prefix);

// Number of exponent vectors with Σ e_i w_i = degree (dynamic programming).
std::uint64_t count_graded_monomials(std::span<const int> weights, int degree);

}  // namespace orbitspace

#include "orbitspace/flatten.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "orbitspace/errors.hpp"
#include "orbitspace/textio.hpp"

namespace orbitspace {

// ------------------------------------------------------------ BasisTransform

Rational BasisTransform::leading(std::size_t a) const {
  return maps.at(a).coefficient(Monomial::variable(*from, a));
}

PolynomialMatrix BasisTransform::jacobian() const {
  const std::size_t l = size();
  PolynomialMatrix j(from, l);
  for (std::size_t a = 0; a < l; ++a) {
    for (std::size_t b = 0; b < l; ++b) j(a, b) = maps[b].derivative(a);
  }
  return j;
}

std::vector<Rational> BasisTransform::apply(std::span<const Rational> point) const {
  std::vector<Rational> out;
  out.reserve(size());
  for (const auto& m : maps) out.push_back(m.evaluate(point));
  return out;
}

bool BasisTransform::operator==(const BasisTransform& other) const {
  if (!same_ring(from, other.from) || !same_ring(to, other.to) || size() != other.size()) {
    return false;
  }
  for (std::size_t a = 0; a < size(); ++a) {
    if (!(maps[a] == other.maps[a])) return false;
  }
  return true;
}

void check_transform(const BasisTransform& t) {
  const std::size_t l = t.size();
  if (t.from->arity() != l || t.to->arity() != l || t.from->weights() != t.to->weights()) {
    throw DataIntegrityError("transform rings do not match its size or weights");
  }
  for (std::size_t a = 0; a < l; ++a) {
    const auto& m = t.maps[a];
    require_same_ring(m.ring(), t.from, "basis transform");
    const std::string name = t.to->name(a);
    if (!m.is_homogeneous_of(t.from->weight(a))) {
      throw DataIntegrityError(name + " is not homogeneous of degree " +
                               std::to_string(t.from->weight(a)));
    }
    for (const auto& term : m.terms()) {
      for (std::size_t v = a + 1; v < l; ++v) {
        if (term.monomial.exponent(v) != 0) {
          throw DataIntegrityError(name + " depends on " + t.from->name(v) +
                                   ": transform is not triangular");
        }
      }
    }
    if (t.leading(a) == 0) throw DataIntegrityError(name + " has a zero leading coefficient");
  }
}

BasisTransform identity_transform(const RingPtr& from, const RingPtr& to) {
  std::vector<Rational> ones(from->arity(), Rational(1));
  return scaling_transform(from, to, ones);
}

BasisTransform scaling_transform(const RingPtr& from, const RingPtr& to,
                                 std::span<const Rational> scales) {
  BasisTransform t{from, to, {}};
  for (std::size_t a = 0; a < from->arity(); ++a) {
    t.maps.push_back(Polynomial::variable(from, a).scaled(scales[a]));
  }
  return t;
}

BasisTransform ParameterizedTransform::instantiate(std::span<const Rational> z) const {
  if (z.size() != parameters.size()) throw Error("instantiate: wrong number of parameters");
  BasisTransform t = identity_transform(from, to);
  std::vector<std::vector<Term>> extra(from->arity());
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (z[k] != 0) extra[parameters[k].target].push_back({parameters[k].monomial, z[k]});
  }
  for (std::size_t a = 0; a < t.size(); ++a) {
    t.maps[a] = t.maps[a] + Polynomial::from_terms(from, std::move(extra[a]));
  }
  return t;
}

ParameterizedTransform generic_unit_transform(const RingPtr& from, const RingPtr& to) {
  const auto& w = from->weights();
  for (std::size_t a = 1; a < w.size(); ++a) {
    if (w[a] <= w[a - 1]) {
      throw Error("generic transform needs strictly increasing weights (repeated degree " +
                  std::to_string(w[a]) + ")");
    }
  }
  ParameterizedTransform p{from, to, {}};
  for (std::size_t a = 0; a < w.size(); ++a) {
    for (const auto& m : enumerate_graded_monomials(*from, w[a], a)) {
      p.parameters.push_back({a, m});
    }
  }
  return p;
}

BasisTransform invert_transform(const BasisTransform& t) {
  check_transform(t);
  const std::size_t l = t.size();
  BasisTransform inv{t.to, t.from, {}};
  std::vector<Polynomial> images(l, Polynomial(t.to));
  for (std::size_t a = 0; a < l; ++a) {
    const Rational s = t.leading(a);
    const Polynomial rest =
        t.maps[a] - Polynomial::variable(t.from, a).scaled(s);
    const Polynomial back =
        (Polynomial::variable(t.to, a) - rest.substitute(images, t.to)).scaled(1 / s);
    images[a] = back;
  }
  inv.maps = std::move(images);
  return inv;
}

BasisTransform compose(const BasisTransform& first, const BasisTransform& second) {
  require_same_ring(first.to, second.from, "compose");
  BasisTransform out{first.from, second.to, {}};
  for (const auto& m : second.maps) out.maps.push_back(m.substitute(first.maps, first.from));
  return out;
}

PhatMatrix transform_phat(const PhatMatrix& phat, const BasisTransform& t) {
  require_same_ring(phat.ring(), t.from, "transform_phat");
  const std::size_t l = t.size();
  const PolynomialMatrix j = t.jacobian();
  const PolynomialMatrix product = j.transposed() * phat.matrix() * j;
  const BasisTransform inv = invert_transform(t);
  PolynomialMatrix out(t.to, l);
  for (std::size_t a = 0; a < l; ++a) {
    for (std::size_t b = a; b < l; ++b) {
      out(a, b) = product(a, b).substitute(inv.maps, t.to);
      out(b, a) = out(a, b);
    }
  }
  return PhatMatrix(std::move(out));
}

FlatMetric flat_metric(const PhatMatrix& phat) {
  const std::size_t l = phat.size();
  FlatMetric fm{PolynomialMatrix(phat.ring(), l)};
  fm.constant = true;
  for (std::size_t a = 0; a < l; ++a) {
    for (std::size_t b = 0; b < l; ++b) {
      fm.a(a, b) = phat(a, b).derivative(l - 1);
      if (!fm.a(a, b).is_constant()) fm.constant = false;
    }
  }
  if (fm.constant) {
    const std::vector<Rational> origin(l, Rational(0));
    fm.nondegenerate = determinant(fm.a.evaluate(origin)) != 0;
  }
  return fm;
}

// ------------------------------------------------------------ flatness solve

namespace {

using Cube = std::vector<std::vector<std::vector<Polynomial>>>;

Cube make_cube(const RingPtr& ring, std::size_t l) {
  return Cube(l, std::vector<std::vector<Polynomial>>(l, std::vector<Polynomial>(l, Polynomial(ring))));
}

// Inverse of A = ∂P̂/∂v_l. A vanishes above the anti-diagonal and is constant
// on it, so with R the reversal, A R is lower triangular with constant
// diagonal and A^{-1} = R (A R)^{-1} is polynomial.
PolynomialMatrix inverse_flat_candidate(const PolynomialMatrix& a) {
  const std::size_t l = a.size();
  const RingPtr& ring = a.ring();
  for (std::size_t r = 0; r < l; ++r) {
    for (std::size_t c = 0; c + r + 1 < l; ++c) {
      if (!a(r, c).is_zero()) {
        throw Error("dP/dv_l has a nonzero entry above the anti-diagonal at (" +
                    std::to_string(r + 1) + "," + std::to_string(c + 1) + ")");
      }
    }
    const Polynomial& diag = a(r, l - 1 - r);
    if (!diag.is_constant() || diag.is_zero()) {
      throw Error("dP/dv_l has a non-constant or zero anti-diagonal entry in row " +
                  std::to_string(r + 1));
    }
  }
  auto m = [&](std::size_t r, std::size_t c) -> const Polynomial& { return a(r, l - 1 - c); };
  PolynomialMatrix n(ring, l);
  for (std::size_t j = 0; j < l; ++j) {
    n(j, j) = Polynomial::constant(ring, 1 / m(j, j).constant_term());
    for (std::size_t i = j + 1; i < l; ++i) {
      Polynomial sum(ring);
      for (std::size_t k = j; k < i; ++k) {
        if (!m(i, k).is_zero() && !n(k, j).is_zero()) sum = sum + m(i, k) * n(k, j);
      }
      n(i, j) = sum.scaled(-1 / m(i, i).constant_term());
    }
  }
  PolynomialMatrix g(ring, l);
  for (std::size_t r = 0; r < l; ++r) {
    for (std::size_t c = 0; c < l; ++c) g(r, c) = n(l - 1 - r, c);
  }
  return g;
}

}  // namespace

FlatnessResult solve_flatness(const PhatMatrix& phat, SolverLane lane) {
  const RingPtr& ring = phat.ring();
  const std::size_t l = phat.size();
  const RingPtr q_ring = GradedRing::graded("q", ring->weights());
  const ParameterizedTransform generic = generic_unit_transform(ring, q_ring);

  PolynomialMatrix a(ring, l);
  for (std::size_t r = 0; r < l; ++r) {
    for (std::size_t c = 0; c < l; ++c) a(r, c) = phat(r, c).derivative(l - 1);
  }
  const PolynomialMatrix g = inverse_flat_candidate(a);
  {
    const PolynomialMatrix id = a * g;
    for (std::size_t r = 0; r < l; ++r) {
      for (std::size_t c = 0; c < l; ++c) {
        const bool ok = r == c ? id(r, c) == Polynomial::constant(ring, 1) : id(r, c).is_zero();
        if (!ok) throw Error("solve_flatness: internal error inverting dP/dv_l");
      }
    }
  }

  // Γ_{d,ab} = (∂_a g_db + ∂_b g_da - ∂_d g_ab) / 2 and Γ^c_ab = Σ_d A_cd Γ_{d,ab}.
  Cube dg = make_cube(ring, l);
  for (std::size_t e = 0; e < l; ++e) {
    for (std::size_t r = 0; r < l; ++r) {
      for (std::size_t c = 0; c < l; ++c) dg[e][r][c] = g(r, c).derivative(e);
    }
  }
  Cube lower = make_cube(ring, l);
  for (std::size_t d = 0; d < l; ++d) {
    for (std::size_t x = 0; x < l; ++x) {
      for (std::size_t y = x; y < l; ++y) {
        lower[d][x][y] = (dg[x][d][y] + dg[y][d][x] - dg[d][x][y]).scaled(Rational(1, 2));
      }
    }
  }
  Cube gamma = make_cube(ring, l);
  for (std::size_t c = 0; c < l; ++c) {
    for (std::size_t x = 0; x < l; ++x) {
      for (std::size_t y = x; y < l; ++y) {
        Polynomial sum(ring);
        for (std::size_t d = 0; d < l; ++d) {
          if (!a(c, d).is_zero() && !lower[d][x][y].is_zero()) sum = sum + a(c, d) * lower[d][x][y];
        }
        gamma[c][x][y] = std::move(sum);
      }
    }
  }

  // Hessian operator L_xy(φ) = ∂_x∂_y φ - Σ_e Γ^e_xy ∂_e φ, for x <= y.
  auto hessian = [&](const Polynomial& phi) {
    std::vector<Polynomial> out;
    std::vector<Polynomial> grad;
    for (std::size_t e = 0; e < l; ++e) grad.push_back(phi.derivative(e));
    for (std::size_t x = 0; x < l; ++x) {
      for (std::size_t y = x; y < l; ++y) {
        Polynomial v = grad[x].derivative(y);
        for (std::size_t e = 0; e < l; ++e) {
          if (!grad[e].is_zero() && !gamma[e][x][y].is_zero()) v = v - gamma[e][x][y] * grad[e];
        }
        out.push_back(std::move(v));
      }
    }
    return out;
  };

  FlatnessResult result{identity_transform(ring, q_ring), generic.count(), {}};
  std::vector<Rational> z(generic.count());
  for (std::size_t c = 0; c < l; ++c) {
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < generic.count(); ++k) {
      if (generic.parameters[k].target == c) cols.push_back(k);
    }
    const auto base = hessian(Polynomial::variable(ring, c));
    std::vector<std::vector<Polynomial>> columns;
    for (auto k : cols) columns.push_back(hessian(Polynomial::monomial(ring, generic.parameters[k].monomial)));

    // One equation per (entry, monomial) occurring anywhere.
    std::map<std::pair<std::size_t, Monomial>, std::size_t> row_of;
    auto rows_from = [&](const std::vector<Polynomial>& polys) {
      for (std::size_t e = 0; e < polys.size(); ++e) {
        for (const auto& t : polys[e].terms()) row_of.try_emplace({e, t.monomial}, row_of.size());
      }
    };
    rows_from(base);
    for (const auto& col : columns) rows_from(col);
    RationalMatrix m(row_of.size(), cols.size());
    std::vector<Rational> rhs(row_of.size());
    for (std::size_t e = 0; e < base.size(); ++e) {
      for (const auto& t : base[e].terms()) rhs[row_of.at({e, t.monomial})] = -t.coefficient;
    }
    for (std::size_t j = 0; j < columns.size(); ++j) {
      for (std::size_t e = 0; e < columns[j].size(); ++e) {
        for (const auto& t : columns[j][e].terms()) m(row_of.at({e, t.monomial}), j) = t.coefficient;
      }
    }
    result.stage_equations.push_back(row_of.size());
    const std::string where = "flat coordinate " + q_ring->name(c);
    if (cols.empty()) {
      if (!row_of.empty()) throw InconsistentSystemError(where + ": " + ring->name(c) + " is not flat");
      continue;
    }
    const LinearSolution s = solve_linear(m, rhs, lane);
    if (s.status == SolveStatus::kInconsistent) {
      throw InconsistentSystemError(where + ": flatness system is inconsistent");
    }
    if (s.status == SolveStatus::kUnderdetermined) {
      throw UnderdeterminedSystemError(where + ": flatness system has rank " +
                                       std::to_string(s.rank) + " < " +
                                       std::to_string(cols.size()));
    }
    for (std::size_t j = 0; j < cols.size(); ++j) z[cols[j]] = s.x[j];
  }
  result.transform = generic.instantiate(z);
  return result;
}

// ------------------------------------------------------------ normalization

namespace {

bool rational_sqrt(const Rational& v, Rational& out) {
  if (v < 0) return false;
  Integer n = v.get_num(), d = v.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_sqrt(n.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), d.get_mpz_t());
  out = Rational(n, d);
  out.canonicalize();
  return true;
}

}  // namespace

std::vector<std::size_t> free_scale_indices(std::size_t l) {
  std::vector<std::size_t> out;
  if (l < 2) return out;
  out.push_back(l - 1);
  for (std::size_t a = 1; a < l - 1 - a; ++a) out.push_back(a);
  return out;
}

BasisTransform normalize_scales(const BasisTransform& flat, const PhatMatrix& phat,
                                const ScaleConvention& convention) {
  check_transform(flat);
  const std::size_t l = flat.size();
  const PhatMatrix unit = transform_phat(phat, flat);
  const FlatMetric fm = flat_metric(unit);
  if (!fm.flat()) throw Error("normalize_scales: the transform is not flat");
  const Rational target = convention.anti_diagonal != 0
                              ? convention.anti_diagonal
                              : Rational(2 * flat.to->weight(l - 1));
  const std::vector<Rational> origin(l, Rational(0));
  const RationalMatrix eta = fm.a.evaluate(origin);

  // Current leading coefficients become part of the scale bookkeeping:
  // s[a] multiplies the current map a.
  std::vector<Rational> s(l, Rational(0));
  auto given = [&](std::size_t a) -> std::optional<Rational> {
    if (auto it = convention.leading.find(a); it != convention.leading.end()) {
      if (it->second == 0) throw Error("normalize_scales: zero leading coefficient requested");
      return it->second / flat.leading(a);
    }
    return std::nullopt;
  };
  s[0] = given(0).value_or(1 / flat.leading(0));

  // Anti-diagonal constant of pair (a, l-1-a) scales as s_a s_b / s_l.
  // The pair (1, l) fixes s_1 s_l η / s_l = target.
  if (s[0] * eta(0, l - 1) != target) {
    throw Error("normalize_scales: anti-diagonal target " + to_string(target) +
                " is unreachable with the first variable's scale " + to_string(s[0]));
  }
  if (l > 1) {
    const std::size_t top = l - 1;
    const std::size_t middle = l % 2 == 1 ? l / 2 : l;  // l means none
    if (auto v = given(top)) {
      s[top] = *v;
    } else if (middle < l && middle != 0) {
      // Leaves the middle variable unit-leading.
      const Rational lead = flat.leading(middle);
      s[top] = eta(middle, middle) / (target * lead * lead);
    } else {
      s[top] = 1 / flat.leading(top);
    }
    for (std::size_t a = 1; a <= top - a; ++a) {
      const std::size_t b = top - a;
      const Rational product = target * s[top] / eta(a, b);  // required s_a s_b
      const auto va = given(a);
      const auto vb = given(b);
      if (a == b) {
        Rational root;
        if (!rational_sqrt(product, root)) {
          throw Error("normalize_scales: the scale of " + flat.to->name(a) +
                      " would be irrational (square " + to_string(product) + ")");
        }
        if (va && *va != root && *va != -root) {
          throw Error("normalize_scales: leading coefficient of " + flat.to->name(a) +
                      " conflicts with the anti-diagonal target");
        }
        s[a] = va ? *va : root;
      } else if (va && vb) {
        if (*va * *vb != product) {
          throw Error("normalize_scales: leading coefficients of " + flat.to->name(a) +
                      " and " + flat.to->name(b) + " conflict with the anti-diagonal target");
        }
        s[a] = *va;
        s[b] = *vb;
      } else if (vb) {
        s[b] = *vb;
        s[a] = product / s[b];
      } else {
        s[a] = va ? *va : 1 / flat.leading(a);
        s[b] = product / s[a];
      }
    }
  }
  BasisTransform out{flat.from, flat.to, {}};
  for (std::size_t a = 0; a < l; ++a) out.maps.push_back(flat.maps[a].scaled(s[a]));
  return out;
}

}  // namespace orbitspace

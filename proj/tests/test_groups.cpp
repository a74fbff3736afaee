#include <gtest/gtest.h>

#include "orbitspace/errors.hpp"
#include "orbitspace/groups.hpp"
#include "orbitspace/invariants.hpp"
#include "orbitspace/linalg.hpp"
#include "support/oracle.hpp"

using namespace orbitspace;

TEST(Catalog, E7) {
  const auto& g = catalog("E7");
  EXPECT_EQ(g.rank, 7u);
  EXPECT_EQ(g.forms.size(), 56u);
  EXPECT_EQ(g.degrees, (std::vector<int>{2, 6, 8, 10, 12, 14, 18}));
  EXPECT_EQ(g.order, 2903040);
  EXPECT_EQ(g.reflections, 63);
}

TEST(Catalog, E8) {
  const auto& g = catalog("e8");
  EXPECT_EQ(g.rank, 8u);
  EXPECT_EQ(g.forms.size(), 240u);
  EXPECT_EQ(g.degrees, (std::vector<int>{2, 8, 12, 14, 18, 20, 24, 30}));
  EXPECT_EQ(g.reflections, 120);
}

TEST(Catalog, B2) {
  const auto& g = catalog("B2");
  EXPECT_EQ(g.forms.size(), 8u);
  EXPECT_EQ(g.degrees, (std::vector<int>{2, 4}));
  EXPECT_EQ(g.coeffs[0], Rational(1, 6));
  EXPECT_EQ(g.order, 8);
  EXPECT_EQ(g.reflections, 4);
  for (const std::vector<int> f : {std::vector<int>{1, 0}, {0, -1}, {1, -1}, {-1, -1}}) {
    EXPECT_NE(std::find(g.forms.begin(), g.forms.end(), f), g.forms.end());
  }
}

// Every catalog coefficient gives invariants with integer content 1, and the
// invariants are algebraically independent (nonzero Jacobian determinant).
TEST(Catalog, SmallGroupsContentAndIndependence) {
  oracle::Random rng(31);
  for (const char* name : {"B2", "B3", "A3"}) {
    const auto& g = catalog(name);
    const RingPtr x = GradedRing::uniform("x", g.rank);
    const auto polys = oracle::symbolic_invariants(g, x);
    for (const auto& p : polys) EXPECT_EQ(p.content(), 1) << name;
    PolynomialMatrix j(x, g.rank);
    for (std::size_t i = 0; i < g.rank; ++i) {
      for (std::size_t a = 0; a < g.rank; ++a) j(i, a) = polys[a].derivative(i);
    }
    EXPECT_FALSE(poly_det(j).is_zero()) << name;
  }
}

TEST(Catalog, LookupErrors) {
  EXPECT_THROW(catalog("H3"), Error);
  EXPECT_THROW(catalog("H4"), Error);
  EXPECT_THROW(catalog("I2(5)"), Error);
  EXPECT_THROW(catalog("F9"), Error);
  try {
    catalog("F9");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("E8"), std::string::npos);
  }
  EXPECT_EQ(&catalog("b3"), &catalog("B3"));
}

TEST(Numerics, EveryCatalogEntry) {
  for (const auto& name : catalog_names()) {
    const auto& g = catalog(name);
    const auto r = verify_group_numerics(g);
    EXPECT_TRUE(r.ok()) << name;
    EXPECT_EQ(r.computed_order, g.order) << name;
    EXPECT_EQ(r.computed_reflections, g.reflections) << name;
    const std::size_t l = g.rank;
    int sum = 0;
    Integer prod = 1;
    for (std::size_t a = 0; a < l; ++a) {
      sum += g.degrees[a];
      prod *= g.degrees[a];
      EXPECT_EQ(g.degrees[a] + g.degrees[l - 1 - a], g.degrees[l - 1] + 2) << name;
    }
    EXPECT_EQ(sum, g.reflections + static_cast<int>(l)) << name;
    EXPECT_EQ(prod, g.order) << name;
    EXPECT_EQ(2 * g.reflections, static_cast<int>(l) * g.degrees[l - 1]) << name;
  }
}

TEST(Numerics, DetectsBadData) {
  ReflectionGroupData g = catalog("B2");
  g.order = 16;
  EXPECT_FALSE(verify_group_numerics(g).ok());
  g = catalog("B3");
  g.degrees = {2, 4, 8};
  EXPECT_FALSE(verify_group_numerics(g).ok());
}

TEST(Forms, Validation) {
  for (const auto& name : catalog_names()) EXPECT_NO_THROW(validate_forms(catalog(name)));
  ReflectionGroupData dup = catalog("B2");
  dup.forms.push_back(dup.forms.front());
  EXPECT_THROW(validate_forms(dup), DataIntegrityError);
  ReflectionGroupData zero = catalog("B2");
  zero.forms.push_back({0, 0});
  EXPECT_THROW(validate_forms(zero), DataIntegrityError);
  ReflectionGroupData length = catalog("B2");
  length.forms.push_back({1, 2, 3});
  EXPECT_THROW(validate_forms(length), DataIntegrityError);
  ReflectionGroupData unpaired = catalog("E7");
  unpaired.forms.pop_back();
  EXPECT_THROW(validate_forms(unpaired), DataIntegrityError);
}

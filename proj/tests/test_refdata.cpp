#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "orbitspace/errors.hpp"
#include "orbitspace/flatten.hpp"
#include "orbitspace/groups.hpp"
#include "orbitspace/invariants.hpp"
#include "orbitspace/io.hpp"
#include "orbitspace/refdata.hpp"
#include "orbitspace/textio.hpp"

using namespace orbitspace;
namespace fs = std::filesystem;

namespace {

Polynomial parse(const std::string& s, const RingPtr& r) { return parse_polynomial(s, r); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// A writable copy of one group's reference files.
fs::path copy_reference(const std::string& group, const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("orbitspace_ref_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir / group);
  for (const char* f : {"transform.txt", "flat_phat.txt"}) {
    fs::copy_file(default_reference_dir() / group / f, dir / group / f);
  }
  return dir;
}

void replace_in(const fs::path& p, const std::string& from, const std::string& to) {
  std::string text = slurp(p);
  const auto pos = text.find(from);
  ASSERT_NE(pos, std::string::npos) << from;
  text.replace(pos, from.size(), to);
  std::ofstream(p) << text;
}

void restamp_checksum(const fs::path& p) {
  const Document doc = read_document(p);
  std::string text = slurp(p);
  const auto pos = text.find("# checksum: ");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos + 12, 16, checksum_hex(statement_checksum(doc)));
  std::ofstream(p) << text;
}

}  // namespace

TEST(Reference, E7Bundle) {
  const auto ref = load_reference("E7");
  EXPECT_EQ(ref.flat_phat(1, 1), parse("4 q1^5 + 20 q1^2 q2 + 20 q1 q3 + 10 q4", ref.q_ring));
  EXPECT_EQ(ref.flat_phat(1, 5).derivative(6), Polynomial::constant(ref.q_ring, 36));
  EXPECT_EQ(ref.transform.maps[1], parse("-(35 p1^3 - 27 p2)/6", ref.p_ring));
  EXPECT_EQ(ref.transform.leading(1), Rational(9, 2));
  EXPECT_EQ(ref.flat_phat(6, 6).coefficient(Monomial::variable(*ref.q_ring, 0, 17)), 16);
  for (std::size_t a = 0; a < 7; ++a) {
    EXPECT_EQ(ref.flat_phat(0, a), Polynomial::variable(ref.q_ring, a).scaled(2 * ref.q_ring->weight(a)));
  }
  check_transform(ref.transform);
  const BasisTransform inv = invert_transform(ref.transform);
  for (std::size_t a = 0; a < 7; ++a) {
    EXPECT_EQ(compose(ref.transform, inv).maps[a], Polynomial::variable(ref.p_ring, a));
  }
}

TEST(Reference, E8Bundle) {
  const auto ref = load_reference("E8");
  EXPECT_EQ(ref.flat_phat(1, 1), parse("15 q1^7 + 70 q1^3 q2 + 7 q1 q3 + 7 q4", ref.q_ring));
  EXPECT_EQ(ref.transform.maps[1], parse("-15 (49 p1^4 - 5 p2)/16", ref.p_ring));
  EXPECT_EQ(ref.flat_phat(3, 4).derivative(7), Polynomial::constant(ref.q_ring, 60));
  check_transform(ref.transform);
}

TEST(Reference, Availability) {
  EXPECT_TRUE(has_reference("E7"));
  EXPECT_TRUE(has_reference("e8"));
  EXPECT_FALSE(has_reference("B2"));
  EXPECT_THROW(load_reference("B2"), Error);
}

TEST(Reference, TamperedFileFailsChecksum) {
  const fs::path dir = copy_reference("E7", "tamper");
  replace_in(dir / "E7" / "flat_phat.txt", "20 q1^2 q2", "21 q1^2 q2");
  EXPECT_THROW(load_reference("E7", dir), DataIntegrityError);
  fs::remove_all(dir);
}

TEST(Reference, InvariantViolationNamesTheEntry) {
  const fs::path dir = copy_reference("E7", "antidiag");
  const fs::path file = dir / "E7" / "flat_phat.txt";
  const Document doc = read_document(file);
  const Statement* s = doc.find("P[2,6]");
  ASSERT_NE(s, nullptr);
  replace_in(file, s->expression, "2*(" + s->expression + ")");
  restamp_checksum(file);
  try {
    load_reference("E7", dir);
    FAIL() << "expected a data integrity error";
  } catch (const DataIntegrityError& e) {
    EXPECT_NE(std::string(e.what()).find("P[2,6]"), std::string::npos) << e.what();
  }
  fs::remove_all(dir);
}

TEST(Compare, IdenticalAndInjectedFault) {
  const auto ref = load_reference("E7");
  const CompareReport same = compare(ref.flat_phat, ref.flat_phat);
  EXPECT_TRUE(same.ok());
  EXPECT_EQ(same.compared, 28u);
  EXPECT_EQ(same.matched, 28u);

  PolynomialMatrix perturbed = ref.flat_phat.matrix();
  const Monomial m = perturbed(2, 4).terms()[0].monomial;
  const Polynomial bump = Polynomial::monomial(ref.q_ring, m, Rational(1, 3));
  perturbed(2, 4) = perturbed(2, 4) + bump;
  perturbed(4, 2) = perturbed(2, 4);
  const CompareReport r = compare(PhatMatrix(perturbed), ref.flat_phat);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.matched, 27u);
  ASSERT_EQ(r.mismatches.size(), 1u);
  EXPECT_EQ(r.mismatches[0].entry, "P[3,5]");
  ASSERT_EQ(r.mismatches[0].differences.size(), 1u);

  BasisTransform t = ref.transform;
  t.maps[3] = t.maps[3] + Polynomial::variable(ref.p_ring, 0).pow(5);
  const CompareReport rt = compare(t, ref.transform);
  ASSERT_EQ(rt.mismatches.size(), 1u);
  EXPECT_EQ(rt.mismatches[0].entry, "q4");
}

TEST(Io, MatrixRoundTrip) {
  const auto ref = load_reference("E8");
  const std::string text = format_matrix(ref.flat_phat, {{"degrees", "2,8,12,14,18,20,24,30"}});
  const Document doc = parse_document(text);
  EXPECT_EQ(header_degrees(doc), ref.q_ring->weights());
  EXPECT_EQ(parse_matrix(doc, ref.q_ring), ref.flat_phat);
  const Document tdoc = parse_document(format_transform(ref.transform));
  EXPECT_EQ(parse_transform(tdoc, ref.p_ring, ref.q_ring), ref.transform);
}

TEST(Io, MatrixErrors) {
  const RingPtr p = GradedRing::graded("p", {2, 4});
  EXPECT_THROW(parse_matrix(parse_document("P[1,1] = 4*p1\nP[1,2] = 8*p2\n"), p), ParseError);
  EXPECT_THROW(parse_matrix(parse_document("P[1,1] = 4*p1\nP[1,2] = 8*p2\nP[1,2] = 8*p2\nP[2,2] = p1*p2\n"), p),
               ParseError);
  EXPECT_THROW(parse_matrix(parse_document("P[1,1] = 4*p1\nP[1,2] = 8*p2\nP[2,2] = p1*p2\nP[3,3] = 1\n"), p),
               ParseError);
  EXPECT_THROW(parse_matrix(parse_document("P[1,1] = 4*p1\nP[1,2] = 8*p2\nP[2,2] = p1*x\n"), p),
               ParseError);
  EXPECT_EQ(join_ints({2, 4}), "2,4");
  EXPECT_FALSE(header_degrees(parse_document("P[1,1] = 1\n")).has_value());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hcx/matching.hpp"
#include "support.hpp"

using namespace hcx;
using testing::core_of;
using testing::for_each_permutation;
using testing::to_blocks;

namespace {

std::vector<std::size_t> counts(const GradedVector<std::vector<FaceId>>& crit) {
  std::vector<std::size_t> out;
  for (const auto& v : crit.values()) out.push_back(v.size());
  return out;
}

}  // namespace

TEST_CASE("primal partner examples") {
  const auto id3 = partner(face_from_perm(Permutation::identity(3)));
  REQUIRE(id3.has_value());
  CHECK(*id3 == parse_face(3, "0,1,3|2,4"));

  const auto p = partner(parse_face(7, "0,3|1,2,4,6|5,7,8"));
  REQUIRE(p.has_value());
  CHECK(*p == parse_face(7, "0,3|2|1,4,6|5,7,8"));

  CHECK_FALSE(partner(parse_face(3, "0,2|1,3,4")).has_value());
}

TEST_CASE("dual partner examples") {
  const auto e = dual_partner(face_from_perm(Permutation::parse("321")));
  REQUIRE(e.has_value());
  CHECK(perm_from_face(*e).to_string() == "312");
  CHECK_FALSE(dual_partner(face_from_perm(Permutation::parse("213"))).has_value());
  CHECK_FALSE(dual_partner(face_from_perm(Permutation::identity(3))).has_value());
}

TEST_CASE("small matchings") {
  const auto t3 = FaceTable::enumerate(3);
  const auto primal = build_matching(t3, false);
  CHECK(primal.pair_count() == 1);
  CHECK(primal.critical_count() == 4);
  CHECK(counts(critical_faces(t3, primal)) == std::vector<std::size_t>{0, 3, 1});
  CHECK(verify_well_defined(t3, primal).ok);

  const auto dual = build_matching(t3, true);
  CHECK(dual.dual);
  CHECK(counts(critical_faces(t3, dual)) == std::vector<std::size_t>{1, 3, 0});
  CHECK(verify_well_defined(t3, dual).ok);

  const auto t2 = FaceTable::enumerate(2);
  const auto m2 = build_matching(t2, false);
  CHECK(m2.critical_count() == 0);
  CHECK(m2.pairs[0] == 1);

  const auto t1 = FaceTable::enumerate(1);
  const auto m1 = build_matching(t1, false);
  CHECK(m1.critical_count() == 1);
  CHECK(verify_well_defined(t1, m1).ok);
}

TEST_CASE("primal partners agree with the literal oracle, n <= 7") {
  for (int n = 1; n <= 7; ++n) {
    for_each_permutation(n, [&](const std::vector<int>& core) {
      const auto f = face_from_perm(Permutation::from_core(core));
      const auto mine = partner(f);
      const auto theirs = oracle::partner(to_blocks(f));
      REQUIRE(mine.has_value() == theirs.has_value());
      if (mine) REQUIRE(to_blocks(*mine) == *theirs);
    });
  }
}

TEST_CASE("dual partners agree with the decreasing-run oracle, n <= 7") {
  for (int n = 1; n <= 7; ++n) {
    for_each_permutation(n, [&](const std::vector<int>& core) {
      const auto f = face_from_perm(Permutation::from_core(core));
      const auto mine = dual_partner(f);
      const auto theirs = oracle::dual::partner(core);
      REQUIRE(mine.has_value() == theirs.has_value());
      if (mine) REQUIRE(core_of(perm_from_face(*mine)) == *theirs);
    });
  }
}

TEST_CASE("well-definedness and critical shapes, n <= 7") {
  for (int n = 1; n <= 7; ++n) {
    const auto t = FaceTable::enumerate(n);
    for (bool dual : {false, true}) {
      const auto map = build_matching(t, dual);
      const auto report = verify_well_defined(t, map);
      CHECK_MESSAGE(report.ok, "n=", n, " dual=", dual, " ", report.violations.empty() ? "" : report.violations[0]);
      CHECK(check_critical_shape(t, map).ok);
      CHECK(2 * map.pair_count() + map.critical_count() == t.size());
    }
  }
}

TEST_CASE("verification catches a broken matching") {
  const auto t3 = FaceTable::enumerate(3);
  auto map = build_matching(t3, false);
  // Pair the empty face with a vertex it is not matched to.
  const FaceId empty = t3.faces_of_dimension(-1)[0];
  FaceId other = kUnmatched;
  for (FaceId v : t3.faces_of_dimension(0)) {
    if (v != map.pairs[empty]) other = v;
  }
  map.pairs[empty] = other;
  const auto report = verify_well_defined(t3, map);
  CHECK_FALSE(report.ok);
  CHECK(report.violationCount > 0);
}

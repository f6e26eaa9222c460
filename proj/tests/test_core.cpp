#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hcx/core.hpp"
#include "support.hpp"

using namespace hcx;
using testing::core_of;
using testing::for_each_permutation;
using testing::to_blocks;

namespace {

BarredFace face(int n, std::vector<LetterSet> blocks) { return BarredFace(n, std::move(blocks)); }

oracle::Type to_oracle(MatchableType t) {
  switch (t) {
    case MatchableType::OneSplit: return oracle::Type::OneSplit;
    case MatchableType::OneMerged: return oracle::Type::OneMerged;
    case MatchableType::TwoMerged: return oracle::Type::TwoMerged;
    case MatchableType::TwoSplit: return oracle::Type::TwoSplit;
    case MatchableType::NotMatchable: return oracle::Type::None;
  }
  return oracle::Type::None;
}

}  // namespace

TEST_CASE("letter sets") {
  LetterSet s{0, 3, 5};
  CHECK(s.size() == 3);
  CHECK(s.min() == 0);
  CHECK(s.max() == 5);
  CHECK(s.nth(1) == 3);
  CHECK(s.count_above(2) == 2);
  CHECK(s.elements() == std::vector<int>{0, 3, 5});
  CHECK(LetterSet::range(2, 4) == LetterSet{2, 3, 4});
  CHECK((s | LetterSet{1}) == LetterSet{0, 1, 3, 5});
  CHECK(s.without(3) == LetterSet{0, 5});
}

TEST_CASE("permutation parsing and validation") {
  CHECK(Permutation::parse("132654").to_string() == "132654");
  CHECK(Permutation::parse("1,3,2").to_string() == "132");
  CHECK_THROWS_AS(Permutation::parse("1224"), ValidationError);
  CHECK_THROWS_AS(Permutation::parse("1x3"), ValidationError);
  CHECK_THROWS_AS(Permutation({1, 0, 2}), ValidationError);
  CHECK_THROWS_AS(Permutation::from_core({1, 3}), ValidationError);
  const auto p = Permutation::from_core({1, 3, 2, 6, 5, 4});
  CHECK(p.word().size() == 8);
  CHECK(p[0] == 0);
  CHECK(p[7] == 7);
}

TEST_CASE("lexicographic rank round trip") {
  for (int n = 1; n <= 6; ++n) {
    FaceId expected = 0;
    for_each_permutation(n, [&](const std::vector<int>& core) {
      const auto p = Permutation::from_core(core);
      CHECK(p.lex_rank() == expected);
      CHECK(Permutation::from_lex_rank(n, expected) == p);
      ++expected;
    });
  }
  CHECK_THROWS_AS(Permutation::from_lex_rank(3, 6), ValidationError);
}

TEST_CASE("complement and inversions") {
  const auto p = Permutation::parse("321");
  CHECK(p.complement().to_string() == "123");
  CHECK(p.inversion_count() == 3);
  CHECK(Permutation::parse("132").swap_positions(2, 3).to_string() == "123");
}

TEST_CASE("face_from_perm examples") {
  const auto f = face_from_perm(Permutation::parse("132654"));
  CHECK(f == face(6, {{0, 1, 3}, {2, 6}, {5}, {4, 7}}));
  CHECK(f.dimension() == 2);
  CHECK(f.chain() == std::vector<std::uint64_t>{0b1010, 0b1001110, 0b1101110});
  CHECK(f.to_core_string() == "13|26|5|4");

  const auto id = face_from_perm(Permutation::identity(3));
  CHECK(id.block_count() == 1);
  CHECK(id.dimension() == -1);

  const auto e = face_from_perm(Permutation::parse("321"));
  CHECK(e == face(3, {{0, 3}, {2}, {1, 4}}));
  CHECK(e.dimension() == 1);
  CHECK(e.to_string() == "0,3|2|1,4");
}

TEST_CASE("perm_from_face examples") {
  CHECK(perm_from_face(face(3, {{0, 3}, {2}, {1, 4}})).to_string() == "321");
  CHECK(perm_from_face(face(4, {LetterSet::range(0, 5)})) == Permutation::identity(4));
  CHECK(perm_from_face(parse_face(7, "13|246|57")).to_string() == "1324657");
  CHECK(parse_face(7, "0,1,3|2,4,6|5,7,8") == parse_face(7, "13|246|57"));
}

TEST_CASE("invalid faces are rejected") {
  // Bar at an ascent.
  CHECK_THROWS_AS(face(3, {{0, 1}, {2, 3, 4}}), ValidationError);
  // Sentinel in the wrong block.
  CHECK_THROWS_AS(face(3, {{1, 3}, {0, 2, 4}}), ValidationError);
  // Missing letter.
  CHECK_THROWS_AS(face(3, {{0, 1, 2, 4}}), ValidationError);
  CHECK_THROWS_AS(parse_face(3, "12|3"), ValidationError);
}

TEST_CASE("descent ranks") {
  CHECK(descent_ranks(Permutation::parse("132654")) == std::vector<int>{3, 5, 6});
  CHECK(descent_ranks(Permutation::identity(5)).empty());
  CHECK(descent_ranks(Permutation::parse("321")) == std::vector<int>{2, 3});
  const auto f = face_from_perm(Permutation::parse("132654"));
  for (std::size_t b = 0; b < f.bar_count(); ++b) CHECK(f.bar_rank(b) == descent_ranks(perm_from_face(f))[b]);
}

TEST_CASE("inversions between blocks") {
  CHECK(inversions_between({0, 3}, {2}) == 1);
  CHECK(inversions_between({0, 3}, {1, 2, 4}) == 2);
  CHECK(inversions_between({0, 1, 2}, {3, 4}) == 0);
  CHECK_THROWS_AS(inversions_between({0, 3}, {3}), ValidationError);
}

TEST_CASE("merge_blocks examples") {
  const auto e = face(3, {{0, 3}, {2}, {1, 4}});
  CHECK(merge_blocks(e, 0) == face(3, {{0, 2, 3}, {1, 4}}));
  CHECK(merge_blocks(e, 1) == face(3, {{0, 3}, {1, 2, 4}}));
  CHECK(merge_blocks(face(3, {{0, 1, 3}, {2, 4}}), 0).block_count() == 1);
  CHECK_THROWS_AS(merge_blocks(e, 2), ValidationError);
}

TEST_CASE("split examples") {
  CHECK(split_block(face(3, {LetterSet::range(0, 4)}), 0, SplitMode::Pair) == face(3, {{0, 1, 3}, {2, 4}}));
  CHECK(split_block(parse_face(7, "0,3|1,2,4,6|5,7,8"), 1, SplitMode::Singleton) ==
        parse_face(7, "0,3|2|1,4,6|5,7,8"));
  const auto [lo, hi] = split_letters(LetterSet::range(0, 6), SplitMode::Singleton);
  CHECK(lo == LetterSet{1});
  CHECK(hi == LetterSet{0, 2, 3, 4, 5, 6});
  CHECK_THROWS_AS(split_letters(LetterSet{1, 2, 3}, SplitMode::Pair), ValidationError);
  CHECK_THROWS_AS(split_letters(LetterSet{1}, SplitMode::Singleton), ValidationError);
}

TEST_CASE("split letters are the unique one-inversion bipartitions") {
  for (int m = 2; m <= 9; ++m) {
    std::vector<int> block(static_cast<std::size_t>(m));
    std::iota(block.begin(), block.end(), 0);
    const LetterSet set = LetterSet::range(0, m - 1);
    auto singles = oracle::one_inversion_splits(block, 1);
    REQUIRE(singles.size() == 1);
    auto [lo, hi] = split_letters(set, SplitMode::Singleton);
    CHECK(lo.elements() == singles[0].first);
    CHECK(hi.elements() == singles[0].second);
    if (m >= 4) {
      auto pairs = oracle::one_inversion_splits(block, static_cast<std::size_t>(m) - 2);
      REQUIRE(pairs.size() == 1);
      auto [plo, phi] = split_letters(set, SplitMode::Pair);
      CHECK(plo.elements() == pairs[0].first);
      CHECK(phi.elements() == pairs[0].second);
    }
  }
}

TEST_CASE("s_count examples") {
  const auto f = parse_face(9, "0,1,2,3,6|5,8|7,9|4,10");
  CHECK(s_count(f, 0) == 2);
  CHECK(s_count(face(3, {{0, 1, 3}, {2, 4}}), 0) == 1);
  CHECK(s_count(f, 3) == 0);
}

TEST_CASE("classify_interval examples") {
  for (int n = 2; n <= 6; ++n) {
    CHECK(classify_interval(face_from_perm(Permutation::identity(n)), 0) == MatchableType::TwoMerged);
  }
  CHECK(classify_interval(parse_face(7, "0,3|1,2,4,6|5,7,8"), 1) == MatchableType::OneMerged);
  CHECK(classify_interval(face(3, {{0, 1, 3}, {2, 4}}), 0) == MatchableType::TwoSplit);
  CHECK(paired_type(MatchableType::OneSplit) == MatchableType::OneMerged);
  CHECK(paired_type(MatchableType::TwoSplit) == MatchableType::TwoMerged);
  CHECK(to_string(MatchableType::OneMerged) == "1-merged");
  CHECK(classify_interval(face_from_perm(Permutation::identity(1)), 0) == MatchableType::NotMatchable);
}

TEST_CASE("lowest_matchable examples") {
  CHECK_FALSE(lowest_matchable(face(3, {{0, 2}, {1, 3, 4}})).has_value());
  const auto d = lowest_matchable(face(3, {{0, 1, 3}, {2, 4}}));
  REQUIRE(d.has_value());
  CHECK(d->blockIndex == 0);
  CHECK(d->startRank == 1);
  CHECK(d->type == MatchableType::TwoSplit);
  const auto id = lowest_matchable(face_from_perm(Permutation::identity(3)));
  REQUIRE(id.has_value());
  CHECK(id->blockIndex == 0);
  CHECK(id->type == MatchableType::TwoMerged);
}

TEST_CASE("decreasing runs") {
  using Runs = std::vector<std::vector<int>>;
  CHECK(decreasing_runs(Permutation::parse("321")) == Runs{{0}, {3, 2, 1}, {4}});
  CHECK(decreasing_runs(Permutation::identity(3)) == Runs{{0}, {1}, {2}, {3}, {4}});
  CHECK(decreasing_runs(Permutation::parse("132654")) == Runs{{0}, {1}, {3, 2}, {6, 5, 4}, {7}});
}

TEST_CASE("faces agree with increasing runs and chains, n <= 8") {
  for (int n = 1; n <= 8; ++n) {
    for_each_permutation(n, [&](const std::vector<int>& core) {
      const auto p = Permutation::from_core(core);
      const auto f = face_from_perm(p);
      REQUIRE(to_blocks(f) == oracle::increasing_runs(oracle::sentinel_word(core)));
      REQUIRE(perm_from_face(f) == p);
      const auto chain = f.chain();
      const auto back = face_from_chain(n, chain);
      REQUIRE(back.has_value());
      REQUIRE(*back == f);
      REQUIRE(complement_face(complement_face(f)) == f);
    });
  }
}

TEST_CASE("non-descent chains are not faces") {
  // {1} < {1,2}: the bar at rank 2 would sit at an ascent of 1 2 3.
  const std::vector<std::uint64_t> chain{0b10, 0b110};
  CHECK_FALSE(face_from_chain(3, chain).has_value());
  const std::vector<std::uint64_t> unordered{0b1000, 0b10};
  CHECK_FALSE(face_from_chain(3, unordered).has_value());
}

TEST_CASE("block calculus matches the literal definitions, n <= 7") {
  for (int n = 1; n <= 7; ++n) {
    for_each_permutation(n, [&](const std::vector<int>& core) {
      const auto f = face_from_perm(Permutation::from_core(core));
      const auto blocks = to_blocks(f);
      for (std::size_t i = 0; i < f.block_count(); ++i) {
        REQUIRE(s_count(f, i) == oracle::s_count(blocks, i));
        REQUIRE(to_oracle(classify_interval(f, i)) == oracle::classify(blocks, i));
        if (i + 1 < f.block_count()) {
          REQUIRE(inversions_between(f.block(i), f.block(i + 1)) == oracle::pair_inversions(blocks[i], blocks[i + 1]));
        }
      }
    });
  }
}

TEST_CASE("split then merge is the identity") {
  for (int n = 2; n <= 7; ++n) {
    for_each_permutation(n, [&](const std::vector<int>& core) {
      const auto f = face_from_perm(Permutation::from_core(core));
      for (std::size_t i = 0; i < f.block_count(); ++i) {
        const int m = f.block(i).size();
        for (SplitMode mode : {SplitMode::Singleton, SplitMode::Pair}) {
          if (m < (mode == SplitMode::Pair ? 4 : 2)) continue;
          BarredFace g = f;
          try {
            g = split_block(f, i, mode);
          } catch (const ValidationError&) {
            continue;
          }
          REQUIRE(g.block_count() == f.block_count() + 1);
          REQUIRE(merge_blocks(g, i) == f);
          REQUIRE(perm_from_face(g).inversion_count() == perm_from_face(f).inversion_count() + 1);
        }
      }
    });
  }
}

TEST_CASE("merge changes the inversion count by the cross inversions") {
  for_each_permutation(6, [&](const std::vector<int>& core) {
    const auto f = face_from_perm(Permutation::from_core(core));
    for (std::size_t b = 0; b < f.bar_count(); ++b) {
      const auto g = merge_blocks(f, b);
      REQUIRE(perm_from_face(f).inversion_count() - perm_from_face(g).inversion_count() ==
              static_cast<std::size_t>(inversions_between(f.block(b), f.block(b + 1))));
    }
  });
}

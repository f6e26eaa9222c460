#pragma once

// Permutations with sentinels, barred faces of the h-complex, and the block
// calculus used by the matching: inversions between blocks, sorted merges,
// one-inversion splits, J-block runs and the matchable-interval classifier.

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hcx/errors.hpp"

namespace hcx {

using FaceId = std::uint64_t;

// Largest supported n. Words have n+2 letters and must fit a 64-bit mask;
// face ids are lexicographic ranks and must fit 64 bits (20! < 2^63).
inline constexpr int kMaxN = 20;

// A set of letters from {0..n+1}, stored as a bitmask.
class LetterSet {
 public:
  constexpr LetterSet() = default;
  explicit constexpr LetterSet(std::uint64_t bits) : bits_(bits) {}
  LetterSet(std::initializer_list<int> letters);

  // All letters lo..hi inclusive.
  static LetterSet range(int lo, int hi);

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int x) const { return (bits_ >> x) & 1U; }
  int min() const;
  int max() const;
  // k-th smallest letter, 0-based.
  int nth(int k) const;
  // Number of letters strictly greater than x.
  int count_above(int x) const;
  std::vector<int> elements() const;

  LetterSet with(int x) const { return LetterSet(bits_ | (std::uint64_t{1} << x)); }
  LetterSet without(int x) const { return LetterSet(bits_ & ~(std::uint64_t{1} << x)); }

  friend constexpr LetterSet operator|(LetterSet a, LetterSet b) { return LetterSet(a.bits_ | b.bits_); }
  friend constexpr LetterSet operator&(LetterSet a, LetterSet b) { return LetterSet(a.bits_ & b.bits_); }
  friend constexpr bool operator==(LetterSet, LetterSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

// One-line word a_0 a_1 .. a_n a_{n+1} with sentinels a_0 = 0, a_{n+1} = n+1.
// Rank i+1 sits between a_i and a_{i+1}.
class Permutation {
 public:
  // Full word including both sentinels.
  explicit Permutation(std::vector<int> word);

  // Core letters a_1..a_n only; sentinels are added.
  static Permutation from_core(std::span<const int> letters);
  static Permutation from_core(std::initializer_list<int> letters);
  // Parses "132654" (n <= 9) or "1,3,2,6,5,4".
  static Permutation parse(std::string_view text);
  static Permutation identity(int n);
  static Permutation from_lex_rank(int n, FaceId rank);

  int n() const { return static_cast<int>(word_.size()) - 2; }
  std::span<const int> word() const { return word_; }
  std::span<const int> core() const { return std::span<const int>(word_).subspan(1, word_.size() - 2); }
  int operator[](std::size_t i) const { return word_[i]; }

  // Position of this permutation in the lexicographic order of S_n.
  FaceId lex_rank() const;
  // w -> (n+1) - w on core letters; sentinels fixed.
  Permutation complement() const;
  Permutation swap_positions(std::size_t i, std::size_t j) const;
  std::size_t inversion_count() const;

  // Core letters, concatenated for n <= 9 and comma separated otherwise.
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> word_;
};

// A face of Delta_n: an ordered partition of {0..n+1} into blocks, every
// bar a descent, 0 in the first block and n+1 in the last.
class BarredFace {
 public:
  BarredFace(int n, std::vector<LetterSet> blocks);

  int n() const { return n_; }
  std::span<const LetterSet> blocks() const { return blocks_; }
  const LetterSet& block(std::size_t i) const { return blocks_.at(i); }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t bar_count() const { return blocks_.size() - 1; }
  int dimension() const { return static_cast<int>(blocks_.size()) - 2; }

  // Rank of bar `bar` (between blocks bar and bar+1).
  int bar_rank(std::size_t bar) const;
  // Rank of the bar below block `block`; 1 for the first block.
  int start_rank(std::size_t block) const;

  // Proper prefix unions with sentinels removed, as masks over {1..n}.
  std::vector<std::uint64_t> chain() const;

  // "0,1,3|2,4": every block with sentinels.
  std::string to_string() const;
  // "13|24": core letters only, the notation used for faces in the literature.
  std::string to_core_string() const;

  friend bool operator==(const BarredFace&, const BarredFace&) = default;

 private:
  int n_;
  std::vector<LetterSet> blocks_;
};

// Builds a face from a chain of proper non-empty subsets of {1..n}. Returns
// nothing when the chain is not strictly increasing or some bar would not be
// a descent (the chain is then not a face of Delta_n).
std::optional<BarredFace> face_from_chain(int n, std::span<const std::uint64_t> chain);

// Parses "0,1,3|2,4" (full) or "13|24" / "1,3|2,4" (core only).
BarredFace parse_face(int n, std::string_view text);

BarredFace face_from_perm(const Permutation& p);
Permutation perm_from_face(const BarredFace& f);
BarredFace complement_face(const BarredFace& f);

// Ranks i+1 with a_i > a_{i+1}; always within 2..n.
std::vector<int> descent_ranks(const Permutation& p);

// |{(a, b) : a in lower, b in upper, a > b}|. Throws on overlapping sets.
int inversions_between(LetterSet lower, LetterSet upper);

// Replaces blocks bar and bar+1 by their sorted union.
BarredFace merge_blocks(const BarredFace& f, std::size_t bar);

enum class SplitMode { Singleton, Pair };

// The unique one-inversion bipartition of a block b_1 < .. < b_m:
//   Singleton: {b_2} | {b_1, b_3, .., b_m}
//   Pair:      {b_1, .., b_{m-3}, b_{m-1}} | {b_{m-2}, b_m}
// Returns (lower, upper).
std::pair<LetterSet, LetterSet> split_letters(LetterSet block, SplitMode mode);

// Splits block `block` of f; throws ValidationError when the block is too
// small or the result is not a face.
BarredFace split_block(const BarredFace& f, std::size_t block, SplitMode mode);

// Length of the maximal run J_1..J_s of size-2 blocks directly above `block`
// whose only inversions with everything below them in the run are the
// separating descents.
int s_count(const BarredFace& f, std::size_t block);

enum class MatchableType { OneSplit, OneMerged, TwoMerged, TwoSplit, NotMatchable };

std::string_view to_string(MatchableType t);

// Partner type under the matching: OneSplit <-> OneMerged, TwoMerged <-> TwoSplit.
MatchableType paired_type(MatchableType t);

MatchableType classify_interval(const BarredFace& f, std::size_t block);

struct IntervalDiagnosis {
  std::size_t blockIndex = 0;
  int startRank = 1;
  int sCount = 0;
  MatchableType type = MatchableType::NotMatchable;

  friend bool operator==(const IntervalDiagnosis&, const IntervalDiagnosis&) = default;
};

std::optional<IntervalDiagnosis> lowest_matchable(const BarredFace& f);

// Maximal decreasing runs of the sentinel word, in word order.
std::vector<std::vector<int>> decreasing_runs(const Permutation& p);

}  // namespace hcx

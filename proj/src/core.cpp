#include "hcx/core.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <numeric>
#include <sstream>

namespace hcx {

namespace {

std::uint64_t bit(int x) { return std::uint64_t{1} << x; }

void check_n(int n) {
  if (n < 1 || n > kMaxN) {
    throw ValidationError("n must lie in 1.." + std::to_string(kMaxN) + ", got " + std::to_string(n));
  }
}

std::string join_letters(const std::vector<int>& letters, bool compact) {
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (!compact && i > 0) out += ',';
    out += std::to_string(letters[i]);
  }
  return out;
}

std::vector<int> parse_letters(std::string_view text, bool allowCompact) {
  std::vector<int> out;
  if (text.find(',') == std::string_view::npos && allowCompact) {
    for (char c : text) {
      if (c == ' ') continue;
      if (c < '0' || c > '9') throw ValidationError("bad letter '" + std::string(1, c) + "'");
      out.push_back(c - '0');
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string_view::npos) next = text.size();
    auto token = text.substr(pos, next - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
      throw ValidationError("bad letter '" + std::string(token) + "'");
    }
    out.push_back(value);
    pos = next + 1;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// LetterSet

LetterSet::LetterSet(std::initializer_list<int> letters) {
  for (int x : letters) bits_ |= bit(x);
}

LetterSet LetterSet::range(int lo, int hi) {
  std::uint64_t bits = 0;
  for (int x = lo; x <= hi; ++x) bits |= bit(x);
  return LetterSet(bits);
}

int LetterSet::min() const {
  assert(bits_ != 0);
  return std::countr_zero(bits_);
}

int LetterSet::max() const {
  assert(bits_ != 0);
  return 63 - std::countl_zero(bits_);
}

int LetterSet::nth(int k) const {
  std::uint64_t b = bits_;
  for (int i = 0; i < k; ++i) b &= b - 1;
  assert(b != 0);
  return std::countr_zero(b);
}

int LetterSet::count_above(int x) const {
  if (x >= 63) return 0;
  return std::popcount(bits_ >> (x + 1));
}

std::vector<int> LetterSet::elements() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<int> word) : word_(std::move(word)) {
  if (word_.size() < 3) throw ValidationError("permutation word needs at least 3 letters");
  const int n = this->n();
  check_n(n);
  if (word_.front() != 0 || word_.back() != n + 1) {
    throw ValidationError("permutation word must start with 0 and end with n+1");
  }
  std::uint64_t seen = 0;
  for (std::size_t i = 1; i <= static_cast<std::size_t>(n); ++i) {
    int a = word_[i];
    if (a < 1 || a > n || (seen & bit(a))) {
      throw ValidationError("core letters must be a bijection onto 1..n");
    }
    seen |= bit(a);
  }
}

Permutation Permutation::from_core(std::span<const int> letters) {
  std::vector<int> word;
  word.reserve(letters.size() + 2);
  word.push_back(0);
  word.insert(word.end(), letters.begin(), letters.end());
  word.push_back(static_cast<int>(letters.size()) + 1);
  return Permutation(std::move(word));
}

Permutation Permutation::from_core(std::initializer_list<int> letters) {
  return from_core(std::span<const int>(letters.begin(), letters.size()));
}

Permutation Permutation::parse(std::string_view text) {
  return from_core(parse_letters(text, true));
}

Permutation Permutation::identity(int n) {
  check_n(n);
  std::vector<int> word(static_cast<std::size_t>(n) + 2);
  std::iota(word.begin(), word.end(), 0);
  return Permutation(std::move(word));
}

Permutation Permutation::from_lex_rank(int n, FaceId rank) {
  check_n(n);
  std::vector<FaceId> factorial(static_cast<std::size_t>(n) + 1, 1);
  for (int i = 1; i <= n; ++i) factorial[static_cast<std::size_t>(i)] = factorial[static_cast<std::size_t>(i) - 1] * static_cast<FaceId>(i);
  if (rank >= factorial[static_cast<std::size_t>(n)]) throw ValidationError("lexicographic rank out of range");
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> core;
  core.reserve(static_cast<std::size_t>(n));
  for (int i = n; i >= 1; --i) {
    FaceId f = factorial[static_cast<std::size_t>(i) - 1];
    auto idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    core.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return from_core(core);
}

FaceId Permutation::lex_rank() const {
  const int n = this->n();
  FaceId rank = 0;
  std::uint64_t used = 0;
  for (int i = 1; i <= n; ++i) {
    int a = word_[static_cast<std::size_t>(i)];
    // Letters smaller than a that are still unused.
    int smaller = (a - 1) - std::popcount(used & (bit(a) - 1));
    rank = rank * static_cast<FaceId>(n - i + 1) + static_cast<FaceId>(smaller);
    used |= bit(a);
  }
  return rank;
}

Permutation Permutation::complement() const {
  std::vector<int> word = word_;
  const int n = this->n();
  for (std::size_t i = 1; i + 1 < word.size(); ++i) word[i] = n + 1 - word[i];
  return Permutation(std::move(word));
}

Permutation Permutation::swap_positions(std::size_t i, std::size_t j) const {
  std::vector<int> word = word_;
  std::swap(word.at(i), word.at(j));
  return Permutation(std::move(word));
}

std::size_t Permutation::inversion_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    for (std::size_t j = i + 1; j < word_.size(); ++j) {
      if (word_[i] > word_[j]) ++count;
    }
  }
  return count;
}

std::string Permutation::to_string() const {
  std::vector<int> letters(core().begin(), core().end());
  return join_letters(letters, n() <= 9);
}

// ---------------------------------------------------------------------------
// BarredFace

BarredFace::BarredFace(int n, std::vector<LetterSet> blocks) : n_(n), blocks_(std::move(blocks)) {
  check_n(n);
  if (blocks_.empty()) throw ValidationError("a face needs at least one block");
  std::uint64_t seen = 0;
  for (const auto& b : blocks_) {
    if (b.empty()) throw ValidationError("empty block");
    if (seen & b.bits()) throw ValidationError("blocks overlap");
    seen |= b.bits();
  }
  if (seen != LetterSet::range(0, n + 1).bits()) throw ValidationError("blocks must cover 0..n+1");
  if (!blocks_.front().contains(0)) throw ValidationError("first block must contain 0");
  if (!blocks_.back().contains(n + 1)) throw ValidationError("last block must contain n+1");
  for (std::size_t i = 0; i + 1 < blocks_.size(); ++i) {
    if (blocks_[i].max() < blocks_[i + 1].min()) {
      throw ValidationError("bar " + std::to_string(i) + " is not a descent");
    }
  }
}

int BarredFace::bar_rank(std::size_t bar) const {
  if (bar >= bar_count()) throw ValidationError("bar index out of range");
  int rank = 0;
  for (std::size_t i = 0; i <= bar; ++i) rank += blocks_[i].size();
  return rank;
}

int BarredFace::start_rank(std::size_t block) const {
  if (block >= block_count()) throw ValidationError("block index out of range");
  return block == 0 ? 1 : bar_rank(block - 1);
}

std::vector<std::uint64_t> BarredFace::chain() const {
  std::vector<std::uint64_t> out;
  out.reserve(bar_count());
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i + 1 < blocks_.size(); ++i) {
    acc |= blocks_[i].bits();
    out.push_back(acc & ~std::uint64_t{1});
  }
  return out;
}

std::string BarredFace::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i > 0) out += '|';
    out += join_letters(blocks_[i].elements(), false);
  }
  return out;
}

std::string BarredFace::to_core_string() const {
  std::string out;
  const bool compact = n_ <= 9;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i > 0) out += '|';
    LetterSet core = blocks_[i].without(0).without(n_ + 1);
    out += join_letters(core.elements(), compact);
  }
  return out;
}

std::optional<BarredFace> face_from_chain(int n, std::span<const std::uint64_t> chain) {
  check_n(n);
  const std::uint64_t full = LetterSet::range(1, n).bits();
  std::vector<LetterSet> blocks;
  blocks.reserve(chain.size() + 1);
  std::uint64_t prev = 0;
  for (std::uint64_t s : chain) {
    if ((s & ~full) != 0 || s == 0 || s == full) return std::nullopt;
    if ((prev & ~s) != 0 || prev == s) return std::nullopt;
    blocks.emplace_back(s & ~prev);
    prev = s;
  }
  blocks.emplace_back(full & ~prev);
  blocks.front() = blocks.front().with(0);
  blocks.back() = blocks.back().with(n + 1);
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
    if (blocks[i].max() < blocks[i + 1].min()) return std::nullopt;
  }
  return BarredFace(n, std::move(blocks));
}

BarredFace parse_face(int n, std::string_view text) {
  std::vector<LetterSet> blocks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('|', pos);
    if (next == std::string_view::npos) next = text.size();
    LetterSet b;
    for (int x : parse_letters(text.substr(pos, next - pos), n <= 9)) {
      if (x < 0 || x > n + 1 || b.contains(x)) throw ValidationError("bad letter in face");
      b = b.with(x);
    }
    blocks.push_back(b);
    pos = next + 1;
  }
  if (!blocks.front().contains(0)) blocks.front() = blocks.front().with(0);
  if (!blocks.back().contains(n + 1)) blocks.back() = blocks.back().with(n + 1);
  return BarredFace(n, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Face <-> permutation

BarredFace face_from_perm(const Permutation& p) {
  auto word = p.word();
  std::vector<LetterSet> blocks;
  LetterSet current{word[0]};
  for (std::size_t i = 1; i < word.size(); ++i) {
    if (word[i - 1] > word[i]) {
      blocks.push_back(current);
      current = LetterSet{};
    }
    current = current.with(word[i]);
  }
  blocks.push_back(current);
  return BarredFace(p.n(), std::move(blocks));
}

Permutation perm_from_face(const BarredFace& f) {
  std::vector<int> word;
  word.reserve(static_cast<std::size_t>(f.n()) + 2);
  for (const auto& b : f.blocks()) {
    for (int x : b.elements()) word.push_back(x);
  }
  return Permutation(std::move(word));
}

BarredFace complement_face(const BarredFace& f) {
  return face_from_perm(perm_from_face(f).complement());
}

std::vector<int> descent_ranks(const Permutation& p) {
  std::vector<int> out;
  auto word = p.word();
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (word[i] > word[i + 1]) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Block calculus

int inversions_between(LetterSet lower, LetterSet upper) {
  if (!(lower & upper).empty()) throw ValidationError("blocks overlap");
  int count = 0;
  for (std::uint64_t b = upper.bits(); b != 0; b &= b - 1) {
    count += lower.count_above(std::countr_zero(b));
  }
  return count;
}

BarredFace merge_blocks(const BarredFace& f, std::size_t bar) {
  if (bar >= f.bar_count()) throw ValidationError("bar index out of range");
  std::vector<LetterSet> blocks(f.blocks().begin(), f.blocks().end());
  blocks[bar] = blocks[bar] | blocks[bar + 1];
  blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(bar) + 1);
  return BarredFace(f.n(), std::move(blocks));
}

std::pair<LetterSet, LetterSet> split_letters(LetterSet block, SplitMode mode) {
  const int m = block.size();
  if (mode == SplitMode::Singleton) {
    if (m < 2) throw ValidationError("singleton split needs a block of size >= 2");
    int second = block.nth(1);
    return {LetterSet{second}, block.without(second)};
  }
  if (m < 4) throw ValidationError("pair split needs a block of size >= 4");
  LetterSet upper{block.nth(m - 3), block.nth(m - 1)};
  LetterSet lower(block.bits() & ~upper.bits());
  return {lower, upper};
}

BarredFace split_block(const BarredFace& f, std::size_t block, SplitMode mode) {
  if (block >= f.block_count()) throw ValidationError("block index out of range");
  auto [lower, upper] = split_letters(f.block(block), mode);
  assert(lower.max() > upper.min());
  assert(inversions_between(lower, upper) == 1);
  std::vector<LetterSet> blocks(f.blocks().begin(), f.blocks().end());
  blocks[block] = upper;
  blocks.insert(blocks.begin() + static_cast<std::ptrdiff_t>(block), lower);
  return BarredFace(f.n(), std::move(blocks));
}

int s_count(const BarredFace& f, std::size_t block) {
  if (block >= f.block_count()) throw ValidationError("block index out of range");
  LetterSet below = f.block(block);
  int s = 0;
  for (std::size_t j = block + 1; j < f.block_count(); ++j) {
    LetterSet candidate = f.block(j);
    if (candidate.size() != 2) break;
    // The separating descent is the only new inversion allowed.
    if (inversions_between(below, candidate) != 1) break;
    below = below | candidate;
    ++s;
  }
  return s;
}

std::string_view to_string(MatchableType t) {
  switch (t) {
    case MatchableType::OneSplit: return "1-split";
    case MatchableType::OneMerged: return "1-merged";
    case MatchableType::TwoMerged: return "2-merged";
    case MatchableType::TwoSplit: return "2-split";
    case MatchableType::NotMatchable: return "not-matchable";
  }
  return "?";
}

MatchableType paired_type(MatchableType t) {
  switch (t) {
    case MatchableType::OneSplit: return MatchableType::OneMerged;
    case MatchableType::OneMerged: return MatchableType::OneSplit;
    case MatchableType::TwoMerged: return MatchableType::TwoSplit;
    case MatchableType::TwoSplit: return MatchableType::TwoMerged;
    case MatchableType::NotMatchable: return MatchableType::NotMatchable;
  }
  return MatchableType::NotMatchable;
}

namespace {

// Shape test for a 1-merged interval: even size >= 4 sitting above a block
// whose largest letter exceeds the two smallest letters of the interval.
bool one_merged_shape(const LetterSet* below, LetterSet block) {
  const int m = block.size();
  return below != nullptr && m >= 4 && m % 2 == 0 && below->max() > block.nth(1);
}

}  // namespace

MatchableType classify_interval(const BarredFace& f, std::size_t block) {
  if (block >= f.block_count()) throw ValidationError("block index out of range");
  const LetterSet interval = f.block(block);
  const int m = interval.size();
  const LetterSet* below = block > 0 ? &f.blocks()[block - 1] : nullptr;
  const LetterSet* above = block + 1 < f.block_count() ? &f.blocks()[block + 1] : nullptr;

  if (m == 1 && above != nullptr && above->size() >= 3 && above->size() % 2 == 1 &&
      inversions_between(interval, *above) == 1) {
    return MatchableType::OneSplit;
  }
  if (one_merged_shape(below, interval)) return MatchableType::OneMerged;

  const int s = s_count(f, block);
  if (m >= 4 && s % 2 == 0) return MatchableType::TwoMerged;
  if (m >= 2 && s % 2 == 1 && inversions_between(interval, *above) == 1 &&
      !one_merged_shape(below, interval | *above)) {
    return MatchableType::TwoSplit;
  }
  return MatchableType::NotMatchable;
}

std::optional<IntervalDiagnosis> lowest_matchable(const BarredFace& f) {
  for (std::size_t i = 0; i < f.block_count(); ++i) {
    MatchableType t = classify_interval(f, i);
    if (t != MatchableType::NotMatchable) {
      return IntervalDiagnosis{i, f.start_rank(i), s_count(f, i), t};
    }
  }
  return std::nullopt;
}

std::vector<std::vector<int>> decreasing_runs(const Permutation& p) {
  auto word = p.word();
  std::vector<std::vector<int>> runs{{word[0]}};
  for (std::size_t i = 1; i < word.size(); ++i) {
    if (word[i - 1] < word[i]) runs.emplace_back();
    runs.back().push_back(word[i]);
  }
  return runs;
}

}  // namespace hcx

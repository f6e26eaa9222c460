#pragma once

// Sparse Markowitz-style elimination over a ring, pivoting only on units.
// Each pivot is a row operation sweep that clears its column; column
// operations are never needed because, once the pivot column is a single
// unit, clearing the pivot row does not touch any other entry. What is left
// when no unit pivots remain is handed back as a dense block.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "hcx/homology.hpp"

namespace hcx::detail {

class Overflow : public std::overflow_error {
 public:
  Overflow() : std::overflow_error("int64 overflow in sparse elimination") {}
};

struct CheckedIntRing {
  using Value = std::int64_t;
  static Value from_int64(std::int64_t v) { return v; }
  static bool is_zero(Value v) { return v == 0; }
  static bool is_unit(Value v) { return v == 1 || v == -1; }
  // Quotient a / u for a unit u.
  static Value div_unit(Value a, Value u) { return u == 1 ? a : neg(a); }
  static Value neg(Value a) {
    if (a == INT64_MIN) throw Overflow();
    return -a;
  }
  // a - f * b
  static Value sub_mul(Value a, Value f, Value b) {
    Value prod = 0, out = 0;
    if (__builtin_mul_overflow(f, b, &prod) || __builtin_sub_overflow(a, prod, &out)) throw Overflow();
    return out;
  }
};

struct BigIntRing {
  using Value = BigInt;
  static Value from_int64(std::int64_t v) { return Value(v); }
  static bool is_zero(const Value& v) { return v.is_zero(); }
  static bool is_unit(const Value& v) { return v == 1 || v == -1; }
  static Value div_unit(const Value& a, const Value& u) { return u == 1 ? a : Value(-a); }
  static Value sub_mul(const Value& a, const Value& f, const Value& b) { return a - f * b; }
};

class PrimeField {
 public:
  using Value = std::uint32_t;
  explicit PrimeField(std::uint32_t p) : p_(p) {}
  Value from_int64(std::int64_t v) const {
    auto r = static_cast<std::int64_t>(v % static_cast<std::int64_t>(p_));
    return static_cast<Value>(r < 0 ? r + p_ : r);
  }
  static bool is_zero(Value v) { return v == 0; }
  static bool is_unit(Value v) { return v != 0; }
  Value div_unit(Value a, Value u) const { return mul(a, inverse(u)); }
  Value sub_mul(Value a, Value f, Value b) const {
    std::uint64_t prod = (static_cast<std::uint64_t>(f) * b) % p_;
    return static_cast<Value>((a + p_ - prod) % p_);
  }

 private:
  Value mul(Value a, Value b) const { return static_cast<Value>((static_cast<std::uint64_t>(a) * b) % p_); }
  Value inverse(Value a) const {
    // Fermat: a^(p-2).
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e > 0) {
      if (e & 1U) result = (result * base) % p_;
      base = (base * base) % p_;
      e >>= 1U;
    }
    return static_cast<Value>(result);
  }
  std::uint32_t p_;
};

// Ring needs: Value, from_int64, is_zero, is_unit, div_unit, sub_mul.
template <typename Ring>
class SparseEliminator {
 public:
  using Value = typename Ring::Value;

  SparseEliminator(const SparseIntMatrix& m, Ring ring, const Deadline& deadline)
      : ring_(std::move(ring)),
        deadline_(deadline),
        rows_(m.rows),
        colRows_(m.cols),
        colCount_(m.cols, 0),
        colNoUnit_(m.cols, 0),
        rowActive_(m.rows, 1),
        colActive_(m.cols, 1),
        rowStamp_(m.rows, 0) {
    for (std::uint32_t c = 0; c < m.cols; ++c) {
      for (const auto& [r, v] : m.columns[c]) {
        Value value = ring_.from_int64(v);
        if (ring_.is_zero(value)) continue;
        rows_[r].push_back({c, std::move(value)});
        colRows_[c].push_back(r);
        ++colCount_[c];
      }
    }
    for (auto& row : rows_) {
      std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    }
    for (std::uint32_t c = 0; c < m.cols; ++c) {
      if (colCount_[c] > 0) queue_.insert({colCount_[c], c});
    }
  }

  // Eliminates unit pivots until none remain; returns how many were taken.
  std::size_t run() {
    std::size_t pivots = 0;
    while (!queue_.empty()) {
      if ((pivots & 255U) == 0 && deadline_.expired()) throw BudgetExceeded("homology time budget exceeded");
      const std::uint32_t c = queue_.begin()->second;
      const auto candidates = rows_with(c);
      std::uint32_t best = UINT32_MAX;
      for (std::uint32_t r : candidates) {
        const Value* v = find(r, c);
        if (v == nullptr || !ring_.is_unit(*v)) continue;
        if (best == UINT32_MAX || rows_[r].size() < rows_[best].size()) best = r;
      }
      if (best == UINT32_MAX) {
        queue_.erase({colCount_[c], c});
        colNoUnit_[c] = 1;
        continue;
      }
      pivot(best, c, candidates);
      ++pivots;
    }
    return pivots;
  }

  // Remaining non-zero block, rows x cols, after run().
  std::vector<std::vector<Value>> remainder() const {
    std::vector<std::uint32_t> cols;
    std::vector<std::uint32_t> colPos(colCount_.size(), UINT32_MAX);
    for (std::uint32_t c = 0; c < colCount_.size(); ++c) {
      if (colActive_[c] && colCount_[c] > 0) {
        colPos[c] = static_cast<std::uint32_t>(cols.size());
        cols.push_back(c);
      }
    }
    std::vector<std::vector<Value>> dense;
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (!rowActive_[r] || rows_[r].empty()) continue;
      std::vector<Value> line(cols.size(), ring_.from_int64(0));
      for (const auto& e : rows_[r]) line[colPos[e.col]] = e.val;
      dense.push_back(std::move(line));
    }
    return dense;
  }

 private:
  struct Entry {
    std::uint32_t col;
    Value val;
  };

  const Value* find(std::uint32_t r, std::uint32_t c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::uint32_t col) { return e.col < col; });
    return (it != row.end() && it->col == c) ? &it->val : nullptr;
  }

  // Active rows currently holding a non-zero in column c, deduplicated.
  std::vector<std::uint32_t> rows_with(std::uint32_t c) {
    ++stamp_;
    std::vector<std::uint32_t> out;
    auto& list = colRows_[c];
    for (std::uint32_t r : list) {
      if (!rowActive_[r] || rowStamp_[r] == stamp_) continue;
      rowStamp_[r] = stamp_;
      if (find(r, c) == nullptr) continue;
      out.push_back(r);
    }
    list = out;
    return out;
  }

  void set_count(std::uint32_t c, int count) {
    if (colActive_[c] && !colNoUnit_[c] && colCount_[c] > 0) queue_.erase({colCount_[c], c});
    colCount_[c] = count;
    colNoUnit_[c] = 0;
    if (colActive_[c] && colCount_[c] > 0) queue_.insert({colCount_[c], c});
  }

  void pivot(std::uint32_t pr, std::uint32_t pc, const std::vector<std::uint32_t>& rowsInCol) {
    const Value pivotValue = *find(pr, pc);
    for (std::uint32_t r : rowsInCol) {
      if (r == pr) continue;
      const Value factor = ring_.div_unit(*find(r, pc), pivotValue);
      eliminate(r, pr, factor);
    }
    // Retire the pivot row and column.
    rowActive_[pr] = 0;
    if (!colNoUnit_[pc] && colCount_[pc] > 0) queue_.erase({colCount_[pc], pc});
    colActive_[pc] = 0;
    for (const auto& e : rows_[pr]) {
      if (e.col != pc) set_count(e.col, colCount_[e.col] - 1);
    }
    rows_[pr].clear();
    rows_[pr].shrink_to_fit();
  }

  // row r -= factor * row p
  void eliminate(std::uint32_t r, std::uint32_t p, const Value& factor) {
    const auto& src = rows_[p];
    auto& dst = rows_[r];
    scratch_.clear();
    scratch_.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
      if (j == src.size() || (i < dst.size() && dst[i].col < src[j].col)) {
        scratch_.push_back(std::move(dst[i++]));
      } else if (i == dst.size() || src[j].col < dst[i].col) {
        const std::uint32_t c = src[j].col;
        scratch_.push_back({c, ring_.sub_mul(ring_.from_int64(0), factor, src[j].val)});
        colRows_[c].push_back(r);
        set_count(c, colCount_[c] + 1);
        ++j;
      } else {
        const std::uint32_t c = dst[i].col;
        Value v = ring_.sub_mul(dst[i].val, factor, src[j].val);
        if (ring_.is_zero(v)) {
          set_count(c, colCount_[c] - 1);
        } else {
          scratch_.push_back({c, std::move(v)});
          // A changed entry may have become a unit.
          if (colNoUnit_[c]) set_count(c, colCount_[c]);
        }
        ++i;
        ++j;
      }
    }
    dst.swap(scratch_);
  }

  Ring ring_;
  Deadline deadline_;
  std::vector<std::vector<Entry>> rows_;
  std::vector<std::vector<std::uint32_t>> colRows_;
  std::vector<int> colCount_;
  std::vector<char> colNoUnit_;
  std::vector<char> rowActive_;
  std::vector<char> colActive_;
  std::vector<std::uint64_t> rowStamp_;
  std::uint64_t stamp_ = 0;
  std::set<std::pair<int, std::uint32_t>> queue_;
  std::vector<Entry> scratch_;
};

}  // namespace hcx::detail

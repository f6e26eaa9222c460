#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "hcx/core.hpp"
#include "oracles.hpp"

namespace testing {

inline oracle::Blocks to_blocks(const hcx::BarredFace& f) {
  oracle::Blocks out;
  for (const auto& b : f.blocks()) out.push_back(b.elements());
  return out;
}

inline std::vector<int> core_of(const hcx::Permutation& p) { return {p.core().begin(), p.core().end()}; }

// Calls fn(core letters) for every permutation of 1..n.
template <typename Fn>
void for_each_permutation(int n, Fn fn) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  do {
    fn(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace testing

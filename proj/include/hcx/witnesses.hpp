#pragma once

// Free faces and the signed cycles through them that certify non-zero
// homology in the low half of the non-vanishing range.

#include <utility>
#include <vector>

#include "hcx/core.hpp"
#include "hcx/homology.hpp"

namespace hcx {

struct WitnessSpec {
  int n = 0;
  int k = 0;
  // Number of pair blocks {i, n-i+1} at the bottom; n = 2j + 3(k+1-j) + 1.
  int j = 0;
  BarredFace freeFace{1, {LetterSet{0, 1, 2}}};
  // Word positions swapped by each of the k+1 generators: the last two
  // letters of each of the first k+1 core blocks.
  std::vector<std::pair<std::size_t, std::size_t>> generators;
};

// 2(k+1)+1 <= n <= 3(k+1)+1.
bool witness_admissible(int n, int k);
std::vector<int> witness_dimensions(int n);

// Builds the free face for (n, k) and certifies its maximality by scanning
// every one-element extension; throws ValidationError out of range and
// std::logic_error if the scan finds a larger face.
WitnessSpec free_face_family(int n, int k);

// Sum over the 2^{k+1} generator subsets of sign * face(word with those
// positions swapped).
SignedChain cycle_witness(const WitnessSpec& spec);

// Cycle, maximality of the free face, unit coefficient on it, and 2^{k+1}
// distinct terms of dimension k.
CheckReport verify_witness(const WitnessSpec& spec, const SignedChain& z);

// Before summation: every codimension-one face arising from the terms'
// boundaries arises exactly twice, with opposite signs.
CheckReport check_pairwise_cancellation(const WitnessSpec& spec);

}  // namespace hcx

#include "hcx/witnesses.hpp"

#include <map>
#include <stdexcept>

#include "hcx/complex.hpp"

namespace hcx {

bool witness_admissible(int n, int k) {
  return k >= 0 && 2 * (k + 1) + 1 <= n && n <= 3 * (k + 1) + 1;
}

std::vector<int> witness_dimensions(int n) {
  std::vector<int> out;
  for (int k = 0; 2 * (k + 1) + 1 <= n; ++k) {
    if (witness_admissible(n, k)) out.push_back(k);
  }
  return out;
}

namespace {

// Core blocks of the free face. j pair blocks {i, n-i+1} first; the rest is
// either the middle singleton (j = k+1) or the triple pattern on the letters
// o+1..n-o with o = j:
//   o+1,o+3 | o+2,o+4,o+6 | o+5,o+7,o+9 | ... | o+3t+2,o+3t+4
std::vector<std::vector<int>> free_face_blocks(int n, int k, int j) {
  std::vector<std::vector<int>> blocks;
  for (int i = 1; i <= j; ++i) blocks.push_back({i, n - i + 1});
  if (j == k + 1) {
    blocks.push_back({(n + 1) / 2});
    return blocks;
  }
  const int o = j;
  const int t = k - j;
  blocks.push_back({o + 1, o + 3});
  for (int m = 1; m <= t; ++m) blocks.push_back({o + 3 * m - 1, o + 3 * m + 1, o + 3 * m + 3});
  blocks.push_back({o + 3 * t + 2, o + 3 * t + 4});
  return blocks;
}

}  // namespace

WitnessSpec free_face_family(int n, int k) {
  if (!witness_admissible(n, k)) {
    throw ValidationError("(n, k) = (" + std::to_string(n) + ", " + std::to_string(k) +
                          ") outside 2(k+1)+1 <= n <= 3(k+1)+1");
  }
  WitnessSpec spec;
  spec.n = n;
  spec.k = k;
  spec.j = 3 * k + 4 - n;

  const auto blocks = free_face_blocks(n, k, spec.j);
  std::vector<int> core;
  std::size_t position = 1;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    core.insert(core.end(), blocks[b].begin(), blocks[b].end());
    position += blocks[b].size();
    if (b < static_cast<std::size_t>(k) + 1) spec.generators.emplace_back(position - 2, position - 1);
  }
  spec.freeFace = face_from_perm(Permutation::from_core(core));
  if (spec.freeFace.dimension() != k) {
    throw std::logic_error("free face for (" + std::to_string(n) + ", " + std::to_string(k) + ") has dimension " +
                           std::to_string(spec.freeFace.dimension()));
  }
  if (!is_maximal_face(spec.freeFace)) {
    throw std::logic_error("constructed face " + spec.freeFace.to_core_string() + " is not free in Delta_" +
                           std::to_string(n));
  }
  return spec;
}

namespace {

// (term permutation, sign) for every subset of generators.
std::vector<std::pair<Permutation, int>> witness_terms(const WitnessSpec& spec) {
  const Permutation base = perm_from_face(spec.freeFace);
  const std::size_t g = spec.generators.size();
  std::vector<std::pair<Permutation, int>> terms;
  terms.reserve(std::size_t{1} << g);
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << g); ++subset) {
    Permutation p = base;
    int sign = 1;
    for (std::size_t i = 0; i < g; ++i) {
      if ((subset >> i) & 1U) {
        p = p.swap_positions(spec.generators[i].first, spec.generators[i].second);
        sign = -sign;
      }
    }
    terms.emplace_back(std::move(p), sign);
  }
  return terms;
}

}  // namespace

SignedChain cycle_witness(const WitnessSpec& spec) {
  SignedChain z;
  z.n = spec.n;
  z.dim = spec.k;
  for (const auto& [p, sign] : witness_terms(spec)) {
    const BarredFace f = face_from_perm(p);
    if (f.dimension() != spec.k) {
      throw std::logic_error("witness term " + f.to_core_string() + " has dimension " + std::to_string(f.dimension()));
    }
    z.add(p.lex_rank(), sign);
  }
  return z;
}

CheckReport verify_witness(const WitnessSpec& spec, const SignedChain& z) {
  CheckReport report("witness (" + std::to_string(spec.n) + ", " + std::to_string(spec.k) + ")");
  const std::size_t expectedTerms = std::size_t{1} << (spec.k + 1);
  ++report.checked;
  if (z.size() != expectedTerms) {
    report.fail(std::to_string(z.size()) + " distinct terms, expected " + std::to_string(expectedTerms));
  }
  for (const auto& [id, c] : z.coefficients) {
    ++report.checked;
    if (c != 1 && c != -1) report.fail("coefficient " + std::to_string(c) + " is not a unit");
    const BarredFace f = face_from_perm(Permutation::from_lex_rank(spec.n, id));
    if (f.dimension() != spec.k) report.fail("term " + f.to_core_string() + " has the wrong dimension");
  }
  ++report.checked;
  const SignedChain boundary = boundary_of_chain(z);
  if (!boundary.empty()) report.fail("boundary has " + std::to_string(boundary.size()) + " non-zero terms");
  ++report.checked;
  if (!is_maximal_face(spec.freeFace)) report.fail("free face " + spec.freeFace.to_core_string() + " is not maximal");
  ++report.checked;
  auto it = z.coefficients.find(perm_from_face(spec.freeFace).lex_rank());
  if (it == z.coefficients.end() || (it->second != 1 && it->second != -1)) {
    report.fail("free face does not appear with a unit coefficient");
  }
  return report;
}

CheckReport check_pairwise_cancellation(const WitnessSpec& spec) {
  CheckReport report("pairwise cancellation");
  std::map<FaceId, std::vector<int>> contributions;
  for (const auto& [p, sign] : witness_terms(spec)) {
    const BarredFace f = face_from_perm(p);
    for (std::size_t bar = 0; bar < f.bar_count(); ++bar) {
      contributions[perm_from_face(merge_blocks(f, bar)).lex_rank()].push_back(bar % 2 == 0 ? sign : -sign);
    }
  }
  for (const auto& [id, signs] : contributions) {
    ++report.checked;
    if (signs.size() != 2 || signs[0] + signs[1] != 0) {
      report.fail("face " + face_from_perm(Permutation::from_lex_rank(spec.n, id)).to_core_string() + " occurs " +
                  std::to_string(signs.size()) + " times without cancelling in pairs");
    }
  }
  return report;
}

}  // namespace hcx

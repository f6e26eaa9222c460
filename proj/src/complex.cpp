#include "hcx/complex.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace hcx {

void Budget::require_enumeration(int n) const {
  if (!unsafe && n > maxEnumerationN) {
    throw ResourceError("n = " + std::to_string(n) + " exceeds the enumeration ceiling " +
                        std::to_string(maxEnumerationN) + " (pass --unsafe-budget to override)");
  }
}

void Budget::require_homology(int n) const {
  if (!unsafe && n > maxHomologyN) {
    throw ResourceError("n = " + std::to_string(n) + " exceeds the homology ceiling " +
                        std::to_string(maxHomologyN) + " (pass --unsafe-budget to override)");
  }
}

void Budget::require_shelling(int n) const {
  if (!unsafe && n > maxShellingN) {
    throw ResourceError("n = " + std::to_string(n) + " exceeds the shelling-check ceiling " +
                        std::to_string(maxShellingN));
  }
}

FaceTable FaceTable::enumerate(int n, const Budget& budget) {
  if (n < 1) throw ValidationError("n must be positive");
  budget.require_enumeration(n);
  std::vector<BarredFace> faces;
  std::vector<int> core(static_cast<std::size_t>(n));
  std::iota(core.begin(), core.end(), 1);
  do {
    faces.push_back(face_from_perm(Permutation::from_core(core)));
  } while (std::next_permutation(core.begin(), core.end()));
  FaceTable table;
  table.n_ = n;
  table.faces_ = std::move(faces);
  table.index();
  return table;
}

FaceTable FaceTable::from_faces(int n, std::vector<BarredFace> faces, const Budget& budget) {
  if (n < 1) throw ValidationError("n must be positive");
  budget.require_enumeration(n);
  FaceId expected = 1;
  for (int k = 2; k <= n; ++k) expected *= static_cast<FaceId>(k);
  if (faces.size() != expected) throw ValidationError("face list does not have n! entries");
  for (FaceId id = 0; id < faces.size(); ++id) {
    if (faces[id].n() != n || perm_from_face(faces[id]).lex_rank() != id) {
      throw ValidationError("face " + std::to_string(id) + " is out of lexicographic order");
    }
  }
  FaceTable table;
  table.n_ = n;
  table.faces_ = std::move(faces);
  table.index();
  return table;
}

void FaceTable::index() {
  byDimension_ = GradedVector<std::vector<FaceId>>(n_ - 2 < -1 ? -1 : n_ - 2);
  localIndex_.resize(faces_.size());
  for (FaceId id = 0; id < faces_.size(); ++id) {
    auto& bucket = byDimension_[faces_[id].dimension()];
    localIndex_[id] = static_cast<std::uint32_t>(bucket.size());
    bucket.push_back(id);
  }
}

FaceId FaceTable::id_of(const Permutation& p) const {
  if (p.n() != n_) throw ValidationError("permutation size does not match table");
  return p.lex_rank();
}

FaceId FaceTable::id_of(const BarredFace& f) const {
  if (f.n() != n_) throw ValidationError("face size does not match table");
  return perm_from_face(f).lex_rank();
}

std::optional<FaceId> FaceTable::find_chain(std::span<const std::uint64_t> chain) const {
  auto f = face_from_chain(n_, chain);
  if (!f) return std::nullopt;
  return id_of(*f);
}

std::span<const FaceId> FaceTable::faces_of_dimension(int d) const {
  if (!byDimension_.has(d)) return {};
  return byDimension_[d];
}

std::vector<BarredFace> lower_covers(const BarredFace& f) {
  std::vector<BarredFace> out;
  out.reserve(f.bar_count());
  for (std::size_t bar = 0; bar < f.bar_count(); ++bar) out.push_back(merge_blocks(f, bar));
  return out;
}

std::vector<CoverEdge> covers_down(const FaceTable& table, FaceId id) {
  const BarredFace& f = table.face(id);
  std::vector<CoverEdge> out;
  out.reserve(f.bar_count());
  for (std::size_t bar = 0; bar < f.bar_count(); ++bar) {
    out.push_back(CoverEdge{id, table.id_of(merge_blocks(f, bar)), bar});
  }
  return out;
}

namespace {

std::string chain_key(std::span<const std::uint64_t> prefixes, std::uint32_t positions) {
  std::string key;
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    if ((positions >> i) & 1U) key.append(reinterpret_cast<const char*>(&prefixes[i]), sizeof(std::uint64_t));
  }
  return key;
}

}  // namespace

ShellingReport lex_shelling_check(int n, const Budget& budget) {
  if (n < 1) throw ValidationError("n must be positive");
  budget.require_shelling(n);
  ShellingReport report;
  report.n = n;
  report.minimalFaceHistogram = GradedVector<std::uint64_t>(n - 2 < -1 ? -1 : n - 2);

  // Facet vertices: the n-1 proper prefixes of the labelling permutation.
  const std::size_t vertices = static_cast<std::size_t>(n) - 1;
  const std::uint32_t subsets = 1U << vertices;
  std::unordered_set<std::string> seen;
  std::unordered_set<std::string> minimalFaces;
  std::vector<std::vector<std::uint64_t>> minimalChains;

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::uint64_t> prefixes(vertices);
  std::vector<char> isNew(subsets);
  std::vector<std::string> keys(subsets);
  do {
    ++report.facets;
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < vertices; ++i) {
      acc |= std::uint64_t{1} << perm[i];
      prefixes[i] = acc;
    }
    for (std::uint32_t s = 0; s < subsets; ++s) {
      keys[s] = chain_key(prefixes, s);
      isNew[s] = seen.count(keys[s]) == 0;
    }
    for (std::uint32_t s = 0; s < subsets; ++s) seen.insert(keys[s]);

    // Minimal elements of the family of new faces.
    std::vector<std::uint32_t> minimal;
    for (std::uint32_t s = 0; s < subsets; ++s) {
      if (!isNew[s]) continue;
      bool hasNewSubface = false;
      for (std::uint32_t t = (s - 1) & s; t != s; t = (t - 1) & s) {
        if (isNew[t]) {
          hasNewSubface = true;
          break;
        }
        if (t == 0) break;
      }
      if (!hasNewSubface) minimal.push_back(s);
    }

    std::uint32_t descents = 0;
    for (std::size_t i = 0; i < vertices; ++i) {
      if (perm[i] > perm[i + 1]) descents |= 1U << i;
    }
    std::string label;
    for (int x : perm) label += std::to_string(x) + (n > 9 ? "," : "");
    if (minimal.size() != 1) {
      report.ok = false;
      report.violations.push_back("facet " + label + ": " + std::to_string(minimal.size()) + " minimal new faces");
      continue;
    }
    if (minimal[0] != descents) {
      report.ok = false;
      report.violations.push_back("facet " + label + ": minimal new face is not the descent chain");
    }
    const std::uint32_t sigma = minimal[0];
    minimalFaces.insert(keys[sigma]);
    std::vector<std::uint64_t> chain;
    for (std::size_t i = 0; i < vertices; ++i) {
      if ((sigma >> i) & 1U) chain.push_back(prefixes[i]);
    }
    report.minimalFaceHistogram[static_cast<int>(chain.size()) - 1] += 1;
    minimalChains.push_back(std::move(chain));
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Closure: deleting any vertex of a minimal face gives a minimal face.
  for (const auto& chain : minimalChains) {
    for (std::size_t drop = 0; drop < chain.size(); ++drop) {
      std::string key;
      for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i != drop) key.append(reinterpret_cast<const char*>(&chain[i]), sizeof(std::uint64_t));
      }
      if (minimalFaces.count(key) == 0) {
        report.ok = false;
        report.violations.push_back("minimal faces are not closed under taking subfaces");
        return report;
      }
    }
  }
  return report;
}

GradedVector<std::uint64_t> f_vector(const FaceTable& table) {
  GradedVector<std::uint64_t> f(table.max_dimension() < -1 ? -1 : table.max_dimension());
  for (const auto& face : table.faces()) f[face.dimension()] += 1;
  return f;
}

namespace {

bool chain_contains(std::span<const std::uint64_t> big, std::span<const std::uint64_t> small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end(), [](std::uint64_t a, std::uint64_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
}

}  // namespace

bool is_free_face(const FaceTable& table, const BarredFace& f) {
  const auto chain = f.chain();
  for (FaceId id : table.faces_of_dimension(f.dimension() + 1)) {
    if (chain_contains(table.face(id).chain(), chain)) return false;
  }
  return true;
}

bool is_maximal_face(const BarredFace& f) {
  const int n = f.n();
  const LetterSet sentinels{0, n + 1};
  for (std::size_t i = 0; i < f.block_count(); ++i) {
    const LetterSet block = f.block(i);
    const std::uint64_t core = block.bits() & ~sentinels.bits();
    // Lower part takes the core letters in `sub` plus 0 when present.
    for (std::uint64_t sub = (core - 1) & core; sub != 0; sub = (sub - 1) & core) {
      LetterSet lower(sub | (block.bits() & LetterSet{0}.bits()));
      LetterSet upper(block.bits() & ~lower.bits());
      if (lower.max() < upper.min()) continue;
      if (i > 0 && f.block(i - 1).max() < lower.min()) continue;
      if (i + 1 < f.block_count() && upper.max() < f.block(i + 1).min()) continue;
      return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> eulerian_row(int n) {
  if (n < 1) throw ValidationError("n must be positive");
  std::vector<std::uint64_t> row{1};
  for (int m = 2; m <= n; ++m) {
    std::vector<std::uint64_t> next(static_cast<std::size_t>(m), 0);
    for (int k = 0; k < m; ++k) {
      std::uint64_t stay = k < m - 1 ? static_cast<std::uint64_t>(k + 1) * row[static_cast<std::size_t>(k)] : 0;
      std::uint64_t grow = k > 0 ? static_cast<std::uint64_t>(m - k) * row[static_cast<std::size_t>(k) - 1] : 0;
      next[static_cast<std::size_t>(k)] = stay + grow;
    }
    row = std::move(next);
  }
  return row;
}

std::int64_t alternating_eulerian(int n) {
  std::int64_t sum = 0;
  const auto row = eulerian_row(n);
  for (std::size_t k = 0; k < row.size(); ++k) {
    const auto term = static_cast<std::int64_t>(row[k]);
    sum += (k % 2 == 1) ? term : -term;
  }
  return sum;
}

std::int64_t euler_characteristic(const FaceTable& table) {
  const auto f = f_vector(table);
  std::int64_t chi = 0;
  for (int d = -1; d <= f.max_dim(); ++d) {
    const auto term = static_cast<std::int64_t>(f[d]);
    chi += (d % 2 == 0) ? term : -term;
  }
  return chi;
}

}  // namespace hcx

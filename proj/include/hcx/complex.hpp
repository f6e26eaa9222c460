#pragma once

// The h-complex Delta_n as a table of barred faces, one per permutation,
// plus the face-poset queries built on it.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hcx/core.hpp"
#include "hcx/graded.hpp"

namespace hcx {

// Size ceilings. Enumeration, matching and digraph work scale like n!;
// exact homology and the definitional shelling check grow much faster.
struct Budget {
  int maxEnumerationN = 9;
  int maxHomologyN = 8;
  int maxShellingN = 8;
  bool unsafe = false;

  void require_enumeration(int n) const;
  void require_homology(int n) const;
  void require_shelling(int n) const;
};

struct CoverEdge {
  FaceId upper = 0;
  FaceId lower = 0;
  std::size_t barIndex = 0;

  friend bool operator==(const CoverEdge&, const CoverEdge&) = default;
};

// All n! faces of Delta_n. Face ids are lexicographic ranks of the
// underlying permutations, so `id_of` needs no lookup structure.
class FaceTable {
 public:
  static FaceTable enumerate(int n, const Budget& budget = {});
  // Rebuilds a table from stored faces; they must be exactly the faces of
  // Delta_n in lexicographic order of their permutations.
  static FaceTable from_faces(int n, std::vector<BarredFace> faces, const Budget& budget = {});

  int n() const { return n_; }
  std::size_t size() const { return faces_.size(); }
  int max_dimension() const { return n_ - 2; }

  const BarredFace& face(FaceId id) const { return faces_.at(id); }
  std::span<const BarredFace> faces() const { return faces_; }
  Permutation perm(FaceId id) const { return perm_from_face(face(id)); }

  FaceId id_of(const Permutation& p) const;
  FaceId id_of(const BarredFace& f) const;
  // Face whose chain is exactly `chain`, if it belongs to Delta_n.
  std::optional<FaceId> find_chain(std::span<const std::uint64_t> chain) const;

  // Faces of dimension d in increasing id order, and each face's position in
  // that list (the row/column index used by boundary matrices).
  std::span<const FaceId> faces_of_dimension(int d) const;
  std::size_t local_index(FaceId id) const { return localIndex_.at(id); }

 private:
  void index();

  int n_ = 0;
  std::vector<BarredFace> faces_;
  GradedVector<std::vector<FaceId>> byDimension_;
  std::vector<std::uint32_t> localIndex_;
};

inline FaceTable enumerate_faces(int n, const Budget& budget = {}) { return FaceTable::enumerate(n, budget); }

// Codimension-one subfaces, one per bar, in bar order.
std::vector<BarredFace> lower_covers(const BarredFace& f);
std::vector<CoverEdge> covers_down(const FaceTable& table, FaceId id);

struct ShellingReport {
  int n = 0;
  bool ok = true;
  std::size_t facets = 0;
  GradedVector<std::uint64_t> minimalFaceHistogram;
  std::vector<std::string> violations;
};

// Walks the facets of the order complex of the truncated Boolean algebra in
// lexicographic order of their labelling permutations, recomputes each
// facet's unique minimal new face from the definition, and checks that it is
// the descent chain and that the minimal faces are closed under subfaces.
ShellingReport lex_shelling_check(int n, const Budget& budget = {});

GradedVector<std::uint64_t> f_vector(const FaceTable& table);

// No face of the table properly contains f (scan over the table).
bool is_free_face(const FaceTable& table, const BarredFace& f);
// Same question answered locally, by trying every one-element extension of
// f's chain. Works for any n.
bool is_maximal_face(const BarredFace& f);

// A_{n,k} for k = 0..n-1 (permutations with k descents), by recurrence.
std::vector<std::uint64_t> eulerian_row(int n);
// sum_k (-1)^(k-1) A_{n,k}: the reduced Euler characteristic of Delta_n.
std::int64_t alternating_eulerian(int n);
std::int64_t euler_characteristic(const FaceTable& table);

}  // namespace hcx

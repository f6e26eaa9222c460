#pragma once

// The greedy lowest-interval matching on the face poset of Delta_n, and its
// dual obtained by exchanging the roles of ascents and descents.

#include <limits>
#include <optional>
#include <vector>

#include "hcx/complex.hpp"
#include "hcx/core.hpp"
#include "hcx/graded.hpp"

namespace hcx {

inline constexpr FaceId kUnmatched = std::numeric_limits<FaceId>::max();

// Partner of f under the primal matching, or nothing if f is critical.
std::optional<BarredFace> partner(const BarredFace& f);

// Dual matching by value complementation: complement the permutation, take
// the primal partner, complement back.
std::optional<BarredFace> dual_partner(const BarredFace& f);

// Diagnosis driving the dual matching: the primal diagnosis of the
// complemented face. Ranks are positions and survive complementation.
std::optional<IntervalDiagnosis> dual_lowest_matchable(const BarredFace& f);

struct MatchingMap {
  int n = 0;
  bool dual = false;
  std::vector<FaceId> pairs;
  std::vector<std::optional<IntervalDiagnosis>> diagnosis;

  bool matched(FaceId id) const { return pairs.at(id) != kUnmatched; }
  std::size_t pair_count() const;
  std::size_t critical_count() const;
};

MatchingMap build_matching(const FaceTable& table, bool dual);

// Involution, cover relation, one adjacent transposition per pair, shared
// lowest-matchable rank and paired types for every matched face.
CheckReport verify_well_defined(const FaceTable& table, const MatchingMap& map);

GradedVector<std::vector<FaceId>> critical_faces(const FaceTable& table, const MatchingMap& map);

// Primal critical faces have all blocks of size <= 3; dual critical faces
// have all decreasing runs of size <= 3.
CheckReport check_critical_shape(const FaceTable& table, const MatchingMap& map);

}  // namespace hcx

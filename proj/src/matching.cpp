#include "hcx/matching.hpp"

#include <algorithm>
#include <cstdlib>

namespace hcx {

std::optional<BarredFace> partner(const BarredFace& f) {
  const auto diag = lowest_matchable(f);
  if (!diag) return std::nullopt;
  switch (diag->type) {
    case MatchableType::OneSplit:
    case MatchableType::TwoSplit:
      return merge_blocks(f, diag->blockIndex);
    case MatchableType::OneMerged:
      return split_block(f, diag->blockIndex, SplitMode::Singleton);
    case MatchableType::TwoMerged:
      return split_block(f, diag->blockIndex, SplitMode::Pair);
    case MatchableType::NotMatchable:
      break;
  }
  return std::nullopt;
}

std::optional<BarredFace> dual_partner(const BarredFace& f) {
  auto p = partner(complement_face(f));
  if (!p) return std::nullopt;
  return complement_face(*p);
}

std::optional<IntervalDiagnosis> dual_lowest_matchable(const BarredFace& f) {
  return lowest_matchable(complement_face(f));
}

std::size_t MatchingMap::pair_count() const {
  return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [](FaceId p) { return p != kUnmatched; })) /
         2;
}

std::size_t MatchingMap::critical_count() const {
  return static_cast<std::size_t>(std::count(pairs.begin(), pairs.end(), kUnmatched));
}

MatchingMap build_matching(const FaceTable& table, bool dual) {
  MatchingMap map;
  map.n = table.n();
  map.dual = dual;
  map.pairs.assign(table.size(), kUnmatched);
  map.diagnosis.resize(table.size());
  for (FaceId id = 0; id < table.size(); ++id) {
    const BarredFace& f = table.face(id);
    map.diagnosis[id] = dual ? dual_lowest_matchable(f) : lowest_matchable(f);
    if (!map.diagnosis[id]) continue;
    auto p = dual ? dual_partner(f) : partner(f);
    if (p) map.pairs[id] = table.id_of(*p);
  }
  return map;
}

namespace {

// Positions where two words differ; a single adjacent transposition leaves
// exactly two neighbouring positions.
bool differ_by_adjacent_transposition(const Permutation& a, const Permutation& b) {
  std::vector<std::size_t> diff;
  for (std::size_t i = 0; i < a.word().size(); ++i) {
    if (a[i] != b[i]) diff.push_back(i);
  }
  return diff.size() == 2 && diff[1] == diff[0] + 1 && a[diff[0]] == b[diff[1]] && a[diff[1]] == b[diff[0]];
}

}  // namespace

CheckReport verify_well_defined(const FaceTable& table, const MatchingMap& map) {
  CheckReport report(map.dual ? "dual matching" : "matching");
  if (map.pairs.size() != table.size()) {
    report.fail("map size does not match table");
    return report;
  }
  for (FaceId c = 0; c < table.size(); ++c) {
    ++report.checked;
    const BarredFace& fc = table.face(c);
    const auto& diagC = map.diagnosis[c];
    const FaceId d = map.pairs[c];
    if (d == kUnmatched) {
      if (diagC) report.fail(fc.to_core_string() + ": has a matchable interval but no partner");
      continue;
    }
    if (!diagC) {
      report.fail(fc.to_core_string() + ": matched without a matchable interval");
      continue;
    }
    if (map.pairs[d] != c) {
      report.fail(fc.to_core_string() + ": matching is not an involution");
      continue;
    }
    const BarredFace& fd = table.face(d);
    const bool cUpper = fc.dimension() == fd.dimension() + 1;
    const FaceId lowerId = cUpper ? d : c;
    if (std::abs(fc.dimension() - fd.dimension()) != 1) {
      report.fail(fc.to_core_string() + ": partner is not a cover");
      continue;
    }
    const auto covers = covers_down(table, cUpper ? c : d);
    if (std::none_of(covers.begin(), covers.end(), [&](const CoverEdge& e) { return e.lower == lowerId; })) {
      report.fail(fc.to_core_string() + ": partner is not a cover");
      continue;
    }
    const Permutation pc = table.perm(c), pd = table.perm(d);
    if (!differ_by_adjacent_transposition(pc, pd)) {
      report.fail(fc.to_core_string() + ": partner differs by more than one adjacent transposition");
    }
    const auto invC = pc.inversion_count(), invD = pd.inversion_count();
    if ((invC > invD ? invC - invD : invD - invC) != 1) {
      report.fail(fc.to_core_string() + ": inversion counts differ by more than one");
    }
    const auto& diagD = map.diagnosis[d];
    if (!diagD) {
      report.fail(fc.to_core_string() + ": partner has no matchable interval");
      continue;
    }
    if (diagD->startRank != diagC->startRank) {
      report.fail(fc.to_core_string() + ": partner's lowest matchable interval starts at rank " +
                  std::to_string(diagD->startRank) + " instead of " + std::to_string(diagC->startRank));
    }
    if (diagD->type != paired_type(diagC->type)) {
      report.fail(fc.to_core_string() + ": type " + std::string(to_string(diagC->type)) + " paired with " +
                  std::string(to_string(diagD->type)));
    }
  }
  return report;
}

GradedVector<std::vector<FaceId>> critical_faces(const FaceTable& table, const MatchingMap& map) {
  GradedVector<std::vector<FaceId>> out(table.max_dimension() < -1 ? -1 : table.max_dimension());
  for (FaceId id = 0; id < table.size(); ++id) {
    if (!map.matched(id)) out[table.face(id).dimension()].push_back(id);
  }
  return out;
}

CheckReport check_critical_shape(const FaceTable& table, const MatchingMap& map) {
  CheckReport report(map.dual ? "dual critical shape" : "critical shape");
  for (FaceId id = 0; id < table.size(); ++id) {
    if (map.matched(id)) continue;
    ++report.checked;
    const BarredFace& f = table.face(id);
    if (map.dual) {
      const auto runs = decreasing_runs(table.perm(id));
      for (const auto& run : runs) {
        if (run.size() > 3) {
          report.fail(f.to_core_string() + ": critical with a decreasing run of length " + std::to_string(run.size()));
          break;
        }
      }
    } else {
      for (const auto& b : f.blocks()) {
        if (b.size() > 3) {
          report.fail(f.to_core_string() + ": critical with a block of size " + std::to_string(b.size()));
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace hcx

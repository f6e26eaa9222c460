#pragma once

#include <cstdint>
#include <vector>

#include "hcx/complex.hpp"
#include "hcx/graded.hpp"
#include "hcx/homology.hpp"
#include "hcx/matching.hpp"

namespace hcx {

struct Arc {
  FaceId from = 0;
  FaceId to = 0;
  bool matched = false;
};

// Hasse diagram of the face poset with matched edges pointing up and all
// other edges pointing down.
struct MorseDigraph {
  std::size_t nodeCount = 0;
  std::vector<Arc> arcs;
};

MorseDigraph build_digraph(const FaceTable& table, const MatchingMap& map);

// Either a topological order of all nodes or a directed cycle.
struct AcyclicityCertificate {
  std::vector<FaceId> topologicalOrder;
  std::vector<FaceId> cycleWitness;

  bool acyclic() const { return cycleWitness.empty(); }
};

AcyclicityCertificate check_acyclic(const MorseDigraph& g);

// Linear-time re-check: an order must be a permutation of the nodes with
// every arc pointing forward; a cycle must close up along existing arcs.
bool verify_certificate(const MorseDigraph& g, const AcyclicityCertificate& cert);

// FNV-1a over the emitted order (or the cycle), for persisting and comparing
// certificates.
std::uint64_t certificate_digest(const AcyclicityCertificate& cert);

struct MorseNumbers {
  int n = 0;
  bool dual = false;
  GradedVector<std::uint64_t> m;
};

MorseNumbers morse_numbers(const FaceTable& table, const MatchingMap& map);

// Primal: m_i = 0 whenever 3i + 4 < n. Dual: m_i = 0 whenever 3i > 2n - 5.
CheckReport check_thresholds(const MorseNumbers& mn);

// Reduced Betti numbers bounded by critical-cell counts, dimension by
// dimension from -1 up.
CheckReport morse_inequalities(const MorseNumbers& mn, const BettiTable& betti);

}  // namespace hcx

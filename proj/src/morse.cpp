#include "hcx/morse.hpp"

#include <algorithm>

namespace hcx {

MorseDigraph build_digraph(const FaceTable& table, const MatchingMap& map) {
  MorseDigraph g;
  g.nodeCount = table.size();
  for (FaceId upper = 0; upper < table.size(); ++upper) {
    for (const CoverEdge& e : covers_down(table, upper)) {
      const bool matched = map.pairs[upper] == e.lower;
      if (matched && map.pairs[e.lower] != upper) throw std::logic_error("matching is not an involution");
      g.arcs.push_back(matched ? Arc{e.lower, upper, true} : Arc{upper, e.lower, false});
    }
  }
  // Every matched pair must have shown up as a cover.
  std::size_t matchedArcs = 0;
  for (const Arc& a : g.arcs) matchedArcs += a.matched ? 1 : 0;
  if (matchedArcs != map.pair_count()) throw std::logic_error("matched pair is not a cover relation");
  return g;
}

namespace {

struct Adjacency {
  std::vector<std::size_t> offset;
  std::vector<FaceId> target;
};

Adjacency build_adjacency(const MorseDigraph& g, bool reverse) {
  Adjacency adj;
  adj.offset.assign(g.nodeCount + 1, 0);
  for (const Arc& a : g.arcs) ++adj.offset[(reverse ? a.to : a.from) + 1];
  for (std::size_t i = 0; i < g.nodeCount; ++i) adj.offset[i + 1] += adj.offset[i];
  adj.target.resize(g.arcs.size());
  std::vector<std::size_t> fill(adj.offset.begin(), adj.offset.end() - 1);
  for (const Arc& a : g.arcs) adj.target[fill[reverse ? a.to : a.from]++] = reverse ? a.from : a.to;
  return adj;
}

}  // namespace

AcyclicityCertificate check_acyclic(const MorseDigraph& g) {
  const Adjacency out = build_adjacency(g, false);
  std::vector<std::size_t> indegree(g.nodeCount, 0);
  for (const Arc& a : g.arcs) ++indegree[a.to];

  AcyclicityCertificate cert;
  std::vector<FaceId> stack;
  for (FaceId v = 0; v < g.nodeCount; ++v) {
    if (indegree[v] == 0) stack.push_back(v);
  }
  while (!stack.empty()) {
    const FaceId v = stack.back();
    stack.pop_back();
    cert.topologicalOrder.push_back(v);
    for (std::size_t k = out.offset[v]; k < out.offset[v + 1]; ++k) {
      if (--indegree[out.target[k]] == 0) stack.push_back(out.target[k]);
    }
  }
  if (cert.topologicalOrder.size() == g.nodeCount) return cert;

  // Every node left over still has a predecessor among the leftovers; walk
  // predecessors until a node repeats.
  const Adjacency in = build_adjacency(g, true);
  std::vector<char> remaining(g.nodeCount, 0);
  FaceId start = 0;
  for (FaceId v = 0; v < g.nodeCount; ++v) {
    if (indegree[v] > 0) {
      remaining[v] = 1;
      start = v;
    }
  }
  std::vector<std::size_t> seenAt(g.nodeCount, SIZE_MAX);
  std::vector<FaceId> walk;
  FaceId v = start;
  while (seenAt[v] == SIZE_MAX) {
    seenAt[v] = walk.size();
    walk.push_back(v);
    for (std::size_t k = in.offset[v]; k < in.offset[v + 1]; ++k) {
      if (remaining[in.target[k]]) {
        v = in.target[k];
        break;
      }
    }
  }
  // The walk follows arcs backwards; reverse the closed part.
  cert.cycleWitness.assign(walk.begin() + static_cast<std::ptrdiff_t>(seenAt[v]), walk.end());
  std::reverse(cert.cycleWitness.begin(), cert.cycleWitness.end());
  cert.topologicalOrder.clear();
  return cert;
}

bool verify_certificate(const MorseDigraph& g, const AcyclicityCertificate& cert) {
  if (cert.acyclic()) {
    if (cert.topologicalOrder.size() != g.nodeCount) return false;
    std::vector<std::size_t> position(g.nodeCount, SIZE_MAX);
    for (std::size_t i = 0; i < cert.topologicalOrder.size(); ++i) {
      const FaceId v = cert.topologicalOrder[i];
      if (v >= g.nodeCount || position[v] != SIZE_MAX) return false;
      position[v] = i;
    }
    return std::all_of(g.arcs.begin(), g.arcs.end(),
                       [&](const Arc& a) { return position[a.from] < position[a.to]; });
  }
  const auto& cycle = cert.cycleWitness;
  const Adjacency out = build_adjacency(g, false);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const FaceId from = cycle[i], to = cycle[(i + 1) % cycle.size()];
    if (from >= g.nodeCount) return false;
    auto first = out.target.begin() + static_cast<std::ptrdiff_t>(out.offset[from]);
    auto last = out.target.begin() + static_cast<std::ptrdiff_t>(out.offset[from + 1]);
    if (std::find(first, last, to) == last) return false;
  }
  return true;
}

std::uint64_t certificate_digest(const AcyclicityCertificate& cert) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFFU;
      h *= 1099511628211ULL;
    }
  };
  mix(cert.acyclic() ? 1 : 0);
  for (FaceId v : cert.acyclic() ? cert.topologicalOrder : cert.cycleWitness) mix(v);
  return h;
}

MorseNumbers morse_numbers(const FaceTable& table, const MatchingMap& map) {
  MorseNumbers mn;
  mn.n = table.n();
  mn.dual = map.dual;
  mn.m = GradedVector<std::uint64_t>(table.max_dimension() < -1 ? -1 : table.max_dimension());
  for (FaceId id = 0; id < table.size(); ++id) {
    if (!map.matched(id)) mn.m[table.face(id).dimension()] += 1;
  }
  return mn;
}

CheckReport check_thresholds(const MorseNumbers& mn) {
  CheckReport report(mn.dual ? "dual thresholds" : "thresholds");
  for (int i = -1; i <= mn.m.max_dim(); ++i) {
    const bool mustVanish = mn.dual ? 3 * i > 2 * mn.n - 5 : 3 * i + 4 < mn.n;
    if (!mustVanish) continue;
    ++report.checked;
    if (mn.m[i] != 0) report.fail("m_" + std::to_string(i) + " = " + std::to_string(mn.m[i]) + ", expected 0");
  }
  return report;
}

CheckReport morse_inequalities(const MorseNumbers& mn, const BettiTable& betti) {
  CheckReport report(mn.dual ? "dual Morse inequalities" : "Morse inequalities");
  if (mn.n != betti.n) {
    report.fail("Morse numbers and Betti table are for different n");
    return report;
  }
  for (int i = -1; i <= betti.betti.max_dim(); ++i) {
    ++report.checked;
    if (betti.betti[i] > mn.m.get_or(i)) {
      report.fail("beta_" + std::to_string(i) + " = " + std::to_string(betti.betti[i]) + " exceeds m_" +
                  std::to_string(i) + " = " + std::to_string(mn.m.get_or(i)));
    }
  }
  return report;
}

}  // namespace hcx

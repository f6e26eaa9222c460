#include "hcx/serialize.hpp"

#include <cstdio>
#include <string>

namespace hcx {

namespace {

std::string big_to_string(const BigInt& v) { return v.convert_to<std::string>(); }

const Json& field(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

}  // namespace

Json blocks_json(const BarredFace& f) {
  Json out = Json::array();
  for (const auto& b : f.blocks()) out.push_back(b.elements());
  return out;
}

Json faces_json(const FaceTable& table) {
  Json faces = Json::array();
  for (FaceId id = 0; id < table.size(); ++id) {
    const BarredFace& f = table.face(id);
    faces.push_back(Json{{"id", id}, {"perm", table.perm(id).to_string()}, {"blocks", blocks_json(f)},
                         {"dim", f.dimension()}});
  }
  return Json{{"n", table.n()}, {"faces", std::move(faces)}};
}

FaceTable faces_from_json(const Json& doc, const Budget& budget) {
  const int n = field(doc, "n").get<int>();
  std::vector<BarredFace> faces;
  for (const auto& entry : field(doc, "faces")) {
    std::vector<LetterSet> blocks;
    for (const auto& b : entry.at("blocks")) {
      LetterSet s;
      for (int x : b.get<std::vector<int>>()) {
        if (x < 0 || x > n + 1) throw ValidationError("letter out of range");
        s = s.with(x);
      }
      blocks.push_back(s);
    }
    faces.emplace_back(n, std::move(blocks));
  }
  return FaceTable::from_faces(n, std::move(faces), budget);
}

Json matching_json(const MatchingMap& map) {
  Json pairs = Json::array(), critical = Json::array();
  for (FaceId id = 0; id < map.pairs.size(); ++id) {
    if (!map.matched(id)) {
      critical.push_back(id);
    } else if (id < map.pairs[id]) {
      pairs.push_back(Json::array({id, map.pairs[id]}));
    }
  }
  return Json{{"n", map.n}, {"dual", map.dual}, {"pairs", std::move(pairs)}, {"critical", std::move(critical)}};
}

MatchingMap matching_from_json(const Json& doc, const FaceTable& table) {
  MatchingMap map;
  map.n = field(doc, "n").get<int>();
  map.dual = field(doc, "dual").get<bool>();
  if (map.n != table.n()) throw ValidationError("stored matching is for a different n");
  map.pairs.assign(table.size(), kUnmatched);
  for (const auto& p : field(doc, "pairs")) {
    const auto a = p.at(0).get<FaceId>(), b = p.at(1).get<FaceId>();
    if (a >= table.size() || b >= table.size() || map.pairs[a] != kUnmatched || map.pairs[b] != kUnmatched) {
      throw ValidationError("stored matching is not an involution");
    }
    map.pairs[a] = b;
    map.pairs[b] = a;
  }
  std::size_t critical = 0;
  for (const auto& c : field(doc, "critical")) {
    const auto id = c.get<FaceId>();
    if (id >= table.size() || map.pairs[id] != kUnmatched) throw ValidationError("stored critical face is matched");
    ++critical;
  }
  if (critical != map.critical_count()) throw ValidationError("stored critical list is incomplete");
  map.diagnosis.reserve(table.size());
  for (const auto& f : table.faces()) map.diagnosis.push_back(map.dual ? dual_lowest_matchable(f) : lowest_matchable(f));
  return map;
}

Json morse_json(const MorseNumbers& mn, const AcyclicityCertificate& cert) {
  Json m = Json::object();
  for (int d = -1; d <= mn.m.max_dim(); ++d) m[std::to_string(d)] = mn.m[d];
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(certificate_digest(cert)));
  return Json{{"n", mn.n}, {"dual", mn.dual}, {"m", std::move(m)}, {"acyclic", cert.acyclic()},
              {"certificateDigest", digest}};
}

Json certificate_json(const AcyclicityCertificate& cert) {
  return Json{{"acyclic", cert.acyclic()}, {"order", cert.topologicalOrder}, {"cycle", cert.cycleWitness}};
}

AcyclicityCertificate certificate_from_json(const Json& doc) {
  AcyclicityCertificate cert;
  cert.topologicalOrder = field(doc, "order").get<std::vector<FaceId>>();
  cert.cycleWitness = field(doc, "cycle").get<std::vector<FaceId>>();
  if (field(doc, "acyclic").get<bool>() != cert.acyclic()) throw ValidationError("inconsistent certificate");
  return cert;
}

Json betti_json(const BettiTable& table) {
  Json torsion = Json::array();
  for (const auto& [d, factors] : table.torsion) {
    Json f = Json::array();
    for (const auto& x : factors) f.push_back(big_to_string(x));
    torsion.push_back(Json::array({d, std::move(f)}));
  }
  return Json{{"n", table.n},
              {"coeff", table.coefficients.tag()},
              {"betti", table.betti.values()},
              {"torsion", std::move(torsion)},
              {"complete", table.all_complete()},
              {"escalated", table.escalated}};
}

BettiTable betti_from_json(const Json& doc) {
  BettiTable t;
  t.n = field(doc, "n").get<int>();
  t.coefficients = Coefficients::parse(field(doc, "coeff").get<std::string>());
  const auto values = field(doc, "betti").get<std::vector<std::uint64_t>>();
  if (values.size() != static_cast<std::size_t>(t.n)) throw ValidationError("Betti vector has the wrong length");
  t.betti = GradedVector<std::uint64_t>(static_cast<int>(values.size()) - 2);
  for (std::size_t i = 0; i < values.size(); ++i) t.betti[static_cast<int>(i) - 1] = values[i];
  t.complete = GradedVector<bool>(t.betti.max_dim(), field(doc, "complete").get<bool>());
  for (const auto& entry : field(doc, "torsion")) {
    std::vector<BigInt> factors;
    for (const auto& x : entry.at(1)) factors.emplace_back(x.get<std::string>());
    t.torsion.emplace_back(entry.at(0).get<int>(), std::move(factors));
  }
  if (doc.contains("escalated")) t.escalated = doc.at("escalated").get<std::vector<int>>();
  return t;
}

Json witness_json(const WitnessSpec& spec, const SignedChain& z) {
  Json terms = Json::array();
  for (const auto& [id, c] : z.coefficients) {
    const Permutation p = Permutation::from_lex_rank(z.n, id);
    terms.push_back(Json{{"perm", p.to_string()}, {"face", face_from_perm(p).to_core_string()}, {"sign", c}});
  }
  return Json{{"n", spec.n},
              {"k", spec.k},
              {"freeFace", spec.freeFace.to_core_string()},
              {"freePerm", perm_from_face(spec.freeFace).to_string()},
              {"terms", std::move(terms)}};
}

}  // namespace hcx

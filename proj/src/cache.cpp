#include "hcx/cache.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace hcx {

namespace fs = std::filesystem;

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string key_of(std::string_view kind, int n) {
  return std::string(kind) + "|" + std::to_string(n) + "|" + std::to_string(ResultCache::kFormatVersion);
}

std::string matching_kind(bool dual) { return dual ? "matching-dual" : "matching-primal"; }
std::string certificate_kind(bool dual) { return dual ? "certificate-dual" : "certificate-primal"; }

}  // namespace

ResultCache::ResultCache(fs::path dir, std::ostream* log) : dir_(std::move(dir)), log_(log) {
  if (enabled()) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) throw ResourceError("cache directory " + dir_.string() + " is not usable");
  }
}

fs::path ResultCache::path_for(std::string_view kind, int n) const {
  return dir_ / (std::string(kind) + "-n" + std::to_string(n) + "-v" + std::to_string(kFormatVersion) + "-" +
                 hex(fnv1a(key_of(kind, n))) + ".json");
}

void ResultCache::warn(const std::string& message) {
  if (log_) *log_ << "warning: " << message << "\n";
}

std::optional<Json> ResultCache::load(std::string_view kind, int n) {
  if (!enabled()) return std::nullopt;
  const fs::path path = path_for(kind, n);
  std::ifstream in(path);
  if (!in) {
    ++stats_.misses;
    return std::nullopt;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    Json envelope = Json::parse(buffer.str());
    if (envelope.at("key").get<std::string>() != key_of(kind, n)) throw ValidationError("key mismatch");
    Json payload = envelope.at("payload");
    if (envelope.at("checksum").get<std::string>() != hex(fnv1a(payload.dump()))) {
      throw ValidationError("checksum mismatch");
    }
    return payload;
  } catch (const std::exception& e) {
    ++stats_.rejected;
    warn("discarding cached " + std::string(kind) + " for n = " + std::to_string(n) + " (" + e.what() +
         "); recomputing");
    return std::nullopt;
  }
}

void ResultCache::store(std::string_view kind, int n, const Json& payload) {
  if (!enabled()) return;
  static std::atomic<unsigned> counter{0};
  const Json envelope{{"key", key_of(kind, n)}, {"checksum", hex(fnv1a(payload.dump()))}, {"payload", payload}};
  const fs::path target = path_for(kind, n);
  const fs::path temp = target.string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(temp, std::ios::trunc);
    out << envelope.dump() << "\n";
    if (!out.flush()) {
      warn("could not write " + temp.string());
      return;
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    warn("could not install " + target.string());
  }
}

FaceTable ResultCache::faces(int n, const Budget& budget) {
  budget.require_enumeration(n);
  if (auto doc = load("faces", n)) {
    try {
      FaceTable table = faces_from_json(*doc, budget);
      if (f_vector(table).values() != eulerian_row(n)) throw ValidationError("f-vector spot check failed");
      ++stats_.hits;
      return table;
    } catch (const std::exception& e) {
      ++stats_.rejected;
      warn("cached faces for n = " + std::to_string(n) + " failed validation (" + e.what() + "); recomputing");
    }
  }
  FaceTable table = FaceTable::enumerate(n, budget);
  store("faces", n, faces_json(table));
  return table;
}

MatchingMap ResultCache::matching(const FaceTable& table, bool dual) {
  const std::string kind = matching_kind(dual);
  if (auto doc = load(kind, table.n())) {
    try {
      MatchingMap map = matching_from_json(*doc, table);
      if (map.dual != dual) throw ValidationError("wrong matching flavour");
      if (2 * map.pair_count() + map.critical_count() != table.size()) throw ValidationError("pair count spot check failed");
      // Spot check a few partners against the rule itself.
      for (FaceId id = 0; id < table.size(); id += 1 + table.size() / 16) {
        const auto p = dual ? dual_partner(table.face(id)) : partner(table.face(id));
        const FaceId expected = p ? table.id_of(*p) : kUnmatched;
        if (map.pairs[id] != expected) throw ValidationError("partner spot check failed at face " + std::to_string(id));
      }
      ++stats_.hits;
      return map;
    } catch (const std::exception& e) {
      ++stats_.rejected;
      warn("cached " + kind + " for n = " + std::to_string(table.n()) + " failed validation (" + e.what() +
           "); recomputing");
    }
  }
  MatchingMap map = build_matching(table, dual);
  store(kind, table.n(), matching_json(map));
  return map;
}

BettiTable ResultCache::betti(const FaceTable& table, Coefficients coefficients, const HomologyOptions& options) {
  const std::string kind = "betti-" + coefficients.tag();
  if (auto doc = load(kind, table.n())) {
    try {
      BettiTable t = betti_from_json(*doc);
      if (t.n != table.n() || !(t.coefficients == coefficients) || !t.all_complete()) {
        throw ValidationError("header mismatch");
      }
      if (t.euler_characteristic() != alternating_eulerian(table.n())) {
        throw ValidationError("Euler characteristic spot check failed");
      }
      ++stats_.hits;
      return t;
    } catch (const std::exception& e) {
      ++stats_.rejected;
      warn("cached " + kind + " for n = " + std::to_string(table.n()) + " failed validation (" + e.what() +
           "); recomputing");
    }
  }
  BettiTable t = betti_table(table, coefficients, options);
  if (t.all_complete()) store(kind, table.n(), betti_json(t));
  return t;
}

AcyclicityCertificate ResultCache::certificate(const MorseDigraph& g, int n, bool dual) {
  const std::string kind = certificate_kind(dual);
  if (auto doc = load(kind, n)) {
    try {
      AcyclicityCertificate cert = certificate_from_json(*doc);
      if (!verify_certificate(g, cert)) throw ValidationError("certificate does not verify");
      ++stats_.hits;
      return cert;
    } catch (const std::exception& e) {
      ++stats_.rejected;
      warn("cached " + kind + " for n = " + std::to_string(n) + " failed validation (" + e.what() + "); recomputing");
    }
  }
  AcyclicityCertificate cert = check_acyclic(g);
  store(kind, n, certificate_json(cert));
  return cert;
}

}  // namespace hcx

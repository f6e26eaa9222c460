#pragma once

// On-disk result cache. Each artifact lives in its own JSON file whose name
// is derived from (kind, n, format version); the envelope carries an FNV-1a
// checksum of the payload. Loads re-check the checksum and cheap invariants
// and fall back to recomputation, with a warning, on any mismatch.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "hcx/serialize.hpp"

namespace hcx {

class ResultCache {
 public:
  static constexpr int kFormatVersion = 1;

  struct Stats {
    std::size_t hits = 0;
    std::size_t misses = 0;
    std::size_t rejected = 0;
  };

  // An empty directory disables caching: every request is computed.
  explicit ResultCache(std::filesystem::path dir = {}, std::ostream* log = nullptr);

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& directory() const { return dir_; }
  const Stats& stats() const { return stats_; }

  std::filesystem::path path_for(std::string_view kind, int n) const;

  FaceTable faces(int n, const Budget& budget = {});
  MatchingMap matching(const FaceTable& table, bool dual);
  // Incomplete tables (time budget hit) are returned but never stored.
  BettiTable betti(const FaceTable& table, Coefficients coefficients, const HomologyOptions& options = {});
  // Loaded certificates are re-verified against the digraph before use.
  AcyclicityCertificate certificate(const MorseDigraph& g, int n, bool dual);

  // Raw envelope access, exposed for tests and fault injection.
  std::optional<Json> load(std::string_view kind, int n);
  void store(std::string_view kind, int n, const Json& payload);

 private:
  void warn(const std::string& message);

  std::filesystem::path dir_;
  std::ostream* log_;
  Stats stats_;
};

std::uint64_t fnv1a(std::string_view bytes);

}  // namespace hcx

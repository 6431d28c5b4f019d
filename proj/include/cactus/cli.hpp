#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cactus/repstab.hpp"

namespace cactus {

inline constexpr const char* kEngineVersion = "0.1.0";

// Exit codes shared by the command entry points and the binary.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSizeGuard = 3;

struct IntRange {
  int lo = 0, hi = 0;
  std::vector<int> values() const;
};

/// "a" or "a:b" (inclusive).
IntRange parse_range(const std::string& s);

struct RunConfig {
  Family family = Family::mbar;
  IntRange degrees{1, 1};
  IntRange ns{0, 0};
  std::string emit = "all";  // all | dimension | character | decomposition
  std::string format = "json";  // json | csv | text-table
  std::string cache_dir;  // empty disables the cache
  int jobs = 1;
  int max_deg = 0;
  int a = 0;
  int gen_m = 0;
  IntRange fit{0, 0};
  IntRange check{0, -1};  // empty by default
  bool allow_large = false;
};

/// On-disk JSON cache, one file per key, stamped with the engine version.
/// Writes go through a temp file and rename, so readers never see partial
/// entries; version mismatches read as missing.
class CacheStore {
 public:
  explicit CacheStore(std::string dir) : dir_(std::move(dir)) {}

  bool enabled() const { return !dir_.empty(); }
  std::optional<nlohmann::json> load(const std::string& key) const;
  void store(const std::string& key, const nlohmann::json& payload) const;

  static std::string key(Family f, int n, int degree, const std::string& kind);

 private:
  std::string dir_;
};

// Each command renders its report to `out` in config.format and returns an
// exit code.
int cmd_compute(const RunConfig& config, std::ostream& out);
int cmd_stability(const RunConfig& config, std::ostream& out);
int cmd_fit_charpoly(const RunConfig& config, std::ostream& out);
int cmd_fit_betti(const RunConfig& config, std::ostream& out);
int cmd_coinvariants(const RunConfig& config, std::ostream& out);
int cmd_gendegree(const RunConfig& config, std::ostream& out);
int cmd_selftest(std::ostream& out);

}  // namespace cactus

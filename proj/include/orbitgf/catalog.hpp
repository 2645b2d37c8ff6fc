#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitgf/constructions.hpp"
#include "orbitgf/invariants.hpp"

namespace orbitgf {

inline constexpr const char* kCatalogSchema = "orbitgf/catalog@1";
inline constexpr const char* kRecordSchema = "orbitgf/record@1";
inline constexpr const char* kScanSchema = "orbitgf/scan@1";
inline constexpr const char* kCacheDirEnv = "ORBITGF_CACHE_DIR";

nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json ratfun_to_json(const RationalFunction& r);
RationalFunction ratfun_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json record_to_json(const InvariantRecord& r);
/// Throws Error{SpecParse} with a JSON path on schema violations, including
/// functions that are not in canonical form.
InvariantRecord record_from_json(const nlohmann::json& j, const std::string& path = "$");

struct CatalogEntry {
  std::string name;
  GroupSpec spec;
  std::optional<InvariantRecord> record;  // set iff computed
  std::string reason;                     // why the entry is unavailable

  bool computed() const noexcept { return record.has_value(); }
};

struct Catalog {
  std::vector<CatalogEntry> entries;

  const CatalogEntry* find(const std::string& name) const;
};

/// Builds the group and its record; builder errors make the entry
/// unavailable instead of propagating.
CatalogEntry compute_entry(const std::string& name, const GroupSpec& spec);

/// Entries are computed on up to `threads` workers (0: hardware
/// concurrency) and returned in input order.
Catalog build_catalog(const std::vector<std::pair<std::string, GroupSpec>>& specs,
                      unsigned threads = 0,
                      const std::function<void(const CatalogEntry&)>& on_done = {});
Catalog build_builtin_catalog(unsigned threads = 0,
                              const std::function<void(const CatalogEntry&)>& on_done = {});

nlohmann::json catalog_to_json(const Catalog& c);
Catalog catalog_from_json(const nlohmann::json& j);
void save_catalog(const Catalog& c, const std::filesystem::path& file);
Catalog load_catalog(const std::filesystem::path& file);

enum class ScanPredicate {
  ANotB,            // A-equivalent, not B-equivalent
  BNotA,            // B-equivalent, not A-equivalent
  ABNotNormalized,  // A- and B-equivalent: the invariants cannot tell them apart
  SameNormalized,   // equal normalized A and B (any orders)
  All,
};

ScanPredicate parse_scan_predicate(const std::string& text);
std::string to_string(ScanPredicate p);

struct ScanPair {
  std::string first;
  std::string second;
  std::size_t order_first = 0;
  std::size_t order_second = 0;
  bool a_equivalent = false;
  bool b_equivalent = false;
  bool same_normalized_A = false;
  bool same_normalized_B = false;
};

struct ScanReport {
  ScanPredicate predicate = ScanPredicate::All;
  std::vector<ScanPair> pairs;
  std::vector<std::pair<std::string, std::string>> unavailable;  // name, reason
};

/// Evaluates all unordered pairs of computed entries (restricted to `names`
/// when given). Throws Error{Unavailable} when fewer than two computed
/// entries take part or a requested name is unavailable or missing. Throws
/// std::logic_error if A-equivalence disagrees with equal class equations.
ScanReport scan(const Catalog& c, ScanPredicate predicate,
                const std::vector<std::string>& names = {});
nlohmann::json scan_to_json(const ScanReport& r);
std::string render_scan(const ScanReport& r);

/// $ORBITGF_CACHE_DIR if set and non-empty.
std::optional<std::filesystem::path> cache_dir();
/// Record for g, read from <dir>/<group_id>.json when present and written
/// there otherwise. Unreadable cache files are recomputed and replaced.
InvariantRecord cached_record(const FiniteGroup& g, const std::filesystem::path& dir);

}  // namespace orbitgf

#include "orbitgf/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "orbitgf/error.hpp"
#include "orbitgf/spec_io.hpp"

namespace orbitgf {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SpecParse, path + ": " + what);
}

const json& field(const json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing field");
  return *it;
}

std::size_t uint_field(const json& j, const std::string& path, const std::string& key) {
  const auto& v = field(j, path, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    fail(path + "." + key, "expected a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::string string_field(const json& j, const std::string& path, const std::string& key) {
  const auto& v = field(j, path, key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

json pf_to_json(const PartialFraction& pf) {
  json out = json::array();
  for (const auto& t : pf.terms) {
    out.push_back({{"residue", rational_to_json(t.residue)}, {"m", rational_to_json(t.m)}});
  }
  return out;
}

PartialFraction pf_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  PartialFraction pf;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    pf.terms.push_back({rational_from_json(field(j[i], p, "residue"), p + ".residue"),
                        rational_from_json(field(j[i], p, "m"), p + ".m")});
  }
  return pf;
}

json spectrum_to_json(const CentralizerSpectrum& s) {
  json out = json::array();
  for (const auto& [m, z] : s.counts) out.push_back(json::array({m, z}));
  return out;
}

CentralizerSpectrum spectrum_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of [m, z_m] pairs");
  CentralizerSpectrum s;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2 || !j[i][0].is_number_unsigned() ||
        !j[i][1].is_number_unsigned()) {
      fail(p, "expected a [m, z_m] pair of nonnegative integers");
    }
    s.counts[j[i][0].get<std::size_t>()] = j[i][1].get<std::size_t>();
  }
  return s;
}

}  // namespace

json rational_to_json(const Rational& q) { return q.get_str(); }

Rational rational_from_json(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected an exact rational as a string");
  const auto text = j.get<std::string>();
  try {
    Rational q = parse_rational(text);
    if (q.get_str() != text) fail(path, "rational '" + text + "' is not in lowest terms");
    return q;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SpecParse) throw;
    fail(path, "bad rational '" + text + "'");
  }
}

json ratfun_to_json(const RationalFunction& r) {
  json num = json::array();
  json den = json::array();
  for (const auto& c : r.num().coeffs()) num.push_back(rational_to_json(c));
  for (const auto& c : r.den().coeffs()) den.push_back(rational_to_json(c));
  return {{"num", num}, {"den", den}};
}

RationalFunction ratfun_from_json(const json& j, const std::string& path) {
  auto poly = [&](const char* key) {
    const auto& list = field(j, path, key);
    const std::string p = path + "." + key;
    if (!list.is_array()) fail(p, "expected an array of coefficients");
    std::vector<Rational> c;
    for (std::size_t i = 0; i < list.size(); ++i) {
      c.push_back(rational_from_json(list[i], p + "[" + std::to_string(i) + "]"));
    }
    return Polynomial(std::move(c));
  };
  const Polynomial num = poly("num");
  const Polynomial den = poly("den");
  if (den.is_zero()) fail(path + ".den", "zero denominator");
  RationalFunction r;
  try {
    r = RationalFunction(num, den);
  } catch (const Error& e) {
    fail(path, e.what());
  }
  if (!(r.num() == num) || !(r.den() == den)) fail(path, "function is not in canonical form");
  return r;
}

json record_to_json(const InvariantRecord& r) {
  return {{"group_id", r.group_id},
          {"order", r.order},
          {"center_order", r.center_order},
          {"max_abelian", r.max_abelian},
          {"spectrum", spectrum_to_json(r.spectrum)},
          {"A", ratfun_to_json(r.A)},
          {"B", ratfun_to_json(r.B)},
          {"A_pf", pf_to_json(r.A_pf)},
          {"B_pf", pf_to_json(r.B_pf)},
          {"normalized_A", ratfun_to_json(r.normalized_A)},
          {"normalized_B", ratfun_to_json(r.normalized_B)}};
}

InvariantRecord record_from_json(const json& j, const std::string& path) {
  InvariantRecord r;
  r.group_id = string_field(j, path, "group_id");
  r.order = uint_field(j, path, "order");
  r.center_order = uint_field(j, path, "center_order");
  r.max_abelian = uint_field(j, path, "max_abelian");
  r.spectrum = spectrum_from_json(field(j, path, "spectrum"), path + ".spectrum");
  r.A = ratfun_from_json(field(j, path, "A"), path + ".A");
  r.B = ratfun_from_json(field(j, path, "B"), path + ".B");
  r.A_pf = pf_from_json(field(j, path, "A_pf"), path + ".A_pf");
  r.B_pf = pf_from_json(field(j, path, "B_pf"), path + ".B_pf");
  r.normalized_A = ratfun_from_json(field(j, path, "normalized_A"), path + ".normalized_A");
  r.normalized_B = ratfun_from_json(field(j, path, "normalized_B"), path + ".normalized_B");
  if (r.spectrum.total() != r.order) fail(path + ".spectrum", "does not sum to the order");
  if (!(from_partial_fractions(r.A_pf) == r.A)) fail(path + ".A_pf", "does not sum to A");
  if (!(from_partial_fractions(r.B_pf) == r.B)) fail(path + ".B_pf", "does not sum to B");
  return r;
}

const CatalogEntry* Catalog::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

CatalogEntry compute_entry(const std::string& name, const GroupSpec& spec) {
  CatalogEntry e{name, spec, std::nullopt, {}};
  try {
    const FiniteGroup g = build(spec);
    if (g.order() != predicted_order(spec) && predicted_order(spec) != 0) {
      throw Error(ErrorCode::InconsistentPresentation,
                  "built order " + std::to_string(g.order()) + ", expected " +
                      std::to_string(predicted_order(spec)));
    }
    e.record = compute_record(g);
  } catch (const Error& err) {
    e.reason = err.what();
  }
  return e;
}

Catalog build_catalog(const std::vector<std::pair<std::string, GroupSpec>>& specs,
                      unsigned threads, const std::function<void(const CatalogEntry&)>& on_done) {
  Catalog c;
  c.entries.resize(specs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, specs.size())));
  std::atomic<std::size_t> next{0};
  std::mutex report;
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      c.entries[i] = compute_entry(specs[i].first, specs[i].second);
      if (on_done) {
        std::lock_guard lock(report);
        on_done(c.entries[i]);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return c;
}

Catalog build_builtin_catalog(unsigned threads,
                              const std::function<void(const CatalogEntry&)>& on_done) {
  std::vector<std::pair<std::string, GroupSpec>> specs;
  for (const auto& name : builtin_names()) specs.emplace_back(name, named_spec(name));
  return build_catalog(specs, threads, on_done);
}

json catalog_to_json(const Catalog& c) {
  json entries = json::array();
  for (const auto& e : c.entries) {
    json j{{"name", e.name}, {"spec", spec_to_json(e.spec)}};
    if (e.record) {
      j["status"] = "computed";
      j["record"] = record_to_json(*e.record);
    } else {
      j["status"] = "unavailable";
      j["reason"] = e.reason;
    }
    entries.push_back(j);
  }
  return {{"schema", kCatalogSchema}, {"entries", entries}};
}

Catalog catalog_from_json(const json& j) {
  const std::string schema = string_field(j, "$", "schema");
  if (schema != kCatalogSchema) fail("$.schema", "expected " + std::string(kCatalogSchema));
  const auto& list = field(j, "$", "entries");
  if (!list.is_array()) fail("$.entries", "expected an array");
  Catalog c;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = "$.entries[" + std::to_string(i) + "]";
    CatalogEntry e;
    e.name = string_field(list[i], p, "name");
    if (c.find(e.name)) fail(p + ".name", "duplicate entry '" + e.name + "'");
    e.spec = spec_from_json(field(list[i], p, "spec"), p + ".spec");
    const std::string status = string_field(list[i], p, "status");
    if (status == "computed") {
      e.record = record_from_json(field(list[i], p, "record"), p + ".record");
    } else if (status == "unavailable") {
      e.reason = string_field(list[i], p, "reason");
    } else {
      fail(p + ".status", "expected \"computed\" or \"unavailable\"");
    }
    c.entries.push_back(std::move(e));
  }
  return c;
}

void save_catalog(const Catalog& c, const std::filesystem::path& file) {
  write_file_atomic(file, canonical_dump(catalog_to_json(c)));
}

Catalog load_catalog(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::SpecParse, "cannot read catalog " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SpecParse, "$: invalid JSON: " + std::string(e.what()));
  }
  return catalog_from_json(j);
}

ScanPredicate parse_scan_predicate(const std::string& text) {
  if (text == "a-not-b") return ScanPredicate::ANotB;
  if (text == "b-not-a") return ScanPredicate::BNotA;
  if (text == "ab-not-normalized" || text == "ab-not-normalized-distinguishable") {
    return ScanPredicate::ABNotNormalized;
  }
  if (text == "same-normalized") return ScanPredicate::SameNormalized;
  if (text == "all") return ScanPredicate::All;
  throw Error(ErrorCode::Parse, "unknown predicate '" + text + "'");
}

std::string to_string(ScanPredicate p) {
  switch (p) {
    case ScanPredicate::ANotB: return "a-not-b";
    case ScanPredicate::BNotA: return "b-not-a";
    case ScanPredicate::ABNotNormalized: return "ab-not-normalized";
    case ScanPredicate::SameNormalized: return "same-normalized";
    case ScanPredicate::All: return "all";
  }
  return "all";
}

ScanReport scan(const Catalog& c, ScanPredicate predicate, const std::vector<std::string>& names) {
  ScanReport report;
  report.predicate = predicate;
  std::vector<const CatalogEntry*> pool;
  if (names.empty()) {
    for (const auto& e : c.entries) {
      if (e.computed()) {
        pool.push_back(&e);
      } else {
        report.unavailable.emplace_back(e.name, e.reason);
      }
    }
  } else {
    for (const auto& n : names) {
      const auto* e = c.find(n);
      if (!e) throw Error(ErrorCode::Unavailable, "no catalog entry named '" + n + "'");
      if (!e->computed()) {
        throw Error(ErrorCode::Unavailable, "entry '" + n + "' is unavailable: " + e->reason);
      }
      pool.push_back(e);
    }
  }
  if (pool.size() < 2) {
    throw Error(ErrorCode::Unavailable, "scan needs at least two computed entries, found " +
                                            std::to_string(pool.size()));
  }
  std::sort(pool.begin(), pool.end(), [](const CatalogEntry* a, const CatalogEntry* b) {
    return std::pair(a->record->order, a->name) < std::pair(b->record->order, b->name);
  });
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t k = i + 1; k < pool.size(); ++k) {
      const auto& x = *pool[i]->record;
      const auto& y = *pool[k]->record;
      ScanPair p{pool[i]->name, pool[k]->name, x.order, y.order, x.A == y.A, x.B == y.B,
                 x.normalized_A == y.normalized_A, x.normalized_B == y.normalized_B};
      if (p.a_equivalent != (x.spectrum == y.spectrum)) {
        throw std::logic_error("A-equivalence of " + p.first + " and " + p.second +
                               " disagrees with their class equations");
      }
      bool keep = true;
      switch (predicate) {
        case ScanPredicate::ANotB: keep = p.a_equivalent && !p.b_equivalent; break;
        case ScanPredicate::BNotA: keep = p.b_equivalent && !p.a_equivalent; break;
        case ScanPredicate::ABNotNormalized: keep = p.a_equivalent && p.b_equivalent; break;
        case ScanPredicate::SameNormalized:
          keep = p.same_normalized_A && p.same_normalized_B;
          break;
        case ScanPredicate::All: break;
      }
      if (keep) report.pairs.push_back(p);
    }
  }
  return report;
}

json scan_to_json(const ScanReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"first", p.first},
                     {"second", p.second},
                     {"order_first", p.order_first},
                     {"order_second", p.order_second},
                     {"a_equivalent", p.a_equivalent},
                     {"b_equivalent", p.b_equivalent},
                     {"same_normalized_A", p.same_normalized_A},
                     {"same_normalized_B", p.same_normalized_B}});
  }
  json unavailable = json::array();
  for (const auto& [name, reason] : r.unavailable) {
    unavailable.push_back({{"name", name}, {"reason", reason}});
  }
  return {{"schema", kScanSchema},
          {"predicate", to_string(r.predicate)},
          {"pairs", pairs},
          {"unavailable", unavailable}};
}

std::string render_scan(const ScanReport& r) {
  std::ostringstream out;
  out << "predicate: " << to_string(r.predicate) << "\n";
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  for (const auto& p : r.pairs) {
    out << p.first << " (" << p.order_first << ")  " << p.second << " (" << p.order_second
        << ")  A-equiv=" << yn(p.a_equivalent) << " B-equiv=" << yn(p.b_equivalent)
        << " same-normalized-A=" << yn(p.same_normalized_A)
        << " same-normalized-B=" << yn(p.same_normalized_B) << "\n";
  }
  out << r.pairs.size() << " pair(s)\n";
  for (const auto& [name, reason] : r.unavailable) {
    out << "unavailable: " << name << ": " << reason << "\n";
  }
  return out.str();
}

std::optional<std::filesystem::path> cache_dir() {
  const char* v = std::getenv(kCacheDirEnv);
  if (!v || !*v) return std::nullopt;
  return std::filesystem::path(v);
}

InvariantRecord cached_record(const FiniteGroup& g, const std::filesystem::path& dir) {
  const std::string id = group_id(g);
  const auto file = dir / (id + ".json");
  if (std::ifstream in(file); in) {
    try {
      const json j = json::parse(in);
      if (j.value("schema", "") == kRecordSchema) {
        InvariantRecord r = record_from_json(field(j, "$", "record"), "$.record");
        if (r.group_id == id && r.order == g.order()) return r;
      }
    } catch (const std::exception&) {
      // fall through and recompute
    }
  }
  InvariantRecord r = compute_record(g);
  write_file_atomic(file, canonical_dump({{"schema", kRecordSchema}, {"record", record_to_json(r)}}));
  return r;
}

}  // namespace orbitgf

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orbitgf/catalog.hpp"
#include "orbitgf/closed_forms.hpp"
#include "orbitgf/error.hpp"
#include "orbitgf/invariants.hpp"
#include "orbitgf/oracle.hpp"
#include "orbitgf/spec_io.hpp"

namespace fs = std::filesystem;
using namespace orbitgf;

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kBuild = 3,
  kUnavailable = 4,
  kTableFail = 5,
  kOracleMismatch = 6,
};

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::SpecParse:
    case ErrorCode::Parse:
      return kParse;
    case ErrorCode::Unavailable:
      return kUnavailable;
    default:
      return kBuild;
  }
}

struct GroupSource {
  std::string group;
  std::string spec_file;

  void add_to(CLI::App* cmd) {
    auto* g = cmd->add_option("--group,-g", group, "named group (cyclic:N, stem:Phi5:3, Q8, ...)");
    auto* s = cmd->add_option("--spec,-s", spec_file, "GroupSpec JSON file");
    g->excludes(s);
  }

  void add_exhaustive_to(CLI::App* cmd) {
    cmd->add_flag("--exhaustive", exhaustive, "check associativity on every triple");
  }

  bool exhaustive = false;

  FiniteGroup build_group() const {
    FiniteGroup g = build(load());
    if (exhaustive) verify_group_axioms(g.table(), g.order(), AssociativityCheck::Exhaustive);
    return g;
  }

  GroupSpec load() const {
    if (!spec_file.empty()) return load_spec_file(spec_file);
    if (group.empty()) throw Error(ErrorCode::Parse, "one of --group or --spec is required");
    return named_spec(group);
  }
};

struct ComputeOptions {
  GroupSource source;
  std::string invariant = "both";
  std::string format = "rational";
  std::size_t terms = 8;
  bool normalized = false;
  bool json = false;
};

std::string render(const RationalFunction& r, const std::string& format, std::size_t terms) {
  if (format == "partial-fractions") return render_partial_fractions(to_partial_fractions(r));
  if (format == "series") return render_series(series_coeffs(r, terms));
  return render_rational(r);
}

int run_compute(const ComputeOptions& o) {
  const FiniteGroup g = o.source.build_group();
  InvariantRecord rec;
  if (auto dir = cache_dir()) {
    fs::create_directories(*dir);
    rec = cached_record(g, *dir);
  } else {
    rec = compute_record(g);
  }
  if (o.json) {
    std::cout << canonical_dump({{"schema", kRecordSchema}, {"record", record_to_json(rec)}});
    return kOk;
  }
  const RationalFunction& a = o.normalized ? rec.normalized_A : rec.A;
  const RationalFunction& b = o.normalized ? rec.normalized_B : rec.B;
  if (o.invariant == "A") {
    std::cout << render(a, o.format, o.terms) << "\n";
  } else if (o.invariant == "B") {
    std::cout << render(b, o.format, o.terms) << "\n";
  } else {
    std::cout << "A(t) = " << render(a, o.format, o.terms) << "\n";
    std::cout << "B(t) = " << render(b, o.format, o.terms) << "\n";
  }
  return kOk;
}

struct ScanOptions {
  std::string catalog;
  std::string predicate = "all";
  std::vector<std::string> names;
  bool json = false;
};

int run_scan(const ScanOptions& o) {
  const ScanPredicate pred = parse_scan_predicate(o.predicate);
  const Catalog c = o.catalog.empty() ? build_builtin_catalog() : load_catalog(o.catalog);
  const ScanReport r = scan(c, pred, o.names);
  if (o.json) {
    std::cout << canonical_dump(scan_to_json(r));
  } else {
    std::cout << render_scan(r);
  }
  return kOk;
}

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

constexpr std::size_t kVerifyOrderLimit = 3000;

int run_table1(unsigned p, bool verify) {
  if (!is_prime(p)) throw Error(ErrorCode::ParameterOutOfRange, std::to_string(p) + " is not prime");
  if (verify && p > 7) {
    throw Error(ErrorCode::ParameterOutOfRange, "--verify supports p <= 7");
  }
  bool ok = true;
  for (const auto& name : table_families(p)) {
    const FamilyFormula f = family_table(name, p);
    std::cout << name << "\n";
    std::cout << "  A: " << render_partial_fractions(to_partial_fractions(f.normalized_A)) << "\n";
    std::cout << "  B: " << render_partial_fractions(to_partial_fractions(f.normalized_B)) << "\n";
    if (!verify) continue;
    std::optional<FiniteGroup> g;
    if (name == "Abelian") {
      g = cyclic_group(p);
    } else {
      const StemFamily fam = parse_stem_family(name);
      if (stem_order(fam, p) > kVerifyOrderLimit) {
        std::cout << "  SKIP " << name << ": stem group of order " << stem_order(fam, p)
                  << " exceeds the verification limit\n";
        continue;
      }
      g = stem_group(fam, p);
    }
    const bool a = normalized_A(*g) == f.normalized_A;
    const bool b = normalized_B(*g) == f.normalized_B;
    std::cout << "  " << (a && b ? "PASS" : "FAIL") << " " << name << " (order " << g->order()
              << ")";
    if (!a) std::cout << " A mismatch";
    if (!b) std::cout << " B mismatch";
    std::cout << "\n";
    ok = ok && a && b;
  }
  return ok ? kOk : kTableFail;
}

struct CatalogOptions {
  std::string out;
  unsigned threads = 0;
  std::vector<std::string> only;
  std::vector<std::string> spec_files;
  bool quiet = false;
};

fs::path default_catalog_path() {
  if (auto dir = cache_dir()) return *dir / "catalog.json";
  return "orbitgf-catalog.json";
}

int run_catalog_build(const CatalogOptions& o) {
  std::vector<std::pair<std::string, GroupSpec>> specs;
  if (o.only.empty() && o.spec_files.empty()) {
    for (const auto& n : builtin_names()) specs.emplace_back(n, named_spec(n));
  }
  for (const auto& n : o.only) specs.emplace_back(n, named_spec(n));
  for (const auto& f : o.spec_files) specs.emplace_back(fs::path(f).stem().string(), load_spec_file(f));
  const Catalog c = build_catalog(specs, o.threads, [&](const CatalogEntry& e) {
    if (o.quiet) return;
    if (e.computed()) {
      std::cerr << "computed " << e.name << " (order " << e.record->order << ")\n";
    } else {
      std::cerr << "unavailable " << e.name << ": " << e.reason << "\n";
    }
  });
  const fs::path out = o.out.empty() ? default_catalog_path() : fs::path(o.out);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  save_catalog(c, out);
  std::size_t computed = 0;
  for (const auto& e : c.entries) computed += e.computed() ? 1 : 0;
  std::cout << "wrote " << out.string() << ": " << computed << " computed, "
            << c.entries.size() - computed << " unavailable\n";
  return kOk;
}

struct OracleOptions {
  GroupSource source;
  unsigned max_n = 3;
  std::uint64_t limit = kOracleStateLimit;
};

int run_oracle_check(const OracleOptions& o) {
  const FiniteGroup g = o.source.build_group();
  const auto a = series_coeffs(A_of(g), o.max_n + 1);
  const auto b = series_coeffs(B_of(g), o.max_n + 1);
  bool ok = true;
  for (unsigned n = 0; n <= o.max_n; ++n) {
    const Integer alpha = alpha_bruteforce(g, n, o.limit).count;
    const Integer beta = beta_bruteforce(g, n, o.limit).count;
    const bool good = Rational(alpha) == a[n] && Rational(beta) == b[n];
    std::cout << (good ? "ok" : "MISMATCH") << " n=" << n << " alpha=" << alpha.get_str()
              << " (series " << a[n].get_str() << ") beta=" << beta.get_str() << " (series "
              << b[n].get_str() << ")\n";
    ok = ok && good;
  }
  return ok ? kOk : kOracleMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbitgf: orbit-counting generating functions of finite groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "orbitgf 1.0.0");

  ComputeOptions compute;
  auto* c = app.add_subcommand("compute", "A and B generating functions of one group");
  compute.source.add_to(c);
  compute.source.add_exhaustive_to(c);
  c->add_option("--invariant", compute.invariant)->check(CLI::IsMember({"A", "B", "both"}));
  c->add_option("--format", compute.format)
      ->check(CLI::IsMember({"rational", "partial-fractions", "series"}));
  c->add_option("--terms", compute.terms, "series terms");
  c->add_flag("--normalized", compute.normalized, "substitute t -> t/|G|");
  c->add_flag("--json", compute.json, "print the full record as JSON");

  ScanOptions scan_opts;
  auto* s = app.add_subcommand("scan", "equivalence scan over a catalog");
  s->add_option("--catalog", scan_opts.catalog, "catalog JSON (default: built-in groups)");
  s->add_option("--predicate", scan_opts.predicate,
                "a-not-b | b-not-a | ab-not-normalized | same-normalized | all");
  s->add_option("--names", scan_opts.names, "restrict to these entries");
  s->add_flag("--json", scan_opts.json);

  unsigned table_p = 3;
  bool table_verify = false;
  auto* t = app.add_subcommand("table1", "normalized invariants of the isoclinism families");
  t->add_option("--p,-p", table_p, "prime")->required();
  t->add_flag("--verify", table_verify, "check against the stem groups");

  CatalogOptions cat;
  auto* cg = app.add_subcommand("catalog", "catalog operations");
  cg->require_subcommand(1);
  auto* cb = cg->add_subcommand("build", "compute and write a catalog");
  cb->add_option("--out,-o", cat.out);
  cb->add_option("--threads,-j", cat.threads);
  cb->add_option("--only", cat.only, "named groups instead of the built-in set");
  cb->add_option("--spec", cat.spec_files, "extra GroupSpec files");
  cb->add_flag("--quiet,-q", cat.quiet);

  OracleOptions oracle;
  auto* og = app.add_subcommand("oracle", "brute-force orbit counts");
  og->require_subcommand(1);
  auto* oc = og->add_subcommand("check", "compare orbit counts with the series");
  oracle.source.add_to(oc);
  oracle.source.add_exhaustive_to(oc);
  oc->add_option("--n", oracle.max_n, "largest tuple length");
  oc->add_option("--limit", oracle.limit, "largest tuple space");

  GroupSource exported;
  auto* sg = app.add_subcommand("spec", "GroupSpec utilities");
  sg->require_subcommand(1);
  auto* se = sg->add_subcommand("export", "print a group's spec as JSON");
  exported.add_to(se);
  bool as_presentation = false;
  se->add_flag("--presentation", as_presentation, "expand to a pc presentation when one exists");
  auto* sl = sg->add_subcommand("list", "list built-in names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (c->parsed()) return run_compute(compute);
    if (s->parsed()) return run_scan(scan_opts);
    if (t->parsed()) return run_table1(table_p, table_verify);
    if (cb->parsed()) return run_catalog_build(cat);
    if (oc->parsed()) return run_oracle_check(oracle);
    if (se->parsed()) {
      GroupSpec spec = exported.load();
      if (as_presentation) {
        if (auto pc = presentation_of(spec)) spec = GroupSpec{spec::Pc{*pc}};
      }
      std::cout << canonical_dump(spec_to_json(spec));
      return kOk;
    }
    if (sl->parsed()) {
      for (const auto& n : builtin_names()) std::cout << n << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (t->parsed() && e.code() == ErrorCode::ParameterOutOfRange) return kParse;
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBuild;
  }
  return kUsage;
}

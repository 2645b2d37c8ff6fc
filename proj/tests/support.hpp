#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "orbitgf/catalog.hpp"
#include "orbitgf/constructions.hpp"
#include "orbitgf/invariants.hpp"
#include "orbitgf/ratfun.hpp"
#include "orbitgf/spec_io.hpp"

namespace testing {

using namespace orbitgf;

inline const FiniteGroup& group(const std::string& name) {
  static std::map<std::string, FiniteGroup> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, build(named_spec(name))).first;
  return it->second;
}

inline const Catalog& builtin_catalog() {
  static const Catalog c = build_builtin_catalog();
  return c;
}

/// Computed built-in entries with their groups.
inline std::vector<std::pair<std::string, const FiniteGroup*>> catalog_groups() {
  std::vector<std::pair<std::string, const FiniteGroup*>> out;
  for (const auto& e : builtin_catalog().entries) {
    if (e.computed()) out.emplace_back(e.name, &group(e.name));
  }
  return out;
}

inline RationalFunction pf(const std::vector<std::pair<Rational, Rational>>& terms) {
  RationalFunction r;
  for (const auto& [c, m] : terms) r = r + RationalFunction::simple_pole(c, m);
  return r;
}

inline Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Smallest subgroup containing all [x, s] for x in G, s in S.
inline Subgroup commutator_with(const FiniteGroup& g, const Subgroup& s) {
  std::vector<Element> gens;
  for (Element x = 0; x < g.order(); ++x) {
    for (Element y : s.elements()) gens.push_back(g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)));
  }
  return generate(g, gens);
}

inline std::size_t nilpotency_class(const FiniteGroup& g) {
  Subgroup cur = whole_group(g);
  std::size_t c = 0;
  while (cur.order() > 1) {
    Subgroup next = commutator_with(g, cur);
    if (next.order() == cur.order()) return 0;  // not nilpotent
    cur = next;
    ++c;
  }
  return c;
}

inline bool has_abelian_subgroup_of_index(const FiniteGroup& g, std::size_t index) {
  return max_abelian_order(g) * index >= g.order();
}

}  // namespace testing

#include "orbitgf/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "orbitgf/error.hpp"

namespace orbitgf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::MalformedPresentation: return "MalformedPresentation";
    case ErrorCode::InconsistentPresentation: return "InconsistentPresentation";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::NotSimpleIntegerPoles: return "NotSimpleIntegerPoles";
    case ErrorCode::NonIntegralSolution: return "NonIntegralSolution";
    case ErrorCode::RecursionDepthExceeded: return "RecursionDepthExceeded";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::SpecParse: return "SpecParse";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Unavailable: return "Unavailable";
  }
  return "Unknown";
}

namespace {

void check_associative(const std::vector<Element>& t, std::size_t n, Element a, Element b,
                       Element c) {
  const auto ab = t[a * n + b];
  const auto bc = t[b * n + c];
  if (t[ab * n + c] != t[a * n + bc]) {
    std::ostringstream msg;
    msg << "(" << a << "*" << b << ")*" << c << " != " << a << "*(" << b << "*" << c << ")";
    throw Error(ErrorCode::NotAssociative, msg.str());
  }
}

}  // namespace

FiniteGroup verify_group_axioms(std::vector<Element> table, std::size_t n,
                                AssociativityCheck mode, std::vector<std::string> labels) {
  if (n == 0) throw Error(ErrorCode::NoIdentity, "empty table");
  if (table.size() != n * n) {
    throw Error(ErrorCode::NotClosed, "table is not square: " + std::to_string(table.size()) +
                                          " entries for order " + std::to_string(n));
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] >= n) {
      throw Error(ErrorCode::NotClosed, "entry " + std::to_string(i / n) + "*" +
                                            std::to_string(i % n) + " = " +
                                            std::to_string(table[i]) + " is out of range");
    }
  }

  std::optional<Element> identity;
  for (Element e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) {
      ok = table[e * n + x] == x && table[x * n + e] == x;
    }
    if (ok) identity = e;
  }
  if (!identity) throw Error(ErrorCode::NoIdentity, "no two-sided identity element");

  // Relabel so the identity is element 0.
  const Element e = *identity;
  if (e != 0) {
    auto relabel = [e](Element x) -> Element { return x == e ? 0 : (x == 0 ? e : x); };
    std::vector<Element> swapped(n * n);
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        swapped[relabel(a) * n + relabel(b)] = relabel(table[a * n + b]);
      }
    }
    table = std::move(swapped);
    if (labels.size() == n) std::swap(labels[0], labels[e]);
  }

  std::vector<Element> inv(n, 0);
  for (Element x = 0; x < n; ++x) {
    std::optional<Element> found;
    for (Element y = 0; y < n; ++y) {
      if (table[x * n + y] == 0) {
        found = y;
        break;
      }
    }
    if (!found || table[*found * n + x] != 0) {
      throw Error(ErrorCode::NoInverse, "element " + std::to_string(x) + " has no inverse");
    }
    inv[x] = *found;
  }

  const bool exhaustive = mode == AssociativityCheck::Exhaustive ||
                          (mode == AssociativityCheck::Auto && n <= kExhaustiveAssociativityLimit);
  if (exhaustive) {
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        for (Element c = 0; c < n; ++c) check_associative(table, n, a, b, c);
      }
    }
  } else {
    std::mt19937_64 rng(0x5eed5eedULL ^ n);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
    for (std::size_t i = 0; i < kAssociativitySamples; ++i) {
      check_associative(table, n, pick(rng), pick(rng), pick(rng));
    }
  }

  if (!labels.empty() && labels.size() != n) labels.clear();

  FiniteGroup g;
  g.order_ = n;
  g.table_ = std::move(table);
  g.inv_ = std::move(inv);
  g.labels_ = std::move(labels);
  return g;
}

FiniteGroup verify_group_axioms(const std::vector<std::vector<Element>>& rows,
                                AssociativityCheck mode) {
  const std::size_t n = rows.size();
  std::vector<Element> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorCode::NotClosed, "row " + std::to_string(i) + " has " +
                                            std::to_string(rows[i].size()) + " entries, expected " +
                                            std::to_string(n));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return verify_group_axioms(std::move(flat), n, mode);
}

// ---------------------------------------------------------------------------

Subgroup make_subgroup_unchecked(const FiniteGroup& ambient, std::vector<Element> sorted) {
  return Subgroup(&ambient, std::move(sorted));
}

Subgroup Subgroup::from_elements(const FiniteGroup& g, std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  for (auto x : elements) {
    if (x >= g.order()) throw Error(ErrorCode::NotClosed, "element out of range");
  }
  if (elements.empty() || elements.front() != 0) {
    throw Error(ErrorCode::NotClosed, "subset does not contain the identity");
  }
  std::vector<char> member(g.order(), 0);
  for (auto x : elements) member[x] = 1;
  for (auto a : elements) {
    if (!member[g.inv(a)]) {
      throw Error(ErrorCode::NotClosed, "inverse of " + std::to_string(a) + " missing");
    }
    for (auto b : elements) {
      if (!member[g.mul(a, b)]) {
        throw Error(ErrorCode::NotClosed,
                    std::to_string(a) + "*" + std::to_string(b) + " leaves the subset");
      }
    }
  }
  if (g.order() % elements.size() != 0) {
    throw Error(ErrorCode::NotClosed, "subgroup order does not divide the group order");
  }
  return Subgroup(&g, std::move(elements));
}

bool Subgroup::contains(Element x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

std::size_t CentralizerSpectrum::total() const {
  std::size_t s = 0;
  for (const auto& [m, z] : counts) s += z;
  return s;
}

std::size_t CentralizerSpectrum::at(std::size_t m) const {
  auto it = counts.find(m);
  return it == counts.end() ? 0 : it->second;
}

Subgroup centralizer(const FiniteGroup& g, Element x) {
  std::vector<Element> out;
  for (Element y = 0; y < g.order(); ++y) {
    if (g.commute(x, y)) out.push_back(y);
  }
  return make_subgroup_unchecked(g, std::move(out));
}

Subgroup center(const FiniteGroup& g) {
  std::vector<Element> out;
  for (Element x = 0; x < g.order(); ++x) {
    bool central = true;
    for (Element y = 0; y < g.order() && central; ++y) central = g.commute(x, y);
    if (central) out.push_back(x);
  }
  return make_subgroup_unchecked(g, std::move(out));
}

ConjugacyData conjugacy_classes(const FiniteGroup& g) {
  const std::size_t n = g.order();
  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  ConjugacyData data;
  data.class_of.assign(n, unassigned);
  for (Element x = 0; x < n; ++x) {
    if (data.class_of[x] != unassigned) continue;
    const std::size_t id = data.reps.size();
    std::size_t size = 0;
    for (Element h = 0; h < n; ++h) {
      const Element y = g.conjugate(x, h);
      if (data.class_of[y] == unassigned) {
        data.class_of[y] = id;
        ++size;
      }
    }
    data.reps.push_back(x);
    data.class_sizes.push_back(size);
    data.centralizer_orders.push_back(n / size);
  }
  return data;
}

CentralizerSpectrum class_equation(const FiniteGroup& g) {
  const auto classes = conjugacy_classes(g);
  CentralizerSpectrum spectrum;
  for (std::size_t c = 0; c < classes.class_count(); ++c) {
    spectrum.counts[classes.centralizer_orders[c]] += classes.class_sizes[c];
  }
  return spectrum;
}

FiniteGroup subgroup_as_group(const Subgroup& s) {
  const auto& g = s.ambient();
  const auto& el = s.elements();
  const std::size_t k = el.size();
  std::vector<Element> index(g.order(), 0);
  for (std::size_t i = 0; i < k; ++i) index[el[i]] = static_cast<Element>(i);
  std::vector<Element> table(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) table[i * k + j] = index[g.mul(el[i], el[j])];
  }
  std::vector<std::string> labels;
  if (!g.labels().empty()) {
    for (auto x : el) labels.push_back(g.labels()[x]);
  }
  return verify_group_axioms(std::move(table), k, AssociativityCheck::Auto, std::move(labels));
}

Subgroup generate(const FiniteGroup& g, std::span<const Element> generators) {
  std::vector<char> member(g.order(), 0);
  std::vector<Element> out{0};
  member[0] = 1;
  std::deque<Element> queue{0};
  while (!queue.empty()) {
    const Element x = queue.front();
    queue.pop_front();
    for (auto s : generators) {
      const Element y = g.mul(x, s);
      if (!member[y]) {
        member[y] = 1;
        out.push_back(y);
        queue.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return make_subgroup_unchecked(g, std::move(out));
}

Subgroup whole_group(const FiniteGroup& g) {
  std::vector<Element> all(g.order());
  std::iota(all.begin(), all.end(), Element{0});
  return make_subgroup_unchecked(g, std::move(all));
}

Subgroup trivial_subgroup(const FiniteGroup& g) { return make_subgroup_unchecked(g, {0}); }

Subgroup derived_subgroup(const FiniteGroup& g) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Element> commutators;
  for (Element a = 0; a < g.order(); ++a) {
    for (Element b = 0; b < g.order(); ++b) {
      // [a,b] = a^-1 b^-1 a b
      const Element c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
      if (!seen[c]) {
        seen[c] = 1;
        commutators.push_back(c);
      }
    }
  }
  return generate(g, commutators);
}

bool is_abelian(const FiniteGroup& g) {
  for (Element a = 0; a < g.order(); ++a) {
    for (Element b = a + 1; b < g.order(); ++b) {
      if (!g.commute(a, b)) return false;
    }
  }
  return true;
}

bool is_abelian(const Subgroup& s) {
  const auto& g = s.ambient();
  const auto& el = s.elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t j = i + 1; j < el.size(); ++j) {
      if (!g.commute(el[i], el[j])) return false;
    }
  }
  return true;
}

bool is_ac_group(const FiniteGroup& g) {
  const auto z = center(g);
  for (Element x = 0; x < g.order(); ++x) {
    if (z.contains(x)) continue;
    if (!is_abelian(centralizer(g, x))) return false;
  }
  return true;
}

namespace {

using Bits = std::vector<std::uint64_t>;

Bits to_bits(const std::vector<Element>& el, std::size_t n) {
  Bits b((n + 63) / 64, 0);
  for (auto x : el) b[x / 64] |= std::uint64_t{1} << (x % 64);
  return b;
}

std::vector<Element> from_bits(const Bits& b) {
  std::vector<Element> out;
  for (std::size_t w = 0; w < b.size(); ++w) {
    auto word = b[w];
    while (word) {
      const int bit = __builtin_ctzll(word);
      out.push_back(static_cast<Element>(w * 64 + static_cast<std::size_t>(bit)));
      word &= word - 1;
    }
  }
  return out;
}

}  // namespace

std::size_t max_abelian_order(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<Bits> cent(n);
  for (Element x = 0; x < n; ++x) cent[x] = to_bits(centralizer(g, x).elements(), n);

  std::set<Bits> seen(cent.begin(), cent.end());
  std::deque<Bits> work(seen.begin(), seen.end());
  std::size_t best = 1;
  while (!work.empty()) {
    Bits a = std::move(work.front());
    work.pop_front();
    const auto members = from_bits(a);
    bool abelian = true;
    for (auto x : members) {
      // a is abelian iff it lies inside the centralizer of each member
      Bits meet(a.size());
      bool shrinks = false;
      for (std::size_t w = 0; w < a.size(); ++w) {
        meet[w] = a[w] & cent[x][w];
        shrinks = shrinks || meet[w] != a[w];
      }
      if (!shrinks) continue;
      abelian = false;
      if (seen.insert(meet).second) work.push_back(std::move(meet));
    }
    if (abelian) best = std::max(best, members.size());
  }
  return best;
}

std::size_t element_order(const FiniteGroup& g, Element x) {
  std::size_t k = 1;
  for (Element y = x; y != 0; y = g.mul(y, x)) ++k;
  return x == 0 ? 1 : k;
}

std::size_t exponent(const FiniteGroup& g) {
  std::size_t e = 1;
  for (Element x = 0; x < g.order(); ++x) e = std::lcm(e, element_order(g, x));
  return e;
}

std::vector<Element> generating_set(const FiniteGroup& g) {
  std::vector<Element> gens;
  std::vector<char> covered(g.order(), 0);
  covered[0] = 1;
  std::size_t covered_count = 1;
  for (Element x = 0; x < g.order() && covered_count < g.order(); ++x) {
    if (covered[x]) continue;
    gens.push_back(x);
    const auto h = generate(g, gens);
    covered_count = h.order();
    for (auto y : h.elements()) covered[y] = 1;
  }
  return gens;
}

}  // namespace orbitgf

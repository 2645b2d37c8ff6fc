#include "orbitgf/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitgf/error.hpp"

namespace orbitgf {

namespace {

std::uint64_t state_count(const FiniteGroup& g, unsigned n, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (unsigned i = 0; i < n; ++i) {
    total *= g.order();
    if (total > limit) {
      throw Error(ErrorCode::TooLarge, "|G|^n exceeds " + std::to_string(limit) + " states (|G|=" +
                                           std::to_string(g.order()) + ", n=" + std::to_string(n) +
                                           ")");
    }
  }
  return total;
}

class UnionFind {
 public:
  explicit UnionFind(std::uint64_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

std::vector<Element> digits(std::uint64_t x, std::size_t base, unsigned n) {
  std::vector<Element> d(n);
  for (unsigned i = 0; i < n; ++i) {
    d[i] = static_cast<Element>(x % base);
    x /= base;
  }
  return d;
}

bool pairwise_commute(const FiniteGroup& g, const std::vector<Element>& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (!g.commute(d[i], d[j])) return false;
    }
  }
  return true;
}

// Orbits of the conjugation action restricted to tuples accepted by `keep`.
// Orbits under a generating set are the orbits of the whole group.
template <class Keep>
Integer union_find_orbits(const FiniteGroup& g, unsigned n, std::uint64_t states, Keep keep) {
  const auto gens = generating_set(g);
  const std::size_t base = g.order();
  UnionFind uf(states);
  std::vector<char> kept(states, 0);
  for (std::uint64_t x = 0; x < states; ++x) {
    const auto d = digits(x, base, n);
    if (!keep(d)) continue;
    kept[x] = 1;
    for (auto s : gens) {
      std::uint64_t y = 0;
      for (unsigned i = n; i-- > 0;) y = y * base + g.conjugate(d[i], s);
      uf.unite(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y));
    }
  }
  std::uint64_t roots = 0;
  for (std::uint64_t x = 0; x < states; ++x) {
    if (kept[x] && uf.find(static_cast<std::uint32_t>(x)) == x) ++roots;
  }
  return Integer(static_cast<unsigned long>(roots));
}

Integer count_commuting(const FiniteGroup& g, const std::vector<Element>& pool, unsigned depth) {
  if (depth == 0) return 1;
  if (depth == 1) return Integer(static_cast<unsigned long>(pool.size()));
  Integer total = 0;
  std::vector<Element> next;
  for (auto x : pool) {
    next.clear();
    for (auto y : pool) {
      if (g.commute(x, y)) next.push_back(y);
    }
    total += count_commuting(g, next, depth - 1);
  }
  return total;
}

std::vector<Element> all_elements(const FiniteGroup& g) {
  std::vector<Element> v(g.order());
  std::iota(v.begin(), v.end(), Element{0});
  return v;
}

void cross_check(const Integer& a, const Integer& b, const char* what, unsigned n) {
  if (a != b) {
    throw std::logic_error(std::string(what) + " oracle disagreement at n=" + std::to_string(n) +
                           ": union-find " + a.get_str() + " vs Burnside " + b.get_str());
  }
}

}  // namespace

Integer alpha_burnside(const FiniteGroup& g, unsigned n, std::uint64_t limit) {
  state_count(g, n, limit);
  Integer sum = 0;
  for (Element x = 0; x < g.order(); ++x) {
    Integer z = static_cast<unsigned long>(centralizer(g, x).order());
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), z.get_mpz_t(), n);
    sum += p;
  }
  return sum / static_cast<unsigned long>(g.order());
}

Integer commuting_tuple_count(const FiniteGroup& g, unsigned n, std::uint64_t limit) {
  state_count(g, n, limit);
  return count_commuting(g, all_elements(g), n);
}

Integer beta_burnside(const FiniteGroup& g, unsigned n, std::uint64_t limit) {
  state_count(g, n, limit);
  // Fixed points of x are the commuting tuples inside Z_G(x).
  Integer sum = 0;
  for (Element x = 0; x < g.order(); ++x) {
    sum += count_commuting(g, centralizer(g, x).elements(), n);
  }
  return sum / static_cast<unsigned long>(g.order());
}

OrbitCount alpha_bruteforce(const FiniteGroup& g, unsigned n, std::uint64_t limit) {
  const auto states = state_count(g, n, limit);
  OrbitCount out{n, union_find_orbits(g, n, states, [](const auto&) { return true; }),
                 OrbitMethod::DirectUnionFind};
  cross_check(out.count, alpha_burnside(g, n, limit), "alpha", n);
  return out;
}

OrbitCount beta_bruteforce(const FiniteGroup& g, unsigned n, std::uint64_t limit) {
  const auto states = state_count(g, n, limit);
  OrbitCount out{n,
                 union_find_orbits(g, n, states,
                                   [&g](const auto& d) { return pairwise_commute(g, d); }),
                 OrbitMethod::DirectUnionFind};
  cross_check(out.count, beta_burnside(g, n, limit), "beta", n);
  return out;
}

}  // namespace orbitgf

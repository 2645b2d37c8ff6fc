#include "orbitgf/constructions.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>

#include "orbitgf/error.hpp"

namespace orbitgf {

std::size_t PcPresentation::predicted_order() const {
  std::size_t n = 1;
  for (auto r : relative_orders) n *= r;
  return n;
}

namespace {

// Mixed-radix bookkeeping for a presentation with the first generator most
// significant.
struct Radix {
  std::vector<std::size_t> r;
  std::vector<std::size_t> w;  // w[i] = prod_{l > i} r[l]
  std::size_t total = 1;

  explicit Radix(const std::vector<std::size_t>& orders) : r(orders), w(orders.size()) {
    for (std::size_t i = orders.size(); i-- > 0;) {
      w[i] = total;
      total *= orders[i];
    }
  }

  std::size_t exponent(std::size_t x, std::size_t i) const { return (x / w[i]) % r[i]; }
};

std::string word_text(const PcWord& word) {
  std::string s;
  for (const auto& [g, e] : word) {
    if (!s.empty()) s += " ";
    s += "g" + std::to_string(g) + "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

class Collector {
 public:
  explicit Collector(const PcPresentation& pc) : pc_(pc), radix_(pc.relative_orders) {
    n_ = pc.size();
    if (n_ == 0) throw Error(ErrorCode::MalformedPresentation, "no generators");
    for (std::size_t i = 0; i < n_; ++i) {
      if (pc.relative_orders[i] < 2) {
        throw Error(ErrorCode::MalformedPresentation,
                    "relative order of g" + std::to_string(i) + " must be at least 2");
      }
    }
    if (radix_.total > (std::size_t{1} << 24)) {
      throw Error(ErrorCode::TooLarge, "presentation defines " + std::to_string(radix_.total) +
                                           " elements");
    }
    power_.assign(n_, nullptr);
    conj_.assign(n_, std::vector<const PcWord*>(n_, nullptr));
    for (const auto& p : pc.powers) {
      if (p.gen >= n_) bad("power relation for unknown generator g" + std::to_string(p.gen));
      if (power_[p.gen]) bad("two power relations for g" + std::to_string(p.gen));
      check_word(p.word, p.gen, "power relation of g" + std::to_string(p.gen));
      power_[p.gen] = &p.word;
    }
    for (const auto& c : pc.conjugates) {
      if (c.gen >= n_ || c.by >= c.gen) {
        bad("conjugate relation g" + std::to_string(c.gen) + " by g" + std::to_string(c.by) +
            " needs by < gen < " + std::to_string(n_));
      }
      if (conj_[c.by][c.gen]) {
        bad("two conjugate relations for g" + std::to_string(c.gen) + " by g" +
            std::to_string(c.by));
      }
      check_word(c.word, c.by,
                 "conjugate relation g" + std::to_string(c.gen) + " by g" + std::to_string(c.by));
      conj_[c.by][c.gen] = &c.word;
    }
    t_.assign(radix_.total * n_, 0);
    inverse_.assign(n_, 0);
  }

  FiniteGroup run() {
    for (std::size_t k = n_; k-- > 0;) fill_column(k);
    return finish();
  }

 private:
  [[noreturn]] static void bad(const std::string& what) {
    throw Error(ErrorCode::MalformedPresentation, what);
  }

  void check_word(const PcWord& word, std::size_t after, const std::string& where) const {
    for (const auto& [g, e] : word) {
      if (g >= n_ || g <= after) {
        bad(where + ": letter g" + std::to_string(g) + " must lie in g" +
            std::to_string(after + 1) + "..g" + std::to_string(n_ - 1));
      }
    }
  }

  std::size_t unit(std::size_t i) const { return radix_.w[i]; }

  std::size_t step(std::size_t x, std::size_t gen) const { return t_[x * n_ + gen]; }

  // x * y for y in the subgroup generated by g_{k+1}.., using finished columns.
  std::size_t times(std::size_t x, std::size_t y, std::size_t k) const {
    for (std::size_t m = k + 1; m < n_; ++m) {
      for (std::size_t e = radix_.exponent(y, m); e > 0; --e) x = step(x, m);
    }
    return x;
  }

  std::size_t eval_word(const PcWord& word, std::size_t k) const {
    std::size_t x = 0;
    for (const auto& [g, e] : word) {
      const long reps = e < 0 ? -e : e;
      for (long i = 0; i < reps; ++i) x = e < 0 ? times(x, inverse_[g], k) : step(x, g);
    }
    return x;
  }

  // Extends generator images to the whole subgroup S = <g_{k+1}, ...>.
  std::vector<std::size_t> extend(const std::vector<std::size_t>& images, std::size_t k) const {
    const std::size_t size = radix_.w[k];
    std::vector<std::size_t> map(size, 0);
    for (std::size_t s = 0; s < size; ++s) {
      std::size_t x = 0;
      for (std::size_t m = k + 1; m < n_; ++m) {
        for (std::size_t e = radix_.exponent(s, m); e > 0; --e) x = times(x, images[m], k);
      }
      map[s] = x;
    }
    return map;
  }

  void fill_column(std::size_t k) {
    const std::size_t sub = radix_.w[k];  // |S|, S = <g_{k+1}, ...>
    const std::size_t power = power_[k] ? eval_word(*power_[k], k) : 0;

    std::vector<std::size_t> images(n_, 0);
    for (std::size_t j = k + 1; j < n_; ++j) {
      images[j] = conj_[k][j] ? eval_word(*conj_[k][j], k) : unit(j);
    }
    std::vector<std::size_t> psi = extend(images, k);
    if (pc_.convention == PcConvention::Left) {
      // The listed images define x -> g_k x g_k^-1; collection needs its inverse.
      std::vector<std::size_t> inv(sub, sub);
      for (std::size_t s = 0; s < sub; ++s) {
        if (psi[s] >= sub || inv[psi[s]] != sub) {
          throw Error(ErrorCode::InconsistentPresentation,
                      "conjugation by g" + std::to_string(k) + " is not a bijection of g" +
                          std::to_string(k + 1) + "..");
        }
        inv[psi[s]] = s;
      }
      psi = std::move(inv);
    }

    for (std::size_t x = 0; x < radix_.total; ++x) {
      const std::size_t tail = x % sub;
      const std::size_t e = radix_.exponent(x, k);
      std::size_t base = x - tail;
      std::size_t carry = 0;
      if (e + 1 < radix_.r[k]) {
        base += sub;
      } else {
        base -= e * sub;
        carry = power;
      }
      t_[x * n_ + k] = base + times(carry, psi[tail], k);
    }

    // g_k^-1 inside <g_k, ...>: the last power before returning to 1.
    std::size_t y = unit(k);
    std::size_t prev = 0;
    for (std::size_t guard = 0; y != 0; ++guard) {
      if (guard > radix_.total) {
        throw Error(ErrorCode::InconsistentPresentation,
                    "powers of g" + std::to_string(k) + " never return to the identity");
      }
      prev = y;
      y = step(y, k);
    }
    inverse_[k] = prev;
  }

  FiniteGroup finish() {
    const std::size_t total = radix_.total;
    std::vector<Element> table(total * total);
    for (std::size_t x = 0; x < total; ++x) {
      for (std::size_t y = 0; y < total; ++y) {
        std::size_t v = x;
        for (std::size_t m = 0; m < n_; ++m) {
          for (std::size_t e = radix_.exponent(y, m); e > 0; --e) v = step(v, m);
        }
        table[x * total + y] = static_cast<Element>(v);
      }
    }
    for (std::size_t y = 0; y < total; ++y) {
      if (table[y] != y) {
        throw Error(ErrorCode::InconsistentPresentation,
                    "normal form of element " + std::to_string(y) + " does not collect to itself");
      }
    }
    // (x y) g_k = x (y g_k) for all x, y, k makes right multiplication by any
    // word depend only on the element it represents, hence associativity.
    for (std::size_t k = 0; k < n_; ++k) {
      for (std::size_t y = 0; y < total; ++y) {
        const std::size_t yk = step(y, k);
        for (std::size_t x = 0; x < total; ++x) {
          if (step(table[x * total + y], k) != table[x * total + yk]) {
            throw Error(ErrorCode::InconsistentPresentation,
                        "relations disagree: (x*y)*g" + std::to_string(k) + " != x*(y*g" +
                            std::to_string(k) + ") for x=" + std::to_string(x) +
                            ", y=" + std::to_string(y) + relation_hint(k));
          }
        }
      }
    }
    try {
      return verify_group_axioms(std::move(table), total,
                                 total > kExhaustiveAssociativityLimit
                                     ? AssociativityCheck::Sampled
                                     : AssociativityCheck::Auto,
                                 labels());
    } catch (const Error& e) {
      throw Error(ErrorCode::InconsistentPresentation, e.what());
    }
  }

  std::string relation_hint(std::size_t k) const {
    std::string s;
    if (power_[k]) s += "; g" + std::to_string(k) + "^r = " + word_text(*power_[k]);
    return s;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> names = pc_.generator_names;
    if (names.size() != n_) {
      names.clear();
      for (std::size_t i = 0; i < n_; ++i) names.push_back("g" + std::to_string(i));
    }
    std::vector<std::string> out(radix_.total);
    for (std::size_t x = 0; x < radix_.total; ++x) {
      std::string s;
      for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t e = radix_.exponent(x, i);
        if (e == 0) continue;
        if (!s.empty()) s += "*";
        s += names[i];
        if (e > 1) s += "^" + std::to_string(e);
      }
      out[x] = s.empty() ? "1" : s;
    }
    return out;
  }

  const PcPresentation& pc_;
  Radix radix_;
  std::size_t n_ = 0;
  std::vector<const PcWord*> power_;
  std::vector<std::vector<const PcWord*>> conj_;
  std::vector<std::size_t> t_;  // t_[x * n + k] = x * g_k
  std::vector<std::size_t> inverse_;
};

PcWord exps(std::initializer_list<std::size_t> v) {
  PcWord w;
  std::size_t i = 0;
  for (auto e : v) {
    if (e) w.emplace_back(i, static_cast<long>(e));
    ++i;
  }
  return w;
}

void add_conj(PcPresentation& pc, std::size_t gen, std::size_t by, PcWord w) {
  pc.conjugates.push_back({gen, by, std::move(w)});
}

void add_power(PcPresentation& pc, std::size_t gen, PcWord w) {
  pc.powers.push_back({gen, std::move(w)});
}

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::size_t log2_exact(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return (std::size_t{1} << k) == n ? k : 0;
}

[[noreturn]] void out_of_range(const std::string& what) {
  throw Error(ErrorCode::ParameterOutOfRange, what);
}

}  // namespace

std::size_t pc_index(const PcPresentation& pc, const std::vector<std::size_t>& exponents) {
  Radix radix(pc.relative_orders);
  std::size_t x = 0;
  for (std::size_t i = 0; i < exponents.size() && i < pc.size(); ++i) {
    x += (exponents[i] % radix.r[i]) * radix.w[i];
  }
  return x;
}

Element pc_generator(const PcPresentation& pc, std::size_t i) {
  return static_cast<Element>(Radix(pc.relative_orders).w.at(i));
}

FiniteGroup collect(const PcPresentation& pc) { return Collector(pc).run(); }

// ------------------------------------------------------------- named groups

PcPresentation cyclic_presentation(std::size_t n) {
  if (n < 2) out_of_range("cyclic presentation needs n >= 2");
  PcPresentation pc;
  pc.relative_orders = {n};
  pc.generator_names = {"a"};
  return pc;
}

PcPresentation dihedral_presentation(std::size_t order) {
  if (order < 4 || order % 2) out_of_range("dihedral order must be even and at least 4");
  const std::size_t n = order / 2;
  PcPresentation pc;
  pc.relative_orders = {2, n};
  pc.generator_names = {"b", "a"};
  add_conj(pc, 1, 0, {{1, static_cast<long>(n - 1)}});
  return pc;
}

PcPresentation quaternion_presentation(std::size_t order) {
  const std::size_t k = log2_exact(order);
  if (k < 3) out_of_range("quaternion order must be a power of 2, at least 8");
  const std::size_t n = order / 2;
  PcPresentation pc;
  pc.relative_orders = {2, n};
  pc.generator_names = {"b", "a"};
  add_power(pc, 0, {{1, static_cast<long>(n / 2)}});
  add_conj(pc, 1, 0, {{1, static_cast<long>(n - 1)}});
  return pc;
}

PcPresentation semidihedral_presentation(std::size_t order) {
  const std::size_t k = log2_exact(order);
  if (k < 4) out_of_range("semidihedral order must be a power of 2, at least 16");
  const std::size_t n = order / 2;
  PcPresentation pc;
  pc.relative_orders = {2, n};
  pc.generator_names = {"b", "a"};
  add_conj(pc, 1, 0, {{1, static_cast<long>(n / 2 - 1)}});
  return pc;
}

PcPresentation extraspecial_presentation(unsigned p, std::size_t order, ExtraspecialType type) {
  if (!is_prime(p)) out_of_range("extraspecial p must be prime");
  std::size_t rank = 0;
  std::size_t q = 1;
  while (q < order) {
    q *= p;
    ++rank;
  }
  if (q != order || rank < 3 || rank % 2 == 0) {
    out_of_range("extraspecial order must be p^(2n+1) with n >= 1");
  }
  if (type == ExtraspecialType::OddExponentP && p == 2) {
    out_of_range("the exponent-p type needs an odd prime");
  }
  if (type == ExtraspecialType::TwoType && p != 2) out_of_range("the two-type needs p = 2");
  const std::size_t n = (rank - 1) / 2;
  const std::size_t c = 2 * n;
  PcPresentation pc;
  pc.relative_orders.assign(rank, p);
  for (std::size_t i = 0; i < n; ++i) {
    pc.generator_names.push_back("a" + std::to_string(i + 1));
    pc.generator_names.push_back("b" + std::to_string(i + 1));
  }
  pc.generator_names.push_back("c");
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = 2 * i;
    const std::size_t b = 2 * i + 1;
    if (type == ExtraspecialType::OddExponentP) {
      // [a_i, b_i] = c
      add_conj(pc, b, a, {{b, 1}, {c, static_cast<long>(p - 1)}});
    } else {
      // a_i^2 = c, b_i a_i = a_i^-1 b_i
      add_power(pc, a, {{c, 1}});
      add_conj(pc, b, a, {{b, 1}, {c, 1}});
    }
  }
  return pc;
}

std::string to_string(StemFamily f) {
  static const char* names[] = {"Phi2",   "Phi3",   "Phi4",   "Phi5",   "Phi6",   "Phi7",
                                "Phi8",   "Phi9",   "Phi10",  "Gamma2", "Gamma3", "Gamma4",
                                "Gamma5", "Gamma6", "Gamma7", "Gamma8"};
  return names[static_cast<int>(f)];
}

StemFamily parse_stem_family(const std::string& name) {
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (int i = 0; i <= static_cast<int>(StemFamily::Gamma8); ++i) {
    std::string candidate = to_string(static_cast<StemFamily>(i));
    for (auto& c : candidate) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (candidate == lower) return static_cast<StemFamily>(i);
  }
  throw Error(ErrorCode::SpecParse, "unknown family '" + name + "'");
}

bool is_gamma(StemFamily f) { return f >= StemFamily::Gamma2; }

std::size_t stem_order(StemFamily f, unsigned p) {
  std::size_t rank = 5;
  if (f == StemFamily::Phi2 || f == StemFamily::Gamma2) rank = 3;
  if (f == StemFamily::Phi3 || f == StemFamily::Gamma3) rank = 4;
  std::size_t q = 1;
  for (std::size_t i = 0; i < rank; ++i) q *= p;
  return q;
}

PcPresentation stem_presentation(StemFamily family, unsigned p) {
  if (is_gamma(family)) {
    if (p != 2) out_of_range(to_string(family) + " is a family of 2-groups; p must be 2");
  } else if (!is_prime(p) || p == 2) {
    out_of_range(to_string(family) + " needs an odd prime p");
  }
  const long q = static_cast<long>(p);
  PcPresentation pc;
  switch (family) {
    case StemFamily::Phi2:
      pc.relative_orders.assign(3, p);
      pc.generator_names = {"a1", "a2", "b"};
      add_conj(pc, 1, 0, {{1, 1}, {2, q - 1}});
      break;
    case StemFamily::Phi3:
      pc.relative_orders.assign(4, p);
      pc.generator_names = {"a", "a1", "a2", "a3"};
      add_conj(pc, 1, 0, exps({0, 1, 1, 0}));
      add_conj(pc, 2, 0, exps({0, 0, 1, 1}));
      break;
    case StemFamily::Phi4:
      pc.relative_orders.assign(5, p);
      pc.generator_names = {"a", "a1", "a2", "b1", "b2"};
      add_conj(pc, 1, 0, exps({0, 1, 0, 1, 0}));
      add_conj(pc, 2, 0, exps({0, 0, 1, 0, 1}));
      break;
    case StemFamily::Phi5:
      pc.relative_orders.assign(5, p);
      pc.generator_names = {"a1", "a2", "a3", "a4", "b"};
      add_conj(pc, 1, 0, {{1, 1}, {4, q - 1}});
      add_conj(pc, 3, 2, {{3, 1}, {4, q - 1}});
      break;
    case StemFamily::Phi6:
      pc.relative_orders.assign(5, p);
      pc.generator_names = {"a1", "a2", "b", "b1", "b2"};
      add_conj(pc, 1, 0, {{1, 1}, {2, q - 1}});
      add_conj(pc, 2, 0, exps({0, 0, 1, 1, 0}));
      add_conj(pc, 2, 1, exps({0, 0, 1, 0, 1}));
      break;
    case StemFamily::Phi7:
      pc.relative_orders.assign(5, p);
      pc.generator_names = {"a", "a1", "a2", "b", "a3"};
      add_conj(pc, 1, 0, exps({0, 1, 1, 0, 0}));
      add_conj(pc, 2, 0, exps({0, 0, 1, 0, 1}));
      add_conj(pc, 3, 1, {{3, 1}, {4, q - 1}});
      if (p == 3) add_power(pc, 1, {{4, 2}});  // a1^3 a3 = 1
      break;
    case StemFamily::Phi8:
      // a2, a2^p, a1, b = a1^p, b^p
      pc.relative_orders.assign(5, p);
      pc.generator_names = {"a2", "a2p", "a1", "b", "bp"};
      add_power(pc, 0, {{1, 1}});
      add_power(pc, 2, {{3, 1}});
      add_power(pc, 3, {{4, 1}});
      add_conj(pc, 2, 0, exps({0, 0, 1, 1, 0}));
      add_conj(pc, 3, 0, exps({0, 0, 0, 1, 1}));
      add_conj(pc, 2, 1, exps({0, 0, 1, 0, 1}));
      break;
    case StemFamily::Phi9:
    case StemFamily::Phi10:
      pc.relative_orders.assign(5, p);
      pc.generator_names = {"a", "a1", "a2", "a3", "a4"};
      add_conj(pc, 1, 0, exps({0, 1, 1, 0, 0}));
      add_conj(pc, 2, 0, exps({0, 0, 1, 1, 0}));
      add_conj(pc, 3, 0, exps({0, 0, 0, 1, 1}));
      if (family == StemFamily::Phi10) add_conj(pc, 2, 1, {{2, 1}, {4, q - 1}});
      if (p == 3) {
        add_power(pc, 1, exps({0, 0, 0, 2, 1}));  // a1^3 a2^3 a3 = 1
        add_power(pc, 2, exps({0, 0, 0, 0, 2}));  // a2^3 a4 = 1
      }
      break;
    case StemFamily::Gamma2:
      return dihedral_presentation(8);
    case StemFamily::Gamma3:
      return dihedral_presentation(16);
    case StemFamily::Gamma4:
      pc.relative_orders = {2, 4, 4};
      pc.generator_names = {"b", "a1", "a2"};
      add_conj(pc, 1, 0, {{1, 3}});
      add_conj(pc, 2, 0, {{2, 3}});
      break;
    case StemFamily::Gamma5:
      pc.relative_orders.assign(5, 2);
      pc.generator_names = {"a1", "a2", "a3", "a4", "b"};
      pc.convention = PcConvention::Left;
      add_conj(pc, 1, 0, {{4, 1}, {1, -1}});
      add_conj(pc, 3, 0, {{4, 1}, {3, -1}});
      add_conj(pc, 2, 1, {{4, 1}, {2, -1}});
      break;
    case StemFamily::Gamma6:
      pc.relative_orders = {2, 2, 8};
      pc.generator_names = {"b1", "b2", "a"};
      add_conj(pc, 2, 0, {{2, 7}});
      add_conj(pc, 2, 1, {{2, 5}});
      break;
    case StemFamily::Gamma7:
      pc.relative_orders = {4, 2, 2, 2};
      pc.generator_names = {"a", "b1", "b2", "b3"};
      pc.convention = PcConvention::Left;
      add_conj(pc, 2, 0, {{1, 1}, {2, 1}});
      add_conj(pc, 3, 0, {{2, 1}, {3, 1}});
      break;
    case StemFamily::Gamma8:
      return dihedral_presentation(32);
  }
  return pc;
}

FiniteGroup stem_group(StemFamily family, unsigned p) {
  auto g = collect(stem_presentation(family, p));
  if (g.order() != stem_order(family, p)) {
    throw Error(ErrorCode::InconsistentPresentation,
                to_string(family) + " collected to order " + std::to_string(g.order()));
  }
  return g;
}

// ------------------------------------------------------------------ builders

FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) out_of_range("cyclic group needs n >= 1");
  std::vector<Element> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = static_cast<Element>((i + j) % n);
  }
  return verify_group_axioms(std::move(table), n);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order();
  const std::size_t nb = b.order();
  const std::size_t n = na * nb;
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto u = a.mul(static_cast<Element>(x / nb), static_cast<Element>(y / nb));
      const auto v = b.mul(static_cast<Element>(x % nb), static_cast<Element>(y % nb));
      table[x * n + y] = static_cast<Element>(u * nb + v);
    }
  }
  // Both factors are already verified, so sampling suffices for large products.
  return verify_group_axioms(std::move(table), n,
                             n > kExhaustiveAssociativityLimit ? AssociativityCheck::Sampled
                                                                : AssociativityCheck::Auto);
}

FiniteGroup dihedral_group(std::size_t order) { return collect(dihedral_presentation(order)); }
FiniteGroup quaternion_group(std::size_t order) {
  return collect(quaternion_presentation(order));
}
FiniteGroup semidihedral_group(std::size_t order) {
  return collect(semidihedral_presentation(order));
}
FiniteGroup extraspecial_group(unsigned p, std::size_t order, ExtraspecialType type) {
  return collect(extraspecial_presentation(p, order, type));
}

FiniteGroup permutation_group(std::size_t degree,
                              const std::vector<std::vector<std::size_t>>& generators) {
  if (degree == 0 || degree > 64) out_of_range("permutation degree must be in 1..64");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& g = generators[i];
    std::vector<char> hit(degree, 0);
    if (g.size() != degree) {
      throw Error(ErrorCode::NotClosed, "generator " + std::to_string(i) + " has " +
                                            std::to_string(g.size()) + " images, expected " +
                                            std::to_string(degree));
    }
    for (auto x : g) {
      if (x >= degree || hit[x]) {
        throw Error(ErrorCode::NotClosed,
                    "generator " + std::to_string(i) + " is not a permutation");
      }
      hit[x] = 1;
    }
  }
  using Perm = std::vector<std::size_t>;
  auto compose = [](const Perm& p, const Perm& q) {  // p first, then q
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
    return r;
  };
  Perm id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = i;
  std::vector<Perm> elements{id};
  std::map<Perm, Element> index{{id, 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& s : generators) {
      Perm next = compose(elements[head], s);
      if (index.emplace(next, static_cast<Element>(elements.size())).second) {
        elements.push_back(std::move(next));
        if (elements.size() > (std::size_t{1} << 16)) {
          throw Error(ErrorCode::TooLarge, "permutation group exceeds 65536 elements");
        }
      }
    }
  }
  const std::size_t n = elements.size();
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      table[a * n + b] = index.at(compose(elements[a], elements[b]));
    }
  }
  std::vector<std::string> labels;
  for (const auto& p : elements) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
    labels.push_back(s + "]");
  }
  return verify_group_axioms(std::move(table), n, AssociativityCheck::Auto, std::move(labels));
}

// --------------------------------------------------------------- semidirect

std::vector<Element> automorphism_from_images(const PcPresentation& pc, const FiniteGroup& n,
                                              const std::vector<PcWord>& images) {
  if (images.size() != pc.size()) {
    throw Error(ErrorCode::NotAutomorphism, "expected images of " + std::to_string(pc.size()) +
                                                " generators, got " +
                                                std::to_string(images.size()));
  }
  Radix radix(pc.relative_orders);
  if (radix.total != n.order()) {
    throw Error(ErrorCode::NotAutomorphism, "presentation does not match the group");
  }
  auto power = [&](Element x, long e) {
    Element base = e < 0 ? n.inv(x) : x;
    Element out = 0;
    for (long i = 0; i < (e < 0 ? -e : e); ++i) out = n.mul(out, base);
    return out;
  };
  std::vector<Element> gen_image(pc.size());
  for (std::size_t j = 0; j < pc.size(); ++j) {
    Element x = 0;
    for (const auto& [g, e] : images[j]) {
      if (g >= pc.size()) {
        throw Error(ErrorCode::NotAutomorphism, "image word uses unknown generator");
      }
      x = n.mul(x, power(static_cast<Element>(radix.w[g]), e));
    }
    gen_image[j] = x;
  }
  std::vector<Element> map(n.order());
  std::vector<char> hit(n.order(), 0);
  for (std::size_t s = 0; s < n.order(); ++s) {
    Element x = 0;
    for (std::size_t j = 0; j < pc.size(); ++j) {
      x = n.mul(x, power(gen_image[j], static_cast<long>(radix.exponent(s, j))));
    }
    if (hit[x]) {
      throw Error(ErrorCode::NotAutomorphism, "generator images do not give a bijection");
    }
    hit[x] = 1;
    map[s] = x;
  }
  return map;
}

FiniteGroup semidirect(const FiniteGroup& n, const FiniteGroup& h,
                       const std::vector<ActionGenerator>& action) {
  const std::size_t nn = n.order();
  const std::size_t nh = h.order();
  for (const auto& a : action) {
    if (a.element >= nh) throw Error(ErrorCode::NotAHomomorphism, "acting element out of range");
    if (a.images.size() != nn) {
      throw Error(ErrorCode::NotAutomorphism, "action of element " + std::to_string(a.element) +
                                                  " is not a map on N");
    }
    std::vector<char> hit(nn, 0);
    for (auto x : a.images) {
      if (x >= nn || hit[x]) {
        throw Error(ErrorCode::NotAutomorphism,
                    "action of element " + std::to_string(a.element) + " is not a bijection");
      }
      hit[x] = 1;
    }
    for (Element x = 0; x < nn; ++x) {
      for (Element y = 0; y < nn; ++y) {
        if (a.images[n.mul(x, y)] != n.mul(a.images[x], a.images[y])) {
          throw Error(ErrorCode::NotAutomorphism,
                      "action of element " + std::to_string(a.element) + " breaks " +
                          std::to_string(x) + "*" + std::to_string(y));
        }
      }
    }
  }

  // phi_{h s} = phi_h o phi_s, spread over H from the identity.
  std::vector<std::vector<Element>> phi(nh);
  std::vector<Element> id(nn);
  for (Element x = 0; x < nn; ++x) id[x] = x;
  phi[0] = id;
  std::deque<Element> queue{0};
  while (!queue.empty()) {
    const Element x = queue.front();
    queue.pop_front();
    for (const auto& a : action) {
      const Element y = h.mul(x, a.element);
      std::vector<Element> map(nn);
      for (Element m = 0; m < nn; ++m) map[m] = phi[x][a.images[m]];
      if (phi[y].empty()) {
        phi[y] = std::move(map);
        queue.push_back(y);
      } else if (phi[y] != map) {
        throw Error(ErrorCode::NotAHomomorphism,
                    "two products give element " + std::to_string(y) + " different actions");
      }
    }
  }
  for (Element x = 0; x < nh; ++x) {
    if (phi[x].empty()) {
      throw Error(ErrorCode::NotAHomomorphism, "acting elements do not generate H");
    }
  }

  const std::size_t total = nn * nh;
  std::vector<Element> table(total * total);
  for (std::size_t a = 0; a < total; ++a) {
    const auto n1 = static_cast<Element>(a / nh);
    const auto h1 = static_cast<Element>(a % nh);
    for (std::size_t b = 0; b < total; ++b) {
      const auto n2 = static_cast<Element>(b / nh);
      const auto h2 = static_cast<Element>(b % nh);
      table[a * total + b] =
          static_cast<Element>(n.mul(n1, phi[h1][n2]) * nh + h.mul(h1, h2));
    }
  }
  return verify_group_axioms(std::move(table), total,
                             total > kExhaustiveAssociativityLimit ? AssociativityCheck::Sampled
                                                                    : AssociativityCheck::Auto);
}

FrobeniusResult frobenius_check(const FiniteGroup& g, const Subgroup& h) {
  FrobeniusResult result;
  if (h.order() <= 1 || h.order() >= g.order()) return result;
  std::vector<char> in_h(g.order(), 0);
  for (auto x : h.elements()) in_h[x] = 1;
  std::vector<char> covered(g.order(), 0);
  for (Element x = 0; x < g.order(); ++x) {
    bool meets = false;
    for (auto y : h.elements()) {
      const Element c = g.conjugate(y, x);
      if (y != 0 && in_h[c] && !in_h[x]) meets = true;
      if (c != 0) covered[c] = 1;
    }
    if (meets) {
      result.witness = x;
      return result;
    }
  }
  std::vector<Element> kernel{0};
  for (Element x = 1; x < g.order(); ++x) {
    if (!covered[x]) kernel.push_back(x);
  }
  if (kernel.size() * h.order() != g.order()) return result;
  try {
    result.kernel = Subgroup::from_elements(g, kernel);
  } catch (const Error&) {
    return result;
  }
  result.is_frobenius = true;
  return result;
}

// ------------------------------------------------------------------ dispatch

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::optional<PcPresentation> presentation_of(const GroupSpec& s) {
  if (auto* pc = std::get_if<spec::Pc>(&s.v)) return pc->presentation;
  if (auto* c = std::get_if<spec::Cyclic>(&s.v)) {
    if (c->n < 2) return std::nullopt;
    return cyclic_presentation(c->n);
  }
  if (auto* st = std::get_if<spec::Stem>(&s.v)) return stem_presentation(st->family, st->p);
  if (auto* e = std::get_if<spec::Extraspecial>(&s.v)) {
    return extraspecial_presentation(e->p, e->order, e->type);
  }
  if (auto* d = std::get_if<spec::Dihedral>(&s.v)) return dihedral_presentation(d->order);
  if (auto* q = std::get_if<spec::Quaternion>(&s.v)) return quaternion_presentation(q->order);
  if (auto* q = std::get_if<spec::Semidihedral>(&s.v)) {
    return semidihedral_presentation(q->order);
  }
  return std::nullopt;
}

std::size_t predicted_order(const GroupSpec& s) {
  return std::visit(
      Overloaded{
          [](const spec::Trivial&) -> std::size_t { return 1; },
          [](const spec::Cyclic& c) -> std::size_t { return c.n; },
          [](const spec::DirectProduct& d) -> std::size_t {
            std::size_t n = 1;
            for (const auto& f : d.factors) n *= predicted_order(f);
            return n;
          },
          [](const spec::Dihedral& d) -> std::size_t { return d.order; },
          [](const spec::Quaternion& q) -> std::size_t { return q.order; },
          [](const spec::Semidihedral& q) -> std::size_t { return q.order; },
          [](const spec::Extraspecial& e) -> std::size_t { return e.order; },
          [](const spec::Permutations&) -> std::size_t { return 0; },
          [](const spec::Table& t) -> std::size_t { return t.rows.size(); },
          [](const spec::Pc& pc) -> std::size_t { return pc.presentation.predicted_order(); },
          [](const spec::Semidirect& sd) -> std::size_t {
            return predicted_order(*sd.normal) * predicted_order(*sd.acting);
          },
          [](const spec::Stem& st) -> std::size_t { return stem_order(st.family, st.p); },
      },
      s.v);
}

FiniteGroup build(const GroupSpec& s) {
  return std::visit(
      Overloaded{
          [](const spec::Trivial&) { return cyclic_group(1); },
          [](const spec::Cyclic& c) { return cyclic_group(c.n); },
          [](const spec::DirectProduct& d) {
            if (d.factors.empty()) return cyclic_group(1);
            FiniteGroup acc = build(d.factors.front());
            for (std::size_t i = 1; i < d.factors.size(); ++i) {
              acc = direct_product(acc, build(d.factors[i]));
            }
            return acc;
          },
          [](const spec::Dihedral& d) { return dihedral_group(d.order); },
          [](const spec::Quaternion& q) { return quaternion_group(q.order); },
          [](const spec::Semidihedral& q) { return semidihedral_group(q.order); },
          [](const spec::Extraspecial& e) { return extraspecial_group(e.p, e.order, e.type); },
          [](const spec::Permutations& p) { return permutation_group(p.degree, p.generators); },
          [](const spec::Table& t) { return verify_group_axioms(t.rows); },
          [](const spec::Pc& pc) { return collect(pc.presentation); },
          [](const spec::Semidirect& sd) {
            const FiniteGroup n = build(*sd.normal);
            const FiniteGroup h = build(*sd.acting);
            const auto npc = presentation_of(*sd.normal);
            std::vector<ActionGenerator> action;
            for (const auto& a : sd.action) {
              ActionGenerator gen;
              gen.element = a.element;
              if (a.permutation) {
                gen.images = *a.permutation;
              } else if (a.images) {
                if (!npc) {
                  throw Error(ErrorCode::NotAutomorphism,
                              "generator images need a polycyclic normal subgroup");
                }
                gen.images = automorphism_from_images(*npc, n, *a.images);
              } else {
                throw Error(ErrorCode::NotAutomorphism, "action entry has no map");
              }
              action.push_back(std::move(gen));
            }
            return semidirect(n, h, action);
          },
          [](const spec::Stem& st) { return stem_group(st.family, st.p); },
      },
      s.v);
}

}  // namespace orbitgf

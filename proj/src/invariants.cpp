#include "orbitgf/invariants.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "orbitgf/error.hpp"

namespace orbitgf {

Integer alpha_n(const CentralizerSpectrum& spectrum, std::size_t order, unsigned n) {
  Integer total = 0;
  for (const auto& [m, z] : spectrum.counts) {
    Integer power;
    mpz_ui_pow_ui(power.get_mpz_t(), m, n);
    total += power * static_cast<unsigned long>(z);
  }
  return total / static_cast<unsigned long>(order);
}

Integer alpha_n(const FiniteGroup& g, unsigned n) {
  return alpha_n(class_equation(g), g.order(), n);
}

RationalFunction A_of(const CentralizerSpectrum& spectrum, std::size_t order) {
  // Build directly from the partial fraction: poles are distinct by construction.
  PartialFraction pf;
  for (auto it = spectrum.counts.rbegin(); it != spectrum.counts.rend(); ++it) {
    Rational c(static_cast<unsigned long>(it->second), static_cast<unsigned long>(order));
    c.canonicalize();
    pf.terms.push_back({c, Rational(static_cast<unsigned long>(it->first))});
  }
  return from_partial_fractions(pf);
}

RationalFunction A_of(const FiniteGroup& g) { return A_of(class_equation(g), g.order()); }

PartialFraction A_partial_fractions(const FiniteGroup& g) {
  const auto spectrum = class_equation(g);
  PartialFraction pf;
  for (auto it = spectrum.counts.rbegin(); it != spectrum.counts.rend(); ++it) {
    Rational c(static_cast<unsigned long>(it->second), static_cast<unsigned long>(g.order()));
    c.canonicalize();
    pf.terms.push_back({c, Rational(static_cast<unsigned long>(it->first))});
  }
  return pf;
}

namespace {

constexpr int kMaxDepth = 64;

class BRecursion {
 public:
  explicit BRecursion(const FiniteGroup& g) : g_(g), pos_(g.order(), 0) {}

  RationalFunction solve(const std::vector<Element>& h, int depth) {
    if (depth > kMaxDepth) {
      throw Error(ErrorCode::RecursionDepthExceeded,
                  "centralizer chain deeper than " + std::to_string(kMaxDepth));
    }
    if (auto it = memo_.find(h); it != memo_.end()) return it->second;

    const std::size_t n = h.size();
    // Central elements of H and conjugacy class representatives inside H.
    std::vector<Element> reps;
    std::size_t center = 0;
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < n; ++i) pos_[h[i]] = i;
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[i]) continue;
      std::size_t size = 0;
      for (auto y : h) {
        const std::size_t j = pos_[g_.conjugate(h[i], y)];
        if (!seen[j]) {
          seen[j] = 1;
          ++size;
        }
      }
      if (size == 1) {
        ++center;
      } else {
        reps.push_back(h[i]);
      }
    }

    RationalFunction result;
    const Rational c(static_cast<unsigned long>(center));
    if (reps.empty()) {
      result = RationalFunction::simple_pole(1, Rational(static_cast<unsigned long>(n)));
    } else {
      RationalFunction sum = RationalFunction::constant(1);
      const RationalFunction t = RationalFunction::polynomial(Polynomial::monomial(1, 1));
      for (auto x : reps) {
        std::vector<Element> sub;
        for (auto y : h) {
          if (g_.commute(x, y)) sub.push_back(y);
        }
        sum = sum + t * solve(sub, depth + 1);
      }
      result = sum / RationalFunction::polynomial(Polynomial::one_minus(c));
    }
    memo_.emplace(h, result);
    return result;
  }

 private:
  const FiniteGroup& g_;
  std::vector<std::size_t> pos_;  // scratch: element -> index in the current subset
  std::map<std::vector<Element>, RationalFunction> memo_;
};

}  // namespace

RationalFunction B_of(const FiniteGroup& g) {
  BRecursion rec(g);
  return rec.solve(whole_group(g).elements(), 0);
}

namespace {

std::vector<std::size_t> divisors_of(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

// Solve sum_m z_m m^k = b_k for k = 1..nodes.size() on the given nodes.
std::optional<std::vector<Rational>> solve_on_nodes(const std::vector<std::size_t>& nodes,
                                                    const std::vector<Integer>& b) {
  const std::size_t k = nodes.size();
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k + 1));
  for (std::size_t row = 0; row < k; ++row) {
    for (std::size_t col = 0; col < k; ++col) {
      Integer p;
      mpz_ui_pow_ui(p.get_mpz_t(), nodes[col], row + 1);
      a[row][col] = Rational(p);
    }
    a[row][k] = Rational(b[row]);
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && a[piv][col] == 0) ++piv;
    if (piv == k) return std::nullopt;
    std::swap(a[piv], a[col]);
    for (std::size_t row = 0; row < k; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational f = a[row][col] / a[col][col];
      for (std::size_t j = col; j <= k; ++j) a[row][j] -= f * a[col][j];
    }
  }
  std::vector<Rational> z(k);
  for (std::size_t i = 0; i < k; ++i) z[i] = a[i][k] / a[i][i];
  return z;
}

// Full N x N inversion through the Lagrange basis on nodes 1..N.
std::vector<Integer> solve_full(std::size_t n, const std::vector<Integer>& b) {
  // P(x) = prod_{k=1..n} (x - k), coefficients low to high.
  std::vector<Integer> p{1};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Integer> next(p.size() + 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i + 1] += p[i];
      next[i] -= p[i] * static_cast<unsigned long>(k);
    }
    p = std::move(next);
  }
  std::vector<Integer> z(n + 1, 0);
  for (std::size_t m = 1; m <= n; ++m) {
    // Q(x) = P(x) / (x - m), by synthetic division from the top.
    std::vector<Integer> q(n);
    Integer carry = 0;
    for (std::size_t i = n; i-- > 0;) {
      carry = p[i + 1] + carry * static_cast<unsigned long>(m);
      q[i] = carry;
    }
    // w_m = sum_j q_j b_{j+1} / Q(m), and z_m = w_m / m.
    Integer numer = 0;
    for (std::size_t j = 0; j < n; ++j) numer += q[j] * b[j];
    Integer denom = 1;
    for (std::size_t k = 1; k <= n; ++k) {
      if (k != m) denom *= Integer(static_cast<long>(m) - static_cast<long>(k));
    }
    denom *= static_cast<unsigned long>(m);
    if (numer % denom != 0) {
      throw Error(ErrorCode::NonIntegralSolution,
                  "z_" + std::to_string(m) + " = " + numer.get_str() + "/" + denom.get_str());
    }
    z[m] = numer / denom;
  }
  return z;
}

}  // namespace

CentralizerSpectrum class_eq_from_alpha(const std::vector<Integer>& alphas, std::size_t n) {
  if (n == 0 || alphas.size() != n) {
    throw Error(ErrorCode::ParameterOutOfRange,
                "expected " + std::to_string(n) + " values, got " + std::to_string(alphas.size()));
  }
  std::vector<Integer> b(n);
  for (std::size_t k = 0; k < n; ++k) b[k] = alphas[k] * static_cast<unsigned long>(n);

  CentralizerSpectrum spectrum;
  auto finish = [&](const std::map<std::size_t, Integer>& z) {
    Integer total = 0;
    for (const auto& [m, count] : z) {
      if (count < 0) {
        throw Error(ErrorCode::NonIntegralSolution,
                    "z_" + std::to_string(m) + " = " + count.get_str() + " is negative");
      }
      if (count > 0) spectrum.counts[m] = count.get_ui();
      total += count;
    }
    if (total != static_cast<unsigned long>(n)) {
      throw Error(ErrorCode::NonIntegralSolution,
                  "spectrum sums to " + total.get_str() + ", not " + std::to_string(n));
    }
    return spectrum;
  };

  // Fast path: a group spectrum lives on divisors of n. The square system on
  // the divisors is solved, then all n equations are checked; since the full
  // system has a unique solution, passing the check makes it exact.
  const auto nodes = divisors_of(n);
  if (auto z = solve_on_nodes(nodes, b)) {
    bool integral = std::all_of(z->begin(), z->end(), [](const Rational& q) {
      return q.get_den() == 1;
    });
    bool consistent = integral;
    for (std::size_t row = nodes.size(); consistent && row < n; ++row) {
      Integer lhs = 0;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), nodes[i], row + 1);
        lhs += p * z->at(i).get_num();
      }
      consistent = lhs == b[row];
    }
    if (consistent) {
      std::map<std::size_t, Integer> out;
      for (std::size_t i = 0; i < nodes.size(); ++i) out[nodes[i]] = z->at(i).get_num();
      return finish(out);
    }
  }

  const auto full = solve_full(n, b);
  std::map<std::size_t, Integer> out;
  for (std::size_t m = 1; m <= n; ++m) {
    if (full[m] != 0 && n % m != 0) {
      throw Error(ErrorCode::NonIntegralSolution,
                  "solution puts weight on " + std::to_string(m) + ", which does not divide " +
                      std::to_string(n));
    }
    out[m] = full[m];
  }
  return finish(out);
}

RationalFunction normalized_A(const FiniteGroup& g) {
  return A_of(g).scale_variable(Rational(1, static_cast<unsigned long>(g.order())));
}

RationalFunction normalized_B(const FiniteGroup& g) {
  return B_of(g).scale_variable(Rational(1, static_cast<unsigned long>(g.order())));
}

bool a_equivalent(const FiniteGroup& g, const FiniteGroup& h) {
  const bool by_function = A_of(g) == A_of(h);
  const bool by_classes = g.order() == h.order() && class_equation(g) == class_equation(h);
  if (by_function != by_classes) {
    throw std::logic_error("A-equivalence disagrees with class-equation equality");
  }
  return by_function;
}

bool b_equivalent(const FiniteGroup& g, const FiniteGroup& h) { return B_of(g) == B_of(h); }

AsymptoticReport asymptotic_report(const FiniteGroup& g, std::size_t horizon) {
  if (horizon < 3) throw Error(ErrorCode::ParameterOutOfRange, "horizon must be at least 3");
  AsymptoticReport report;
  const auto a_pf = A_partial_fractions(g);
  report.dominant_pole_A = a_pf.terms.front().m.get_num();
  report.leading_residue_A = a_pf.terms.front().residue;

  const auto b = B_of(g);
  const auto b_pf = to_partial_fractions(b);
  report.dominant_pole_B = b_pf.terms.front().m.get_num();
  if (b_pf.terms.front().residue > 0) report.leading_residue_B = b_pf.terms.front().residue;
  if (report.dominant_pole_B != static_cast<unsigned long>(max_abelian_order(g))) {
    throw std::logic_error("dominant pole of B differs from the largest abelian subgroup order");
  }

  const auto beta = b.series(horizon + 1);
  for (std::size_t n = 0; n < horizon; ++n) report.empirical_ratio_B.push_back(beta[n + 1] / beta[n]);
  return report;
}

std::string group_id(const FiniteGroup& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  };
  feed(static_cast<std::uint32_t>(g.order()));
  for (auto x : g.table()) feed(x);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

InvariantRecord compute_record(const FiniteGroup& g) {
  InvariantRecord r;
  r.group_id = group_id(g);
  r.order = g.order();
  r.center_order = center(g).order();
  r.spectrum = class_equation(g);
  r.A = A_of(r.spectrum, r.order);
  r.B = B_of(g);
  r.A_pf = to_partial_fractions(r.A);
  r.B_pf = to_partial_fractions(r.B);
  r.max_abelian = max_abelian_order(g);
  const Rational inv(1, static_cast<unsigned long>(r.order));
  r.normalized_A = r.A.scale_variable(inv);
  r.normalized_B = r.B.scale_variable(inv);
  return r;
}

}  // namespace orbitgf

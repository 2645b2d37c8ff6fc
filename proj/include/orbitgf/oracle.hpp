#pragma once

#include <cstddef>
#include <cstdint>

#include "orbitgf/group.hpp"
#include "orbitgf/ratfun.hpp"

namespace orbitgf {

/// Brute-force orbit counts, independent of the generating-function code.

inline constexpr std::uint64_t kOracleStateLimit = 10'000'000;

enum class OrbitMethod { DirectUnionFind, Burnside };

struct OrbitCount {
  unsigned n = 0;
  Integer count;
  OrbitMethod method = OrbitMethod::DirectUnionFind;
};

/// Orbits of simultaneous conjugation on G^n, by union-find over all |G|^n
/// tuples. The Burnside count is computed alongside; a disagreement throws
/// std::logic_error. Throws Error{TooLarge} when |G|^n exceeds `limit`.
OrbitCount alpha_bruteforce(const FiniteGroup& g, unsigned n,
                            std::uint64_t limit = kOracleStateLimit);
/// Same for pairwise commuting n-tuples.
OrbitCount beta_bruteforce(const FiniteGroup& g, unsigned n,
                           std::uint64_t limit = kOracleStateLimit);

/// Burnside-only variants.
Integer alpha_burnside(const FiniteGroup& g, unsigned n, std::uint64_t limit = kOracleStateLimit);
Integer beta_burnside(const FiniteGroup& g, unsigned n, std::uint64_t limit = kOracleStateLimit);

/// Number of pairwise commuting n-tuples, by depth-first extension inside
/// iterated centralizers.
Integer commuting_tuple_count(const FiniteGroup& g, unsigned n,
                              std::uint64_t limit = kOracleStateLimit);

}  // namespace orbitgf

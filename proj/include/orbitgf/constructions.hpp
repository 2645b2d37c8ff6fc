#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orbitgf/group.hpp"

namespace orbitgf {

/// Product of generator powers, e.g. {{2, 1}, {3, -1}} = g2 g3^-1.
/// Exponents may be negative; generator indices are 0-based.
using PcWord = std::vector<std::pair<std::size_t, long>>;

struct PcPower {
  std::size_t gen = 0;  // g_gen^{r_gen} = word
  PcWord word;
};

struct PcConjugate {
  std::size_t gen = 0;  // j
  std::size_t by = 0;   // i < j
  PcWord word;
};

enum class PcConvention {
  Right,  // relations give g_i^-1 g_j g_i
  Left,   // relations give g_i g_j g_i^-1
};

/// Power-conjugate presentation. Relations that are not listed are trivial:
/// g_i^{r_i} = 1 and g_i, g_j commute. Words on the right-hand side may only
/// use generators after `gen` (powers) or after `by` (conjugates).
struct PcPresentation {
  std::vector<std::size_t> relative_orders;
  std::vector<PcPower> powers;
  std::vector<PcConjugate> conjugates;
  PcConvention convention = PcConvention::Right;
  std::vector<std::string> generator_names;

  std::size_t size() const noexcept { return relative_orders.size(); }
  std::size_t predicted_order() const;
};

/// Normal form exponent vector -> element index of the collected group
/// (mixed radix, first generator most significant).
std::size_t pc_index(const PcPresentation& pc, const std::vector<std::size_t>& exponents);

/// Builds the group by collection. Throws Error{MalformedPresentation} for
/// bad indices or words, Error{InconsistentPresentation} when the relations do
/// not define a group of order prod r_i.
FiniteGroup collect(const PcPresentation& pc);

enum class ExtraspecialType { OddExponentP, TwoType };

enum class StemFamily {
  Phi2, Phi3, Phi4, Phi5, Phi6, Phi7, Phi8, Phi9, Phi10,
  Gamma2, Gamma3, Gamma4, Gamma5, Gamma6, Gamma7, Gamma8,
};

std::string to_string(StemFamily f);
/// Accepts "Phi5", "Gamma3", and the same names with a leading capital
/// Greek spelling in any case.
StemFamily parse_stem_family(const std::string& name);
bool is_gamma(StemFamily f);
/// Expected order of the stem group (p^3 .. p^5).
std::size_t stem_order(StemFamily f, unsigned p);

/// An automorphism of N attached to one element of H.
struct ActionGenerator {
  Element element = 0;          // index in H
  std::vector<Element> images;  // permutation of N's elements
};

struct GroupSpec;

namespace spec {
struct Trivial {};
struct Cyclic {
  std::size_t n = 1;
};
struct DirectProduct {
  std::vector<GroupSpec> factors;
};
struct Dihedral {
  std::size_t order = 4;
};
struct Quaternion {
  std::size_t order = 8;
};
struct Semidihedral {
  std::size_t order = 16;
};
struct Extraspecial {
  unsigned p = 3;
  std::size_t order = 27;
  ExtraspecialType type = ExtraspecialType::OddExponentP;
};
struct Permutations {
  std::size_t degree = 0;
  std::vector<std::vector<std::size_t>> generators;
};
struct Table {
  std::vector<std::vector<Element>> rows;
};
struct Pc {
  PcPresentation presentation;
};
/// Action of H on N. Each entry names an element of H and its automorphism,
/// either as a permutation of N's elements or, when N is polycyclic, as the
/// images of N's pc generators.
struct SemidirectAction {
  Element element = 0;
  std::optional<std::vector<Element>> permutation;
  std::optional<std::vector<PcWord>> images;
};
struct Semidirect {
  std::shared_ptr<const GroupSpec> normal;
  std::shared_ptr<const GroupSpec> acting;
  std::vector<SemidirectAction> action;
};
struct Stem {
  StemFamily family = StemFamily::Phi2;
  unsigned p = 3;
};
}  // namespace spec

struct GroupSpec {
  std::variant<spec::Trivial, spec::Cyclic, spec::DirectProduct, spec::Dihedral, spec::Quaternion,
               spec::Semidihedral, spec::Extraspecial, spec::Permutations, spec::Table, spec::Pc,
               spec::Semidirect, spec::Stem>
      v;
};

/// Deterministic builder dispatch.
FiniteGroup build(const GroupSpec& spec);
/// Order the builder will produce, without building. 0 for permutation specs.
std::size_t predicted_order(const GroupSpec& spec);

FiniteGroup cyclic_group(std::size_t n);
/// Pair (a, b) has index a * |B| + b.
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup dihedral_group(std::size_t order);
FiniteGroup quaternion_group(std::size_t order);
FiniteGroup semidihedral_group(std::size_t order);
FiniteGroup extraspecial_group(unsigned p, std::size_t order, ExtraspecialType type);
/// Closure of the generators under composition; the product pq applies p
/// first. Element 0 is the identity, the rest in breadth-first order.
FiniteGroup permutation_group(std::size_t degree,
                              const std::vector<std::vector<std::size_t>>& generators);

PcPresentation cyclic_presentation(std::size_t n);
PcPresentation dihedral_presentation(std::size_t order);
PcPresentation quaternion_presentation(std::size_t order);
PcPresentation semidihedral_presentation(std::size_t order);
PcPresentation extraspecial_presentation(unsigned p, std::size_t order, ExtraspecialType type);
PcPresentation stem_presentation(StemFamily family, unsigned p);
FiniteGroup stem_group(StemFamily family, unsigned p);

/// Element (n, h) has index n * |H| + h and (n1,h1)(n2,h2) = (n1 phi_h1(n2), h1 h2).
/// The generators' automorphisms are extended to all of H. Throws
/// Error{NotAutomorphism} or Error{NotAHomomorphism}.
FiniteGroup semidirect(const FiniteGroup& n, const FiniteGroup& h,
                       const std::vector<ActionGenerator>& action);

/// Maps each element of N (normal form index) through the images of N's
/// generators. Throws Error{NotAutomorphism} if the result is not a bijection.
std::vector<Element> automorphism_from_images(const PcPresentation& pc, const FiniteGroup& n,
                                              const std::vector<PcWord>& images);

struct FrobeniusResult {
  bool is_frobenius = false;
  std::optional<Subgroup> kernel;
  /// An element g outside H with H and gHg^-1 meeting nontrivially.
  std::optional<Element> witness;
};

FrobeniusResult frobenius_check(const FiniteGroup& g, const Subgroup& h);

/// The pc presentation the builder collects for this spec, if it uses one
/// (pc, cyclic with n >= 2, dihedral, quaternion, semidihedral, extraspecial,
/// stem).
std::optional<PcPresentation> presentation_of(const GroupSpec& spec);

/// Index of the generator g_i inside the group collected from pc.
Element pc_generator(const PcPresentation& pc, std::size_t i);

}  // namespace orbitgf

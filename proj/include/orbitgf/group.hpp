#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace orbitgf {

using Element = std::uint32_t;

enum class AssociativityCheck {
  Auto,        // exhaustive up to kExhaustiveAssociativityLimit, sampled above
  Exhaustive,
  Sampled,
};

inline constexpr std::size_t kExhaustiveAssociativityLimit = 512;
inline constexpr std::size_t kAssociativitySamples = 100000;

/// A finite group stored as a full Cayley table. Element 0 is the identity.
/// Instances are immutable once constructed and only obtainable through
/// verify_group_axioms, so every FiniteGroup in the program is a checked group.
class FiniteGroup {
 public:
  std::size_t order() const noexcept { return order_; }
  Element identity() const noexcept { return 0; }

  Element mul(Element a, Element b) const noexcept { return table_[std::size_t{a} * order_ + b]; }
  Element inv(Element a) const noexcept { return inv_[a]; }
  /// g x g^-1
  Element conjugate(Element x, Element g) const noexcept { return mul(mul(g, x), inv(g)); }
  bool commute(Element a, Element b) const noexcept { return mul(a, b) == mul(b, a); }

  std::span<const Element> row(Element a) const noexcept {
    return {table_.data() + std::size_t{a} * order_, order_};
  }
  /// Row-major Cayley table.
  const std::vector<Element>& table() const noexcept { return table_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order_ == b.order_ && a.table_ == b.table_;
  }

 private:
  friend FiniteGroup verify_group_axioms(std::vector<Element>, std::size_t, AssociativityCheck,
                                         std::vector<std::string>);
  FiniteGroup() = default;

  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inv_;
  std::vector<std::string> labels_;
};

/// Validates a row-major order x order table and returns the group with the
/// identity relabeled to index 0 (by swapping it with the old element 0).
/// Throws Error{NotClosed, NoIdentity, NoInverse, NotAssociative}.
FiniteGroup verify_group_axioms(std::vector<Element> table, std::size_t order,
                                AssociativityCheck mode = AssociativityCheck::Auto,
                                std::vector<std::string> labels = {});
FiniteGroup verify_group_axioms(const std::vector<std::vector<Element>>& table,
                                AssociativityCheck mode = AssociativityCheck::Auto);

/// A subgroup of a FiniteGroup, as a sorted element list. Holds a pointer to
/// the ambient group, which must outlive it.
class Subgroup {
 public:
  /// Checked construction: throws NotClosed if the set is not a subgroup.
  static Subgroup from_elements(const FiniteGroup& ambient, std::vector<Element> elements);

  const FiniteGroup& ambient() const noexcept { return *ambient_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  bool contains(Element x) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.ambient_ == b.ambient_ && a.elements_ == b.elements_;
  }

 private:
  friend Subgroup make_subgroup_unchecked(const FiniteGroup&, std::vector<Element>);
  Subgroup(const FiniteGroup* ambient, std::vector<Element> elements)
      : ambient_(ambient), elements_(std::move(elements)) {}

  const FiniteGroup* ambient_;
  std::vector<Element> elements_;
};

/// For library internals that already know the set is a sorted subgroup.
Subgroup make_subgroup_unchecked(const FiniteGroup& ambient, std::vector<Element> sorted_elements);

struct ConjugacyData {
  std::vector<std::size_t> class_of;            // element -> class id
  std::vector<Element> reps;                    // class id -> representative
  std::vector<std::size_t> class_sizes;         // class id -> size
  std::vector<std::size_t> centralizer_orders;  // class id -> |Z_G(rep)|

  std::size_t class_count() const noexcept { return reps.size(); }
};

/// z_m = number of elements whose centralizer has order m.
struct CentralizerSpectrum {
  std::map<std::size_t, std::size_t> counts;

  std::size_t total() const;
  std::size_t at(std::size_t m) const;
  friend bool operator==(const CentralizerSpectrum&, const CentralizerSpectrum&) = default;
};

Subgroup centralizer(const FiniteGroup& g, Element x);
Subgroup center(const FiniteGroup& g);
ConjugacyData conjugacy_classes(const FiniteGroup& g);
CentralizerSpectrum class_equation(const FiniteGroup& g);

/// Re-indexes S as a standalone group: element i of the result is
/// S.elements()[i] in the ambient group.
FiniteGroup subgroup_as_group(const Subgroup& s);

/// Smallest subgroup containing the given elements.
Subgroup generate(const FiniteGroup& g, std::span<const Element> generators);
Subgroup whole_group(const FiniteGroup& g);
Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup derived_subgroup(const FiniteGroup& g);

bool is_abelian(const FiniteGroup& g);
bool is_abelian(const Subgroup& s);
bool is_ac_group(const FiniteGroup& g);

/// Largest order of an abelian subgroup, via the intersection closure of
/// element centralizers (every maximal abelian subgroup is an intersection of
/// centralizers of pairwise commuting elements).
std::size_t max_abelian_order(const FiniteGroup& g);

std::size_t element_order(const FiniteGroup& g, Element x);
std::size_t exponent(const FiniteGroup& g);
/// A (not necessarily minimal) generating set, found greedily.
std::vector<Element> generating_set(const FiniteGroup& g);

}  // namespace orbitgf

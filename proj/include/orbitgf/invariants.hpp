#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orbitgf/group.hpp"
#include "orbitgf/ratfun.hpp"

namespace orbitgf {

/// Number of orbits of simultaneous conjugation on G^n.
Integer alpha_n(const FiniteGroup& g, unsigned n);
Integer alpha_n(const CentralizerSpectrum& spectrum, std::size_t order, unsigned n);

RationalFunction A_of(const FiniteGroup& g);
RationalFunction A_of(const CentralizerSpectrum& spectrum, std::size_t order);
PartialFraction A_partial_fractions(const FiniteGroup& g);

/// Generating function of the commuting-tuple orbit counts, by recursion over
/// centralizers of class representatives. Centralizers are handled as element
/// subsets of g and memoized for the duration of the call.
RationalFunction B_of(const FiniteGroup& g);

/// Inverts alpha_1..alpha_N (N = |G|) to the centralizer spectrum.
/// Throws Error{NonIntegralSolution} if no nonnegative integer spectrum fits.
CentralizerSpectrum class_eq_from_alpha(const std::vector<Integer>& alphas, std::size_t n);

RationalFunction normalized_A(const FiniteGroup& g);
RationalFunction normalized_B(const FiniteGroup& g);

/// Compares A functions, and cross-checks the answer against equality of
/// class equations; a disagreement throws std::logic_error.
bool a_equivalent(const FiniteGroup& g, const FiniteGroup& h);
bool b_equivalent(const FiniteGroup& g, const FiniteGroup& h);

struct AsymptoticReport {
  Integer dominant_pole_A;
  Rational leading_residue_A;
  Integer dominant_pole_B;
  /// Residue at the dominant pole of B when it is positive.
  std::optional<Rational> leading_residue_B;
  std::vector<Rational> empirical_ratio_B;  // beta_{n+1} / beta_n, n = 0..horizon-1
};

/// Throws std::logic_error if the dominant pole of B differs from the
/// largest abelian subgroup order.
AsymptoticReport asymptotic_report(const FiniteGroup& g, std::size_t horizon);

struct InvariantRecord {
  std::string group_id;
  std::size_t order = 0;
  std::size_t center_order = 0;
  RationalFunction A;
  RationalFunction B;
  PartialFraction A_pf;
  PartialFraction B_pf;
  CentralizerSpectrum spectrum;
  std::size_t max_abelian = 0;
  RationalFunction normalized_A;
  RationalFunction normalized_B;

  friend bool operator==(const InvariantRecord&, const InvariantRecord&) = default;
};

/// FNV-1a over the Cayley table, as 16 hex digits.
std::string group_id(const FiniteGroup& g);
InvariantRecord compute_record(const FiniteGroup& g);

}  // namespace orbitgf

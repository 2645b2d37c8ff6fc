#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orbitgf/constructions.hpp"
#include "orbitgf/ratfun.hpp"

namespace orbitgf {

// Closed formulas for A_G and B_G of specific families. Every function throws
// Error{ParameterOutOfRange} outside its stated range.

/// Dihedral group of order 2n, n odd and at least 3.
RationalFunction A_dihedral_odd(std::size_t n);
RationalFunction B_dihedral_odd(std::size_t n);
/// Dihedral group of order 2n, n even and at least 2.
RationalFunction A_dihedral_even(std::size_t n);
RationalFunction B_dihedral_even(std::size_t n);

/// p-group of order p^m with |G/Z| = p^2 (m >= 3).
RationalFunction A_central_quotient_p2(unsigned p, unsigned m);
RationalFunction B_central_quotient_p2(unsigned p, unsigned m);
/// p-group of order p^m with |G/Z| = p^3 (m >= 4, or m >= 5 without an
/// abelian maximal subgroup).
RationalFunction A_central_quotient_p3(unsigned p, unsigned m, bool has_abelian_maximal);
RationalFunction B_central_quotient_p3(unsigned p, unsigned m, bool has_abelian_maximal);

/// Non-abelian p-group with an abelian maximal subgroup M and center Z.
RationalFunction A_abelian_maximal(std::size_t order_g, std::size_t order_m, std::size_t order_z);

/// Extraspecial group of order p^(2n+1).
RationalFunction A_extraspecial(unsigned p, unsigned n);
RationalFunction B_extraspecial(unsigned p, unsigned n);

enum class MaximalClassCase { AbelianMaximal, NoAbelianMaximal };

/// p-group of maximal class, order p^m, positive degree of commutativity;
/// the second case also assumes [P1, P3] = 1.
RationalFunction A_maximal_class(unsigned p, unsigned m, MaximalClassCase c);
RationalFunction B_maximal_class(unsigned p, unsigned m, MaximalClassCase c);
/// 2-group of maximal class of order 2^n, n >= 4 (dihedral, semidihedral,
/// generalized quaternion).
RationalFunction A_maximal_class_2group(unsigned n);
RationalFunction B_maximal_class_2group(unsigned n);

/// Frobenius group with kernel N and complement H.
RationalFunction A_frobenius(const RationalFunction& A_N, std::size_t order_n,
                             const RationalFunction& A_H, std::size_t order_h);
RationalFunction B_frobenius(const RationalFunction& B_N, const RationalFunction& B_H,
                             std::size_t order_h);
/// Both kernel and complement abelian.
RationalFunction A_frobenius_abelian(std::size_t order_n, std::size_t order_h);
RationalFunction B_frobenius_abelian(std::size_t order_n, std::size_t order_h);

struct FamilyFormula {
  std::string family;  // "Abelian", "Phi2", ..., "Gamma8"
  unsigned p = 0;
  RationalFunction normalized_A;
  RationalFunction normalized_B;
};

/// Normalized A and B for an isoclinism family of rank <= 5. Gamma families
/// need p = 2, Phi families an odd prime; the abelian family takes any prime.
FamilyFormula family_table(const std::string& family, unsigned p);
FamilyFormula family_table(StemFamily family, unsigned p);

/// Rows for a prime: the abelian row, then Gamma2..Gamma8 for p = 2
/// or Phi2..Phi10 for odd p.
std::vector<std::string> table_families(unsigned p);

}  // namespace orbitgf

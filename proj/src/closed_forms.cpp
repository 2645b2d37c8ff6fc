#include "orbitgf/closed_forms.hpp"

#include "orbitgf/error.hpp"

namespace orbitgf {

namespace {

using RF = RationalFunction;

[[noreturn]] void out_of_range(const std::string& what) {
  throw Error(ErrorCode::ParameterOutOfRange, what);
}

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

void require_prime(unsigned p) {
  if (!is_prime(p)) out_of_range(std::to_string(p) + " is not prime");
}

Rational pw(unsigned p, int k) {
  Integer v;
  mpz_ui_pow_ui(v.get_mpz_t(), p, static_cast<unsigned long>(k < 0 ? -k : k));
  return k < 0 ? Rational(Integer(1), v) : Rational(v);
}

Rational q(std::size_t n) { return Rational(Integer(static_cast<unsigned long>(n))); }

RF c(const Rational& v) { return RF::constant(v); }
RF pole(const Rational& residue, const Rational& m) { return RF::simple_pole(residue, m); }
RF t() { return RF::polynomial(Polynomial::monomial(1, 1)); }
RF one_minus(const Rational& m) { return RF::polynomial(Polynomial::one_minus(m)); }

}  // namespace

RationalFunction A_dihedral_odd(std::size_t n) {
  if (n < 3 || n % 2 == 0) out_of_range("n must be odd and at least 3");
  return c(Rational(1) / q(2 * n)) *
         (pole(1, q(2 * n)) + pole(q(n), 2) + pole(q(n - 1), q(n)));
}

RationalFunction B_dihedral_odd(std::size_t n) {
  if (n < 3 || n % 2 == 0) out_of_range("n must be odd and at least 3");
  return (c(1) + c(q(n - 1)) * t() / (c(2) * one_minus(q(n))) + t() / one_minus(2)) /
         one_minus(1);
}

RationalFunction A_dihedral_even(std::size_t n) {
  if (n < 2 || n % 2) out_of_range("n must be even and at least 2");
  return c(Rational(1) / q(2 * n)) *
         (pole(2, q(2 * n)) + pole(q(n), 4) + pole(q(n - 2), q(n)));
}

RationalFunction B_dihedral_even(std::size_t n) {
  if (n < 2 || n % 2) out_of_range("n must be even and at least 2");
  return (c(1) + c(q(n - 2)) * t() / (c(2) * one_minus(q(n))) + c(2) * t() / one_minus(4)) /
         one_minus(2);
}

RationalFunction A_central_quotient_p2(unsigned p, unsigned m) {
  require_prime(p);
  if (m < 3) out_of_range("|G/Z| = p^2 needs m >= 3");
  const int k = static_cast<int>(m);
  return c(pw(p, -k)) * (pole(pw(p, k - 2), pw(p, k)) + pole(pw(p, k) - pw(p, k - 2), pw(p, k - 1)));
}

RationalFunction B_central_quotient_p2(unsigned p, unsigned m) {
  require_prime(p);
  if (m < 3) out_of_range("|G/Z| = p^2 needs m >= 3");
  const int k = static_cast<int>(m);
  return one_minus(pw(p, k - 3)) / (one_minus(pw(p, k - 2)) * one_minus(pw(p, k - 1)));
}

RationalFunction A_central_quotient_p3(unsigned p, unsigned m, bool has_abelian_maximal) {
  require_prime(p);
  if (m < 4) out_of_range("|G/Z| = p^3 needs m >= 4");
  const int k = static_cast<int>(m);
  if (!has_abelian_maximal) {
    if (m < 5) out_of_range("without an abelian maximal subgroup m must be at least 5");
    return c(pw(p, -k)) *
           (pole(pw(p, k - 3), pw(p, k)) + pole(pw(p, k) - pw(p, k - 3), pw(p, k - 2)));
  }
  return c(pw(p, -k)) * (pole(pw(p, k - 3), pw(p, k)) +
                         pole(pw(p, k - 1) - pw(p, k - 3), pw(p, k - 1)) +
                         pole(pw(p, k) - pw(p, k - 1), pw(p, k - 2)));
}

RationalFunction B_central_quotient_p3(unsigned p, unsigned m, bool has_abelian_maximal) {
  require_prime(p);
  if (m < 4) out_of_range("|G/Z| = p^3 needs m >= 4");
  const int k = static_cast<int>(m);
  if (!has_abelian_maximal) {
    if (m < 5) out_of_range("without an abelian maximal subgroup m must be at least 5");
    return one_minus(pw(p, k - 5)) / (one_minus(pw(p, k - 2)) * one_minus(pw(p, k - 3)));
  }
  return (c(1) + c(pw(p, k - 2) - pw(p, k - 4)) * t() / one_minus(pw(p, k - 1)) +
          c(pw(p, k - 2) - pw(p, k - 3)) * t() / one_minus(pw(p, k - 2))) /
         one_minus(pw(p, k - 3));
}

RationalFunction A_abelian_maximal(std::size_t order_g, std::size_t order_m,
                                   std::size_t order_z) {
  if (order_m == 0 || order_z == 0 || order_g % order_m || order_m % order_z) {
    out_of_range("need |Z| | |M| | |G|");
  }
  const std::size_t p = order_g / order_m;
  if (!is_prime(static_cast<unsigned>(p))) out_of_range("M must have prime index");
  if (order_z == order_m) out_of_range("G would be abelian");
  return c(Rational(1) / q(order_g)) *
         (pole(q(order_z), q(order_g)) + pole(q(order_g - order_m), q(p * order_z)) +
          pole(q(order_m - order_z), q(order_m)));
}

RationalFunction A_extraspecial(unsigned p, unsigned n) {
  require_prime(p);
  if (n < 1) out_of_range("n must be at least 1");
  const int k = static_cast<int>(2 * n + 1);
  return c(pw(p, -k)) * (pole(p, pw(p, k)) + pole(pw(p, k) - p, pw(p, k - 1)));
}

RationalFunction B_extraspecial(unsigned p, unsigned n) {
  require_prime(p);
  if (n < 1) out_of_range("n must be at least 1");
  RF b = one_minus(1) / (one_minus(p) * one_minus(q(std::size_t{p} * p)));
  for (unsigned k = 2; k <= n; ++k) {
    b = (c(1) + c(pw(p, static_cast<int>(2 * k)) - 1) * t() * b.scale_variable(q(p))) /
        one_minus(p);
  }
  return b;
}

RationalFunction A_maximal_class(unsigned p, unsigned m, MaximalClassCase mc) {
  require_prime(p);
  if (m < 4) out_of_range("maximal class needs m >= 4");
  const int k = static_cast<int>(m);
  if (mc == MaximalClassCase::AbelianMaximal) {
    return c(pw(p, -k)) * (pole(p, pw(p, k)) + pole(pw(p, k) - pw(p, k - 1), pw(p, 2)) +
                           pole(pw(p, k - 1) - p, pw(p, k - 1)));
  }
  if (m < 5) out_of_range("the second case needs m >= 5");
  return c(pw(p, -k)) * (pole(p, pw(p, k)) + pole(pw(p, k) - pw(p, k - 1), pw(p, 2)) +
                         pole(pw(p, k - 1) - pw(p, k - 3), pw(p, k - 2)) +
                         pole(pw(p, k - 3) - p, pw(p, k - 1)));
}

RationalFunction B_maximal_class(unsigned p, unsigned m, MaximalClassCase mc) {
  require_prime(p);
  if (m < 4) out_of_range("maximal class needs m >= 4");
  const int k = static_cast<int>(m);
  const RF tail = c(pw(p, 2) - p) * t() / one_minus(pw(p, 2));
  if (mc == MaximalClassCase::AbelianMaximal) {
    return (c(1) + c(pw(p, k - 2) - 1) * t() / one_minus(pw(p, k - 1)) + tail) / one_minus(p);
  }
  if (m < 5) out_of_range("the second case needs m >= 5");
  return (c(1) +
          c(pw(p, k - 4) - 1) * t() * one_minus(pw(p, k - 4)) /
              (one_minus(pw(p, k - 2)) * one_minus(pw(p, k - 3))) +
          c(pw(p, k - 3) - pw(p, k - 5)) * t() / one_minus(pw(p, k - 2)) + tail) /
         one_minus(p);
}

RationalFunction A_maximal_class_2group(unsigned n) {
  if (n < 4 || n > 40) out_of_range("n must be in 4..40");
  const int k = static_cast<int>(n);
  return c(pw(2, -k)) *
         (pole(2, pw(2, k)) + pole(pw(2, k - 1), 4) + pole(pw(2, k - 1) - 2, pw(2, k - 1)));
}

RationalFunction B_maximal_class_2group(unsigned n) {
  if (n < 4 || n > 40) out_of_range("n must be in 4..40");
  return B_dihedral_even(std::size_t{1} << (n - 1));
}

RationalFunction A_frobenius(const RationalFunction& A_N, std::size_t order_n,
                             const RationalFunction& A_H, std::size_t order_h) {
  if (order_h < 2 || order_n < 2 || (order_n - 1) % order_h) {
    out_of_range("Frobenius complement order must be >= 2 and divide |N| - 1");
  }
  const std::size_t order_g = order_n * order_h;
  const RF sum = pole(1, q(order_g)) + (c(q(order_n)) * A_N - pole(1, q(order_n))) +
                 c(q(order_n)) * (c(q(order_h)) * A_H - pole(1, q(order_h)));
  return c(Rational(1) / q(order_g)) * sum;
}

RationalFunction B_frobenius(const RationalFunction& B_N, const RationalFunction& B_H,
                             std::size_t order_h) {
  if (order_h < 2) out_of_range("Frobenius complement must be nontrivial");
  const RF lhs = c(1) + c(Rational(1) / q(order_h)) * (one_minus(1) * B_N - c(1)) +
                 (one_minus(1) * B_H - c(1));
  return lhs / one_minus(1);
}

RationalFunction A_frobenius_abelian(std::size_t order_n, std::size_t order_h) {
  return A_frobenius(pole(1, q(order_n)), order_n, pole(1, q(order_h)), order_h);
}

RationalFunction B_frobenius_abelian(std::size_t order_n, std::size_t order_h) {
  return B_frobenius(pole(1, q(order_n)), pole(1, q(order_h)), order_h);
}

FamilyFormula family_table(StemFamily family, unsigned p) {
  if (is_gamma(family)) {
    if (p != 2) out_of_range(to_string(family) + " rows take p = 2");
  } else if (!is_prime(p) || p == 2) {
    out_of_range(to_string(family) + " rows take an odd prime");
  }
  auto r = [p](int k) { return pw(p, k); };
  const Rational P(p);
  FamilyFormula f{to_string(family), p, {}, {}};
  switch (family) {
    case StemFamily::Phi2:
    case StemFamily::Gamma2:
      f.normalized_A = pole(1 - r(-2), r(-1)) + pole(r(-2), 1);
      f.normalized_B = pole(-r(-1), r(-2)) + pole(1 + r(-1), r(-1));
      break;
    case StemFamily::Phi3:
    case StemFamily::Phi4:
    case StemFamily::Gamma3:
    case StemFamily::Gamma4:
      f.normalized_A = pole(1 - r(-1), r(-2)) + pole(r(-1) - r(-3), r(-1)) + pole(r(-3), 1);
      f.normalized_B = pole(-r(-1), r(-3)) + pole(1, r(-2)) + pole(r(-1), r(-1));
      break;
    case StemFamily::Phi5:
    case StemFamily::Gamma5: {
      const Rational s = P + 1 + r(-1) + r(-2);
      f.normalized_A = pole(1 - r(-4), r(-1)) + pole(r(-4), 1);
      f.normalized_B = pole(1, r(-4)) + pole(-s, r(-3)) + pole(s, r(-2));
      break;
    }
    case StemFamily::Phi6:
      f.normalized_A = pole(1 - r(-3), r(-2)) + pole(r(-3), 1);
      f.normalized_B = pole(-r(-1) - r(-2), r(-3)) + pole(1 + r(-1) + r(-2), r(-2));
      break;
    case StemFamily::Phi7:
    case StemFamily::Phi8:
    case StemFamily::Gamma6:
    case StemFamily::Gamma7:
      f.normalized_A = pole(1 - r(-2), r(-2)) + pole(r(-2) - r(-4), r(-1)) + pole(r(-4), 1);
      f.normalized_B = pole(-r(-1) - r(-2), r(-3)) + pole(1 + r(-1) + r(-2), r(-2));
      break;
    case StemFamily::Phi9:
    case StemFamily::Gamma8:
      f.normalized_A = pole(1 - r(-1), r(-3)) + pole(r(-1) - r(-4), r(-1)) + pole(r(-4), 1);
      f.normalized_B = pole(-r(-1), r(-4)) + pole(1, r(-3)) + pole(r(-1), r(-1));
      break;
    case StemFamily::Phi10:
      f.normalized_A = pole(1 - r(-1), r(-3)) + pole(r(-1) - r(-3), r(-2)) +
                       pole(r(-3) - r(-4), r(-1)) + pole(r(-4), 1);
      f.normalized_B = pole(-r(-1), r(-4)) + pole(1 - r(-2), r(-3)) + pole(r(-1) + r(-2), r(-2));
      break;
  }
  return f;
}

FamilyFormula family_table(const std::string& family, unsigned p) {
  if (family == "Abelian" || family == "abelian") {
    require_prime(p);
    return {"Abelian", p, pole(1, 1), pole(1, 1)};
  }
  return family_table(parse_stem_family(family), p);
}

std::vector<std::string> table_families(unsigned p) {
  require_prime(p);
  std::vector<std::string> out{"Abelian"};
  const int first = static_cast<int>(p == 2 ? StemFamily::Gamma2 : StemFamily::Phi2);
  const int last = static_cast<int>(p == 2 ? StemFamily::Gamma8 : StemFamily::Phi10);
  for (int i = first; i <= last; ++i) out.push_back(to_string(static_cast<StemFamily>(i)));
  return out;
}

}  // namespace orbitgf

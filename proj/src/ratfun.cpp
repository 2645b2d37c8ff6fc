#include "orbitgf/ratfun.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "orbitgf/error.hpp"

namespace orbitgf {

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational& c, int k) {
  std::vector<Rational> v(static_cast<std::size_t>(k) + 1);
  v[static_cast<std::size_t>(k)] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::one_minus(const Rational& m) { return Polynomial({Rational(1), -m}); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Polynomial::coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

Rational Polynomial::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::scale_variable(const Rational& c) const {
  std::vector<Rational> v(c_.size());
  Rational power = 1;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    v[k] = c_[k] * power;
    power *= c;
  }
  return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  const Rational lead = leading();
  std::vector<Rational> v(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) v[k] = c_[k] / lead;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-() const {
  std::vector<Rational> v(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) v[k] = -c_[k];
  return Polynomial(std::move(v));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) + b.coeff(k);
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(v));
}

Polynomial operator*(const Rational& s, const Polynomial& p) {
  std::vector<Rational> v(p.c_.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = s * p.c_[k];
  return Polynomial(std::move(v));
}

void Polynomial::divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.c_;
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) {
    q = Polynomial();
    r = a;
    return;
  }
  std::vector<Rational> quot(static_cast<std::size_t>(da - db) + 1);
  const Rational lead = b.leading();
  for (int k = da - db; k >= 0; --k) {
    const Rational f = rem[static_cast<std::size_t>(k + db)] / lead;
    quot[static_cast<std::size_t>(k)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= f * b.c_[static_cast<std::size_t>(j)];
    }
  }
  q = Polynomial(std::move(quot));
  r = Polynomial(std::move(rem));
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

// ---------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction() : num_(), den_(Polynomial::constant(1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw Error(ErrorCode::ParameterOutOfRange, "zero denominator");
  if (num.is_zero()) {
    num_ = Polynomial();
    den_ = Polynomial::constant(1);
    return;
  }
  const Polynomial g = Polynomial::gcd(num, den);
  if (g.degree() > 0) {
    Polynomial q, r;
    Polynomial::divmod(num, g, q, r);
    num = q;
    Polynomial::divmod(den, g, q, r);
    den = q;
  }
  const Rational d0 = den.coeff(0);
  if (d0 == 0) throw Error(ErrorCode::ParameterOutOfRange, "pole at t = 0");
  const Rational inv = 1 / d0;
  num_ = inv * num;
  den_ = inv * den;
}

RationalFunction RationalFunction::constant(const Rational& c) {
  return {Polynomial::constant(c), Polynomial::constant(1)};
}

RationalFunction RationalFunction::polynomial(Polynomial p) {
  return {std::move(p), Polynomial::constant(1)};
}

RationalFunction RationalFunction::simple_pole(const Rational& c, const Rational& m) {
  return {Polynomial::constant(c), Polynomial::one_minus(m)};
}

RationalFunction RationalFunction::operator-() const { return {-num_, den_}; }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw Error(ErrorCode::ParameterOutOfRange, "division by the zero function");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

RationalFunction RationalFunction::scale_variable(const Rational& c) const {
  return {num_.scale_variable(c), den_.scale_variable(c)};
}

std::vector<Rational> RationalFunction::series(std::size_t n) const {
  std::vector<Rational> a(n);
  const auto& d = den_.coeffs();
  for (std::size_t k = 0; k < n; ++k) {
    Rational v = num_.coeff(k);
    for (std::size_t j = 1; j < d.size() && j <= k; ++j) v -= d[j] * a[k - j];
    a[k] = v;
  }
  return a;
}

RationalFunction add(const RationalFunction& a, const RationalFunction& b) { return a + b; }
RationalFunction mul(const RationalFunction& a, const RationalFunction& b) { return a * b; }
RationalFunction scale_variable(const RationalFunction& r, const Rational& c) {
  return r.scale_variable(c);
}
std::vector<Rational> series_coeffs(const RationalFunction& r, std::size_t n) {
  return r.series(n);
}
bool eq(const RationalFunction& a, const RationalFunction& b) { return a == b; }

// ---------------------------------------------------------- partial fractions

Rational PartialFraction::residue_sum() const {
  Rational s = 0;
  for (const auto& t : terms) s += t.residue;
  return s;
}

const PartialFraction::Term* PartialFraction::find(const Rational& m) const {
  for (const auto& t : terms) {
    if (t.m == m) return &t;
  }
  return nullptr;
}

namespace {

std::vector<Integer> positive_divisors(Integer n) {
  std::vector<std::pair<Integer, unsigned>> factors;
  for (Integer d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) factors.emplace_back(d, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<Integer> divs{1};
  for (const auto& [q, e] : factors) {
    const std::size_t base = divs.size();
    Integer power = 1;
    for (unsigned k = 1; k <= e; ++k) {
      power *= q;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * power);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace

PartialFraction to_partial_fractions(const RationalFunction& r) {
  PartialFraction pf;
  if (r.is_zero()) return pf;
  const int dn = r.num().degree();
  const int dd = r.den().degree();
  if (dn >= dd) {
    throw Error(ErrorCode::NotSimpleIntegerPoles,
                "numerator degree " + std::to_string(dn) + " is not below denominator degree " +
                    std::to_string(dd));
  }

  // Rescale t so that the denominator is an integer polynomial whose roots
  // are reciprocals of integers.
  Integer s = 1;
  for (const auto& c : r.den().coeffs()) s = lcm(s, Integer(c.get_den()));
  const Polynomial num = r.num().scale_variable(Rational(s));
  Polynomial den = r.den().scale_variable(Rational(s));

  Integer lead = den.leading().get_num();
  if (lead < 0) lead = -lead;
  std::vector<Integer> poles;
  for (const auto& d : positive_divisors(lead)) {
    if (den.degree() == 0) break;
    const Rational x(d, 1);
    const Rational root = 1 / x;
    if (den.eval(root) != 0) continue;
    Polynomial q, rem;
    Polynomial::divmod(den, Polynomial::one_minus(x), q, rem);
    den = q;
    if (den.eval(root) == 0) {
      throw Error(ErrorCode::NotSimpleIntegerPoles, "repeated pole 1/(1-" + d.get_str() + "t)");
    }
    poles.push_back(d);
  }
  if (den.degree() != 0) {
    throw Error(ErrorCode::NotSimpleIntegerPoles,
                "denominator has a factor outside the family 1-mt: " + render_polynomial(den));
  }

  for (std::size_t i = 0; i < poles.size(); ++i) {
    const Rational x(poles[i]);
    Rational value = num.eval(1 / x);
    for (std::size_t j = 0; j < poles.size(); ++j) {
      if (j != i) value /= 1 - Rational(poles[j]) / x;
    }
    value /= den.coeff(0);
    if (value == 0) continue;
    Rational m(poles[i], s);
    m.canonicalize();
    pf.terms.push_back({value, m});
  }
  std::sort(pf.terms.begin(), pf.terms.end(),
            [](const auto& a, const auto& b) { return a.m > b.m; });
  return pf;
}

RationalFunction from_partial_fractions(const PartialFraction& pf) {
  RationalFunction sum;
  for (const auto& t : pf.terms) sum = sum + RationalFunction::simple_pole(t.residue, t.m);
  return sum;
}

// -------------------------------------------------------------------- render

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

// Coefficient for use in front of "t": 1 -> "", 1/2 -> "(1/2)".
std::string coefficient_text(const Rational& c) {
  if (c == 1) return "";
  if (c.get_den() == 1) return c.get_str();
  return "(" + c.get_str() + ")";
}

std::string power_text(int k) {
  if (k == 0) return "";
  if (k == 1) return "t";
  return "t^" + std::to_string(k);
}

}  // namespace

std::string render_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    Rational c = p.coeff(static_cast<std::size_t>(k));
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (k == 0) {
      out += c.get_den() == 1 ? c.get_str() : "(" + c.get_str() + ")";
    } else {
      out += coefficient_text(c) + power_text(k);
    }
  }
  return out;
}

std::string render_rational(const RationalFunction& r) {
  if (r.is_zero()) return "0";
  Integer l = 1;
  for (const auto& c : r.num().coeffs()) l = lcm(l, Integer(c.get_den()));
  for (const auto& c : r.den().coeffs()) l = lcm(l, Integer(c.get_den()));
  Integer g = 0;
  for (const auto& c : r.num().coeffs()) g = gcd(g, Integer(c.get_num() * (l / c.get_den())));
  for (const auto& c : r.den().coeffs()) g = gcd(g, Integer(c.get_num() * (l / c.get_den())));
  Rational factor(l, g);
  factor.canonicalize();
  if (r.den().leading() < 0) factor = -factor;
  return "(" + render_polynomial(factor * r.num()) + ")/(" + render_polynomial(factor * r.den()) +
         ")";
}

std::string render_partial_fractions(const PartialFraction& pf) {
  if (pf.terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < pf.terms.size(); ++i) {
    const auto& [c, m] = pf.terms[i];
    if (i) out += " + ";
    if (c > 0 && c.get_den() == 1) {
      out += c.get_str();
    } else {
      out += "(" + c.get_str() + ")";
    }
    out += "/(1-" + coefficient_text(m) + "t)";
  }
  return out;
}

std::string render_series(const std::vector<Rational>& coeffs) {
  std::string out = "[";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out += ", ";
    out += coeffs[i].get_str();
  }
  return out + "]";
}

// --------------------------------------------------------------------- parse

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  RationalFunction parse_all() {
    auto r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::Parse, "at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  RationalFunction expr() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    RationalFunction acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RationalFunction term() {
    RationalFunction acc = power();
    while (true) {
      if (accept('*')) {
        acc = acc * power();
      } else if (accept('/')) {
        auto rhs = power();
        if (rhs.is_zero()) fail("division by zero");
        acc = acc / rhs;
      } else if (peek('t') || peek('(')) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  RationalFunction power() {
    RationalFunction base = primary();
    if (accept('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      RationalFunction out = RationalFunction::constant(1);
      for (int i = 0; i < e; ++i) out = out * base;
      return out;
    }
    return base;
  }

  RationalFunction primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 't') {
      ++pos_;
      return RationalFunction::polynomial(Polynomial::monomial(1, 1));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RationalFunction::constant(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  const auto valid = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/';
  });
  Rational q;
  if (!valid || q.set_str(s, 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorCode::Parse, "not a rational number: '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

Polynomial parse_polynomial(std::string_view text) {
  const auto r = ExprParser(text).parse_all();
  if (r.den().degree() != 0) throw Error(ErrorCode::Parse, "not a polynomial");
  return r.num();
}

RationalFunction parse_rational_function(std::string_view text) {
  return ExprParser(text).parse_all();
}

PartialFraction parse_partial_fractions(std::string_view text) {
  return to_partial_fractions(parse_rational_function(text));
}

std::vector<Rational> parse_series(std::string_view text) {
  std::string s(text);
  const auto open = s.find('[');
  const auto close = s.rfind(']');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw Error(ErrorCode::Parse, "series must be written as [a0, a1, ...]");
  }
  std::vector<Rational> out;
  std::stringstream body(s.substr(open + 1, close - open - 1));
  std::string item;
  while (std::getline(body, item, ',')) {
    if (item.find_first_not_of(" \t\n") == std::string::npos) continue;
    out.push_back(parse_rational(item));
  }
  return out;
}

}  // namespace orbitgf

#include <doctest.h>

#include <numeric>

#include "orbitgf/error.hpp"
#include "support.hpp"

using namespace orbitgf;
using testing::group;
using testing::nilpotency_class;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Parse;
}

GroupSpec spec_file(const std::string& name) { return parse_spec_text(embedded_spec_files().at(name)); }

std::size_t derived_order(const FiniteGroup& g) { return derived_subgroup(g).order(); }

}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("build dispatches on the variant") {
    const auto c6 = build(GroupSpec{spec::Cyclic{6}});
    CHECK(c6.order() == 6);
    CHECK(is_abelian(c6));
    CHECK(exponent(c6) == 6);

    const auto d18 = build(GroupSpec{spec::Dihedral{18}});
    CHECK(d18.order() == 18);
    CHECK(center(d18).order() == 1);
    CHECK(exponent(d18) == 18);

    const auto heis = build(GroupSpec{spec::Extraspecial{3, 27, ExtraspecialType::OddExponentP}});
    CHECK(heis.order() == 27);
    CHECK(center(heis).order() == 3);
    CHECK(derived_order(heis) == 3);
    CHECK(exponent(heis) == 3);
  }

  TEST_CASE("predicted order matches the built order") {
    for (const auto& name : builtin_names()) {
      const auto spec = named_spec(name);
      if (name == "G128_2022" || predicted_order(spec) == 0) continue;
      INFO(name);
      CHECK(build(spec).order() == predicted_order(spec));
    }
  }

  TEST_CASE("collect a one-generator presentation") {
    PcPresentation pc;
    pc.relative_orders = {3};
    const auto g = collect(pc);
    CHECK(g.order() == 3);
    CHECK(is_abelian(g));
  }

  TEST_CASE("generalized dihedral of order 18 has exponent 6") {
    const auto& g = group("G18_4");
    CHECK(g.order() == 18);
    CHECK(center(g).order() == 1);
    CHECK(exponent(g) == 6);
  }

  TEST_CASE("order-54 presentations collect") {
    const auto& g6 = group("G54_6");
    const auto& g8 = group("G54_8");
    CHECK(g6.order() == 54);
    CHECK(g8.order() == 54);
    CHECK(class_equation(g6).counts ==
          std::map<std::size_t, std::size_t>{{6, 27}, {9, 18}, {18, 6}, {27, 2}, {54, 1}});
    CHECK(class_equation(g8).counts == std::map<std::size_t, std::size_t>{{6, 27}, {9, 24}, {54, 3}});
  }

  TEST_CASE("order-54 presentation without the power relation is inconsistent") {
    CHECK(code_of([] { build(spec_file("G54_6_literal.json")); }) ==
          ErrorCode::InconsistentPresentation);
  }

  TEST_CASE("order-128 presentations") {
    CHECK(group("G128_1758").order() == 128);
    CHECK(group("G128_2022_completed").order() == 128);
    CHECK(code_of([] { build(named_spec("G128_2022")); }) == ErrorCode::InconsistentPresentation);
  }

  TEST_CASE("extraspecial stem of order 243 matches the extraspecial builder") {
    const auto stem = stem_group(StemFamily::Phi5, 3);
    const auto es = build(GroupSpec{spec::Extraspecial{3, 243, ExtraspecialType::OddExponentP}});
    CHECK(stem.order() == 243);
    CHECK(center(stem).order() == 3);
    CHECK(derived_order(stem) == 3);
    CHECK(class_equation(stem) == class_equation(es));
    CHECK(B_of(stem) == B_of(es));
    CHECK(max_abelian_order(stem) == max_abelian_order(es));
  }

  TEST_CASE("malformed presentations") {
    PcPresentation pc;
    pc.relative_orders = {2, 3};
    pc.conjugates = {{0, 1, {{0, 1}}}};  // by must precede gen
    CHECK(code_of([&] { collect(pc); }) == ErrorCode::MalformedPresentation);

    PcPresentation backwards;
    backwards.relative_orders = {2, 3};
    backwards.powers = {{1, {{0, 1}}}};  // power word uses an earlier generator
    CHECK(code_of([&] { collect(backwards); }) == ErrorCode::MalformedPresentation);

    PcPresentation unit;
    unit.relative_orders = {1};
    CHECK(code_of([&] { collect(unit); }) == ErrorCode::MalformedPresentation);
  }

  TEST_CASE("inconsistent relations are reported") {
    // conjugation by g0 sends both g1 and g2 to g2
    PcPresentation pc;
    pc.relative_orders = {3, 2, 2};
    pc.conjugates = {{1, 0, {{2, 1}}}};
    CHECK(code_of([&] { collect(pc); }) == ErrorCode::InconsistentPresentation);
  }

  TEST_CASE("semidirect C3 by C2 with inversion is S3") {
    const auto c3 = cyclic_group(3);
    const auto c2 = cyclic_group(2);
    const auto g = semidirect(c3, c2, {{1, {0, 2, 1}}});
    CHECK(g.order() == 6);
    CHECK_FALSE(is_abelian(g));
    CHECK(class_equation(g) == class_equation(group("S3")));
  }

  TEST_CASE("semidirect rejects bad actions") {
    const auto c3 = cyclic_group(3);
    const auto c2 = cyclic_group(2);
    const auto c4 = cyclic_group(4);
    CHECK(code_of([&] { semidirect(c3, c2, {{1, {0, 1, 1}}}); }) == ErrorCode::NotAutomorphism);
    CHECK(code_of([&] { semidirect(c4, c2, {{1, {0, 2, 1, 3}}}); }) == ErrorCode::NotAutomorphism);
    // inversion on C3 has order 2 and cannot be the image of a generator of C3
    CHECK(code_of([&] { semidirect(c3, c3, {{1, {0, 2, 1}}}); }) == ErrorCode::NotAHomomorphism);
  }

  TEST_CASE("Frobenius groups from the worked examples") {
    const auto& f72 = group("frob72");
    CHECK(f72.order() == 72);
    CHECK(center(f72).order() == 1);
    const auto& f1029 = group("frob1029");
    CHECK(f1029.order() == 1029);
    CHECK(center(f1029).order() == 1);

    std::vector<Element> h72(8);
    std::iota(h72.begin(), h72.end(), 0);
    const auto r72 = frobenius_check(f72, Subgroup::from_elements(f72, h72));
    REQUIRE(r72.is_frobenius);
    CHECK(r72.kernel->order() == 9);
    CHECK(is_abelian(*r72.kernel));

    const auto r1029 = frobenius_check(f1029, Subgroup::from_elements(f1029, {0, 1, 2}));
    REQUIRE(r1029.is_frobenius);
    CHECK(r1029.kernel->order() == 343);
    CHECK(exponent(subgroup_as_group(*r1029.kernel)) == 7);
    CHECK(center(subgroup_as_group(*r1029.kernel)).order() == 7);
  }

  TEST_CASE("frobenius_check") {
    const auto& s3 = group("S3");
    Element t = 0;
    for (Element x = 1; x < 6; ++x) {
      if (element_order(s3, x) == 2) t = x;
    }
    const auto rs3 = frobenius_check(s3, Subgroup::from_elements(s3, {0, t}));
    CHECK(rs3.is_frobenius);
    CHECK(rs3.kernel->order() == 3);

    const auto pc = dihedral_presentation(18);
    const auto d18 = collect(pc);
    const Element beta = pc_generator(pc, 0);
    const Element alpha = pc_generator(pc, 1);
    const auto rd = frobenius_check(d18, Subgroup::from_elements(d18, {0, beta}));
    REQUIRE(rd.is_frobenius);
    CHECK(rd.kernel->order() == 9);
    CHECK(rd.kernel->contains(alpha));
    CHECK(element_order(d18, alpha) == 9);

    const auto& d8 = group("D8");
    const auto z = center(d8);
    Element x = 0;
    for (Element y = 1; y < 8; ++y) {
      if (element_order(d8, y) == 2 && !z.contains(y)) x = y;
    }
    REQUIRE(x != 0);
    const auto rd8 = frobenius_check(d8, Subgroup::from_elements(d8, {0, x}));
    CHECK_FALSE(rd8.is_frobenius);
    REQUIRE(rd8.witness.has_value());
    const Element g = *rd8.witness;
    CHECK(d8.conjugate(x, g) == x);
  }

  TEST_CASE("stem groups") {
    const auto phi2 = stem_group(StemFamily::Phi2, 3);
    CHECK(phi2.order() == 27);
    CHECK(class_equation(phi2) == class_equation(group("Heis27")));
    const auto g3 = stem_group(StemFamily::Gamma3, 2);
    CHECK(class_equation(g3) == class_equation(group("D16")));
    CHECK(exponent(g3) == 8);
    CHECK(max_abelian_order(g3) == 8);
    const auto phi10 = stem_group(StemFamily::Phi10, 3);
    CHECK(phi10.order() == 243);
    CHECK(nilpotency_class(phi10) == 4);
  }

  TEST_CASE("stem groups exist at p = 5") {
    for (auto f : {StemFamily::Phi2, StemFamily::Phi3, StemFamily::Phi4}) {
      INFO(to_string(f));
      CHECK(stem_group(f, 5).order() == stem_order(f, 5));
    }
  }

  TEST_CASE("stem families need the right prime") {
    CHECK(code_of([] { stem_group(StemFamily::Gamma4, 3); }) == ErrorCode::ParameterOutOfRange);
    CHECK(code_of([] { stem_group(StemFamily::Phi4, 2); }) == ErrorCode::ParameterOutOfRange);
  }

  TEST_CASE("shipped stem presentations match the built-in ones") {
    std::size_t files = 0;
    for (const auto& [file, text] : embedded_spec_files()) {
      if (file.rfind("stems/", 0) != 0) continue;
      ++files;
      const std::string base = file.substr(6, file.size() - 6 - 5);
      const auto shipped = collect(std::get<spec::Pc>(parse_spec_text(text).v).presentation);
      INFO(file);
      CHECK(shipped == group(base));
    }
    CHECK(files == 16);
  }
}

TEST_SUITE("constructions properties") {
  TEST_CASE("build is deterministic") {
    for (const auto& name : builtin_names()) {
      if (name == "G128_2022") continue;
      const auto spec = named_spec(name);
      if (predicted_order(spec) > 300) continue;
      INFO(name);
      CHECK(build(spec).table() == build(named_spec(name)).table());
    }
  }

  TEST_CASE("semidirect with trivial action equals the direct product") {
    for (const auto& [a, b] : std::vector<std::pair<const char*, const char*>>{
             {"S3", "C2"}, {"Q8", "C3"}, {"C4", "S3"}, {"Heis27", "C2"}, {"D8", "Q8"}}) {
      const auto& n = group(a);
      const auto& h = group(b);
      std::vector<ActionGenerator> action;
      for (Element s : generating_set(h)) {
        std::vector<Element> id(n.order());
        std::iota(id.begin(), id.end(), 0);
        action.push_back({s, id});
      }
      INFO(a << " x " << b);
      CHECK(semidirect(n, h, action) == direct_product(n, h));
    }
  }

  TEST_CASE("stem groups satisfy their structural facts") {
    struct Facts {
      StemFamily f;
      unsigned p;
      std::size_t order, center, derived;
      bool abelian_maximal;
    };
    // center from the unit-pole residue of the family invariant; the rest
    // from the families' defining properties
    const std::vector<Facts> facts = {
        {StemFamily::Phi2, 3, 27, 3, 3, true},     {StemFamily::Phi3, 3, 81, 3, 9, true},
        {StemFamily::Phi4, 3, 243, 9, 9, true},    {StemFamily::Phi5, 3, 243, 3, 3, false},
        {StemFamily::Phi6, 3, 243, 9, 27, false},  {StemFamily::Phi7, 3, 243, 3, 9, false},
        {StemFamily::Phi8, 3, 243, 3, 9, false},   {StemFamily::Phi9, 3, 243, 3, 27, true},
        {StemFamily::Phi10, 3, 243, 3, 27, false}, {StemFamily::Gamma2, 2, 8, 2, 2, true},
        {StemFamily::Gamma3, 2, 16, 2, 4, true},   {StemFamily::Gamma4, 2, 32, 4, 4, true},
        {StemFamily::Gamma5, 2, 32, 2, 2, false},  {StemFamily::Gamma6, 2, 32, 2, 4, false},
        {StemFamily::Gamma7, 2, 32, 2, 4, false},  {StemFamily::Gamma8, 2, 32, 2, 8, true},
    };
    for (const auto& f : facts) {
      const auto g = stem_group(f.f, f.p);
      const auto z = center(g);
      const auto d = derived_subgroup(g);
      INFO(to_string(f.f));
      CHECK(g.order() == f.order);
      CHECK(z.order() == f.center);
      CHECK(d.order() == f.derived);
      for (Element x : z.elements()) CHECK(d.contains(x));  // stem: Z(G) <= G'
      CHECK(testing::has_abelian_subgroup_of_index(g, f.p) == f.abelian_maximal);
    }
    // maximal class: class m - 1 for order p^m
    CHECK(nilpotency_class(stem_group(StemFamily::Phi9, 3)) == 4);
    CHECK(nilpotency_class(stem_group(StemFamily::Phi10, 3)) == 4);
    CHECK(nilpotency_class(stem_group(StemFamily::Gamma8, 2)) == 4);
    CHECK(nilpotency_class(stem_group(StemFamily::Gamma3, 2)) == 3);
  }

  TEST_CASE("Frobenius complement order divides kernel order minus one") {
    struct Case {
      const FiniteGroup* g;
      std::vector<Element> h;
    };
    const auto& s3 = group("S3");
    const auto& f72 = group("frob72");
    const auto& f1029 = group("frob1029");
    const auto& a4 = group("A4");
    std::vector<Case> cases{{&f72, {0, 1, 2, 3, 4, 5, 6, 7}}, {&f1029, {0, 1, 2}}};
    for (const auto* g : {&s3, &group("D10"), &group("G18_1"), &group("G18_4"), &a4}) {
      // every cyclic subgroup
      for (Element x = 1; x < g->order(); ++x) {
        const Element gens[] = {x};
        cases.push_back({g, generate(*g, gens).elements()});
      }
    }
    std::size_t frobenius = 0;
    for (const auto& c : cases) {
      const auto r = frobenius_check(*c.g, Subgroup::from_elements(*c.g, c.h));
      if (!r.is_frobenius) continue;
      ++frobenius;
      const std::size_t n = r.kernel->order();
      CHECK(n * c.h.size() == c.g->order());
      CHECK((n - 1) % c.h.size() == 0);
    }
    CHECK(frobenius >= 10);
  }
}

#include <doctest.h>

#include <algorithm>
#include <set>

#include "orbitgf/error.hpp"
#include "orbitgf/group.hpp"
#include "support.hpp"

using namespace orbitgf;
using testing::catalog_groups;
using testing::group;

namespace {

std::vector<std::vector<Element>> cyclic_table(std::size_t n) {
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<Element>((a + b) % n);
  }
  return t;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Parse;
}

Element element_of_order(const FiniteGroup& g, std::size_t order) {
  for (Element x = 0; x < g.order(); ++x) {
    if (element_order(g, x) == order) return x;
  }
  FAIL("no element of the requested order");
  return 0;
}

}  // namespace

TEST_SUITE("group-core") {
  TEST_CASE("C2 table validates") {
    const auto g = verify_group_axioms({{0, 1}, {1, 0}});
    CHECK(g.order() == 2);
    CHECK(g.inv(1) == 1);
  }

  TEST_CASE("identity is relabeled to index 0") {
    // C3 with the identity stored at index 2
    const auto g = verify_group_axioms({{1, 2, 0}, {2, 0, 1}, {0, 1, 2}});
    CHECK(g.mul(0, 1) == 1);
    CHECK(g.mul(2, 0) == 2);
    for (Element x = 0; x < 3; ++x) CHECK(g.mul(x, g.inv(x)) == 0);
  }

  TEST_CASE("axiom violations are reported") {
    // Latin square with identity and inverses, not associative
    const std::vector<std::vector<Element>> loop{
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    CHECK(code_of([&] { verify_group_axioms(loop); }) == ErrorCode::NotAssociative);

    auto bad_range = cyclic_table(3);
    bad_range[1][1] = 7;
    CHECK(code_of([&] { verify_group_axioms(bad_range); }) == ErrorCode::NotClosed);

    CHECK(code_of([] { verify_group_axioms({{1, 1}, {1, 1}}); }) == ErrorCode::NoIdentity);
    // left-identity-only magma with no inverse for element 1
    CHECK(code_of([] { verify_group_axioms({{0, 1, 2}, {1, 1, 1}, {2, 1, 0}}); }) ==
          ErrorCode::NoInverse);
  }

  TEST_CASE("S3 from permutations") {
    const auto& s3 = group("S3");
    CHECK(s3.order() == 6);
    CHECK(s3.identity() == 0);
    CHECK_FALSE(is_abelian(s3));
  }

  TEST_CASE("centralizers") {
    const auto& s3 = group("S3");
    const Element t = element_of_order(s3, 2);
    CHECK(centralizer(s3, t).order() == 2);
    CHECK(centralizer(s3, 0).order() == 6);
    const auto& q8 = group("Q8");
    const Element i = element_of_order(q8, 4);
    const auto zi = centralizer(q8, i);
    CHECK(zi.order() == 4);
    CHECK(is_abelian(subgroup_as_group(zi)));
    CHECK(exponent(subgroup_as_group(zi)) == 4);
  }

  TEST_CASE("centers") {
    CHECK(center(group("Q8")).order() == 2);
    CHECK(center(group("S3")).order() == 1);
    CHECK(center(group("C6")).order() == 6);
  }

  TEST_CASE("conjugacy classes") {
    auto sizes = [](const FiniteGroup& g) {
      auto s = conjugacy_classes(g).class_sizes;
      std::sort(s.begin(), s.end());
      return s;
    };
    CHECK(sizes(group("S3")) == std::vector<std::size_t>{1, 2, 3});
    CHECK(sizes(group("Q8")) == std::vector<std::size_t>{1, 1, 2, 2, 2});
    CHECK(conjugacy_classes(group("C7")).class_count() == 7);
  }

  TEST_CASE("class equations") {
    CHECK(class_equation(group("S3")).counts == std::map<std::size_t, std::size_t>{{2, 3}, {3, 2}, {6, 1}});
    CHECK(class_equation(group("G18_1")).counts ==
          std::map<std::size_t, std::size_t>{{2, 9}, {9, 8}, {18, 1}});
    CHECK(class_equation(group("C4")).counts == std::map<std::size_t, std::size_t>{{4, 4}});
  }

  TEST_CASE("subgroup_as_group") {
    const auto& q8 = group("Q8");
    const auto sub = subgroup_as_group(centralizer(q8, element_of_order(q8, 4)));
    CHECK(sub.order() == 4);
    CHECK(exponent(sub) == 4);
    CHECK(subgroup_as_group(whole_group(q8)) == q8);
    CHECK(subgroup_as_group(trivial_subgroup(q8)).order() == 1);
  }

  TEST_CASE("AC predicate") {
    CHECK(is_ac_group(group("Q8")));
    CHECK(is_ac_group(group("S3")));
    const auto& dd = group("D8xD8");
    CHECK_FALSE(is_ac_group(dd));
    // witness: a non-central element whose centralizer is not abelian
    bool witness = false;
    const auto z = center(dd);
    for (Element x = 0; x < dd.order() && !witness; ++x) {
      if (!z.contains(x) && !is_abelian(centralizer(dd, x))) witness = true;
    }
    CHECK(witness);
  }

  TEST_CASE("max abelian order") {
    CHECK(max_abelian_order(group("C12")) == 12);
    CHECK(max_abelian_order(group("S3")) == 3);
    CHECK(max_abelian_order(group("Q8")) == 4);
  }

  TEST_CASE("max abelian order agrees with subgroup enumeration") {
    // every abelian subgroup is reached from the trivial one by adjoining
    // elements that commute with everything so far
    for (const char* name : {"S3", "Q8", "D8", "A4", "D12", "Q16", "SD16", "M16", "G18_4", "Heis27",
                             "G54_6", "Gamma5"}) {
      const auto& g = group(name);
      std::set<std::vector<Element>> seen{{0}};
      std::vector<std::vector<Element>> queue{{0}};
      std::size_t best = 1;
      while (!queue.empty()) {
        const auto cur = queue.back();
        queue.pop_back();
        best = std::max(best, cur.size());
        for (Element w = 0; w < g.order(); ++w) {
          if (std::binary_search(cur.begin(), cur.end(), w)) continue;
          if (!std::all_of(cur.begin(), cur.end(), [&](Element v) { return g.commute(v, w); })) {
            continue;
          }
          auto gens = cur;
          gens.push_back(w);
          auto next = generate(g, gens).elements();
          if (seen.insert(next).second) queue.push_back(std::move(next));
        }
      }
      INFO(name);
      CHECK(max_abelian_order(g) == best);
    }
  }

  TEST_CASE("derived subgroups") {
    CHECK(derived_subgroup(group("C6")).order() == 1);
    CHECK(derived_subgroup(group("S3")).order() == 3);
    CHECK(derived_subgroup(group("Q8")).order() == 2);
  }

  TEST_CASE("subgroup from a non-closed set is rejected") {
    const auto& s3 = group("S3");
    const Element t = element_of_order(s3, 2);
    CHECK(code_of([&] { Subgroup::from_elements(s3, {0, t, element_of_order(s3, 3)}); }) ==
          ErrorCode::NotClosed);
  }
}

TEST_SUITE("group-core properties") {
  TEST_CASE("orbit-stabilizer: centralizer order times class size is the group order") {
    for (const auto& [name, g] : catalog_groups()) {
      const auto cd = conjugacy_classes(*g);
      std::size_t total = 0;
      for (std::size_t c = 0; c < cd.class_count(); ++c) {
        CHECK(cd.class_sizes[c] * cd.centralizer_orders[c] == g->order());
        total += cd.class_sizes[c];
      }
      CHECK(total == g->order());
      if (g->order() <= 256) {
        for (Element x = 0; x < g->order(); ++x) {
          const auto c = cd.class_of[x];
          REQUIRE(centralizer(*g, x).order() * cd.class_sizes[c] == g->order());
        }
      }
    }
  }

  TEST_CASE("class equation sums to the order and z at |G| is the center") {
    for (const auto& [name, g] : catalog_groups()) {
      INFO(name);
      const auto s = class_equation(*g);
      CHECK(s.total() == g->order());
      CHECK(s.at(g->order()) == center(*g).order());
      const auto cd = conjugacy_classes(*g);
      CHECK(std::count(cd.class_sizes.begin(), cd.class_sizes.end(), 1u) ==
            static_cast<long>(center(*g).order()));
      for (const auto& [m, z] : s.counts) CHECK(g->order() % m == 0);
    }
  }

  TEST_CASE("AC criterion: commuting non-central elements share a centralizer") {
    std::size_t ac_groups = 0;
    for (const auto& [name, g] : catalog_groups()) {
      if (g->order() > 256 || !is_ac_group(*g)) continue;
      ++ac_groups;
      INFO(name);
      const auto z = center(*g);
      std::vector<Subgroup> cents;
      for (Element x = 0; x < g->order(); ++x) cents.push_back(centralizer(*g, x));
      for (Element x = 0; x < g->order(); ++x) {
        if (z.contains(x)) continue;
        for (Element y : cents[x].elements()) {
          if (!z.contains(y)) REQUIRE(cents[x] == cents[y]);
        }
      }
    }
    CHECK(ac_groups > 10);
  }

  TEST_CASE("AC predicate matches the shared-centralizer criterion") {
    for (const auto& [name, g] : catalog_groups()) {
      if (g->order() > 128) continue;
      INFO(name);
      const auto z = center(*g);
      bool criterion = true;
      for (Element x = 0; x < g->order() && criterion; ++x) {
        if (z.contains(x)) continue;
        const auto cx = centralizer(*g, x);
        for (Element y : cx.elements()) {
          if (!z.contains(y) && !(centralizer(*g, y) == cx)) {
            criterion = false;
            break;
          }
        }
      }
      CHECK(is_ac_group(*g) == criterion);
    }
  }

  TEST_CASE("max abelian order lies between the center and the group") {
    for (const auto& [name, g] : catalog_groups()) {
      INFO(name);
      const auto a = max_abelian_order(*g);
      CHECK(a >= center(*g).order());
      CHECK(a <= g->order());
      CHECK((a == g->order()) == is_abelian(*g));
    }
  }

  TEST_CASE("subgroup_as_group is a homomorphism") {
    for (const auto& [name, g] : catalog_groups()) {
      if (g->order() > 256) continue;
      std::set<std::vector<Element>> seen;
      for (Element x = 0; x < g->order(); ++x) {
        const auto s = centralizer(*g, x);
        if (s.order() > 64 || !seen.insert(s.elements()).second) continue;
        const auto h = subgroup_as_group(s);
        const auto& phi = s.elements();
        for (Element a = 0; a < h.order(); ++a) {
          for (Element b = 0; b < h.order(); ++b) {
            REQUIRE(phi[h.mul(a, b)] == g->mul(phi[a], phi[b]));
          }
        }
      }
    }
  }
}

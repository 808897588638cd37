#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "pgcl/constructions.hpp"
#include "pgcl/quotient.hpp"
#include "pgcl/series.hpp"
#include "pgcl/subgroup.hpp"
#include "oracles.hpp"

using namespace pgcl;

namespace {

std::set<Element> as_set(const std::vector<Element>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("subgroup closure basics", "[subgroup]") {
  PcGroup G = build_heisenberg(5);

  SECTION("closure of nothing is trivial") {
    Subgroup T = subgroup_closure(G, {});
    REQUIRE(T.is_trivial());
    REQUIRE(T.order() == 1);
    REQUIRE(T.contains(G->identity()));
  }

  SECTION("closure of g1 has order 5") {
    Subgroup H = subgroup_closure(G, {G->generator(1)});
    REQUIRE(H.order() == 5);
    REQUIRE(as_set(enumerate_elements(H)) ==
            oracle::bfs_closure(G, {G->generator(1)}));
  }

  SECTION("closure is idempotent and canonical") {
    oracle::Rng rng(5);
    for (int t = 0; t < 20; ++t) {
      Subgroup H = subgroup_closure(G, {rng.element(G), rng.element(G)});
      REQUIRE(subgroup_closure(G, H.igs()) == H);
      REQUIRE(subgroup_closure(G, enumerate_elements(H)) == H);
    }
  }

  SECTION("membership agrees with brute force") {
    oracle::Rng rng(17);
    for (int t = 0; t < 10; ++t) {
      Element a = rng.element(G), b = rng.element(G);
      Subgroup H = subgroup_closure(G, {a, b});
      auto brute = oracle::bfs_closure(G, {a, b});
      REQUIRE(H.order() == brute.size());
      for (const auto& x : oracle::all_elements(G))
        REQUIRE(H.contains(x) == (brute.count(x) > 0));
    }
  }

  SECTION("distinct leading indices: g1 is not in <g3>") {
    Subgroup Z = subgroup_closure(G, {G->generator(3)});
    REQUIRE_FALSE(Z.contains(G->generator(1)));
  }
}

TEST_CASE("closure and membership in the order-p^6 example", "[subgroup]") {
  PcGroup G = build_huppert_example(5);
  // <a1, a2, a3, b2> is the derived subgroup, order 5^4.
  Subgroup H = subgroup_closure(G, {G->generator(4), G->generator(5), G->generator(6),
                                    G->generator(3)});
  REQUIRE(H.order() == 625);
  REQUIRE(H == derived_subgroup(G));
  REQUIRE_FALSE(H.contains(G->generator(1)));  // x generates outside Phi(G)

  oracle::Rng rng(23);
  for (int t = 0; t < 8; ++t) {
    Element a = rng.element(G), b = rng.element(G);
    Subgroup K = subgroup_closure(G, {a, b});
    auto brute = oracle::bfs_closure(G, {a, b});
    REQUIRE(K.order() == brute.size());
    for (int s = 0; s < 50; ++s) {
      Element x = rng.element(G);
      REQUIRE(K.contains(x) == (brute.count(x) > 0));
    }
  }
}

TEST_CASE("normal closure", "[subgroup]") {
  SECTION("normal closure of the identity is trivial") {
    PcGroup G = build_heisenberg(5);
    REQUIRE(normal_closure(G, {G->identity()}, full_group(G)).is_trivial());
  }

  SECTION("free class-2 group: commutators are central") {
    FreeClass2Group F = build_free_class2(5, 3);
    const PcGroup& G = F.group;
    Element c = G->commutator(G->generator(1), G->generator(2));
    Subgroup N = normal_closure(G, {c}, full_group(G));
    REQUIRE(N.order() == 5);
    REQUIRE(N == subgroup_closure(G, {c}));
  }

  SECTION("order-p^6 example: <a3> is normal of order 5") {
    PcGroup G = build_huppert_example(5);
    Subgroup N = normal_closure(G, {G->generator(6)}, full_group(G));
    REQUIRE(N.order() == 5);
    REQUIRE(is_normal_in_group(N));
  }
}

TEST_CASE("lattice operations", "[subgroup]") {
  PcGroup G = build_huppert_example(5);
  Subgroup whole = full_group(G);
  Subgroup der = derived_subgroup(G);
  Subgroup g3 = lower_central(G, 3);

  REQUIRE(index(whole, whole) == 1);
  REQUIRE(index(whole, der) == 25);
  REQUIRE(index(der, g3) == 5);
  REQUIRE(intersection(der, der) == der);

  SECTION("lattice laws on random pairs") {
    oracle::Rng rng(31);
    for (int t = 0; t < 10; ++t) {
      Subgroup H = subgroup_closure(G, {rng.element(G)});
      Subgroup K = subgroup_closure(G, {rng.element(G), rng.element(G)});
      Subgroup M = intersection(H, K);
      REQUIRE(H.contains(M));
      REQUIRE(K.contains(M));
      if (is_normal(K, H) || is_normal(H, K)) {
        Subgroup P = product(H, K);
        REQUIRE(P.order() == H.order() * K.order() / M.order());
      }
    }
  }

  SECTION("product requires a normalization hypothesis") {
    PcGroup F = build_free_class2(5, 3).group;
    Subgroup A = subgroup_closure(F, {F->generator(1)});
    Subgroup B = subgroup_closure(F, {F->generator(2)});
    REQUIRE_FALSE(is_normal(B, A));
    REQUIRE_FALSE(is_normal(A, B));
    REQUIRE_THROWS(product(A, B));
  }
}

TEST_CASE("transversal and coset representatives", "[subgroup]") {
  PcGroup G = build_huppert_example(5);
  Subgroup H = derived_subgroup(G);
  auto reps = transversal(G, H);
  REQUIRE(reps.size() == 25);
  std::set<Element> canon;
  for (const auto& r : reps) canon.insert(coset_representative(H, r));
  REQUIRE(canon.size() == 25);
  // Every element reduces into the rep set, and the rep is constant on
  // cosets.
  oracle::Rng rng(77);
  auto h_elems = enumerate_elements(H);
  for (int t = 0; t < 100; ++t) {
    Element x = rng.element(G);
    Element r = coset_representative(H, x);
    REQUIRE(canon.count(r) == 1);
    REQUIRE(H.contains(G->mul(G->inv(r), x)));
    Element h = h_elems[rng.uniform(H.order())];
    REQUIRE(coset_representative(H, G->mul(x, h)) == r);
  }
}

TEST_CASE("centralizers and center via orbit-stabilizer", "[subgroup][oracle]") {
  for (auto G : {build_heisenberg(5), build_extraspecial(5, false),
                 build_jordan_block_group(5), build_huppert_example(5)}) {
    Subgroup Z = center(G);
    auto naive = oracle::naive_center(G);
    REQUIRE(Z.order() == naive.size());
    for (const auto& z : naive) REQUIRE(Z.contains(z));

    oracle::Rng rng(3);
    for (int t = 0; t < 5; ++t) {
      Element a = rng.element(G);
      Subgroup C = centralizer(G, a);
      std::uint64_t count = 0;
      for (const auto& x : oracle::all_elements(G))
        if (G->commutator(x, a).is_identity()) ++count;
      REQUIRE(C.order() == count);
    }
  }
}

TEST_CASE("quotient maps", "[subgroup][quotient]") {
  PcGroup G = build_huppert_example(5);

  SECTION("quotient by the trivial subgroup preserves order") {
    QuotientMap q = quotient(G, trivial_subgroup(G));
    REQUIRE(q.target()->order() == G->order());
  }

  SECTION("quotient by G is trivial") {
    QuotientMap q = quotient(G, full_group(G));
    REQUIRE(q.target()->order() == 1);
  }

  SECTION("quotient by gamma_5 has order 5^5 and class 4") {
    Subgroup g5 = lower_central(G, 5);
    REQUIRE(g5.order() == 5);
    QuotientMap q = quotient(G, g5);
    REQUIRE(q.target()->order() == 3125);
    REQUIRE(nilpotency_class(q.target()) == 4);
  }

  SECTION("map is a homomorphism with the stated kernel") {
    Subgroup g4 = lower_central(G, 4);
    QuotientMap q = quotient(G, g4);
    oracle::Rng rng(11);
    for (int t = 0; t < 1000; ++t) {
      Element a = rng.element(G), b = rng.element(G);
      REQUIRE(q.project(G->mul(a, b)) == q.target()->mul(q.project(a), q.project(b)));
    }
    for (const auto& x : oracle::all_elements(G))
      REQUIRE(q.project(x).is_identity() == g4.contains(x));
    for (const auto& y : oracle::all_elements(q.target()))
      REQUIRE(q.project(q.section(y)) == y);
  }

  SECTION("non-normal kernels are rejected") {
    Subgroup H = subgroup_closure(G, {G->generator(2)});
    REQUIRE_FALSE(is_normal_in_group(H));
    REQUIRE_THROWS(quotient(G, H));
  }
}

TEST_CASE("condition subgroups", "[subgroup][quotient]") {
  SECTION("abelian G: the condition is vacuous") {
    PcGroup A = build_elementary_abelian(5, 3);
    Subgroup C = condition_subgroup(A, full_group(A), trivial_subgroup(A));
    REQUIRE(C.order() == A->order());
  }

  SECTION("extraspecial exponent p: D(1) = Z(G) = G' of index 25") {
    PcGroup G = build_heisenberg(5);
    Subgroup D = condition_subgroup(G, full_group(G), trivial_subgroup(G));
    REQUIRE(D == center(G));
    REQUIRE(D == derived_subgroup(G));
    REQUIRE(index(full_group(G), D) == 25);
  }

  SECTION("order-p^6 example: C_2 is maximal") {
    PcGroup G = build_huppert_example(5);
    Subgroup der = derived_subgroup(G);
    Subgroup g4 = lower_central(G, 4);
    Subgroup gp = power_subgroup(der, 1);
    Subgroup c2 = condition_subgroup(G, der, product(g4, gp));
    REQUIRE(index(full_group(G), c2) == 5);
  }

  SECTION("agrees with brute force on corpus groups") {
    for (auto G : {build_heisenberg(5), build_jordan_block_group(5),
                   build_huppert_example(5)}) {
      Subgroup der = derived_subgroup(G);
      Subgroup mod = lower_central(G, 3);
      Subgroup C = condition_subgroup(G, der, mod);
      std::uint64_t count = 0;
      for (const auto& z : oracle::all_elements(G)) {
        bool ok = true;
        for (const auto& t : der.igs())
          if (!mod.contains(G->commutator(z, t))) ok = false;
        if (ok) {
          ++count;
          REQUIRE(C.contains(z));
        }
      }
      REQUIRE(C.order() == count);
    }
  }

  SECTION("non-normal modulus is rejected") {
    PcGroup G = build_huppert_example(5);
    Subgroup H = subgroup_closure(G, {G->generator(2)});
    REQUIRE_THROWS(condition_subgroup(G, full_group(G), H));
  }
}

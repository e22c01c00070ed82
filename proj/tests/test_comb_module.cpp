#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "torlog/comb_module.hpp"

using namespace torlog;

namespace {

VecZ vz(std::initializer_list<long> xs) {
  VecZ v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

MonoidPresentation nat() { return MonoidPresentation(1, {vz({1})}); }
MonoidPresentation nat2() { return MonoidPresentation(2, {vz({1, 0}), vz({0, 1})}); }
MonoidPresentation n23() { return MonoidPresentation(1, {vz({2}), vz({3})}); }

CombinatorialModule nat_mod2() {
  return CombinatorialModule(nat(), FractionalIdeal(nat(), {vz({0})}),
                             FractionalIdeal(nat(), {vz({2})}), MonoidIdeal::empty(nat()));
}

}  // namespace

TEST_CASE("graded pieces") {
  CombinatorialModule e = CombinatorialModule::ring_modulo(nat(), maximal_ideal(nat()));
  CHECK(e.graded_piece(vz({0})) == 1);
  CHECK(e.graded_piece(vz({1})) == 0);
  CombinatorialModule e2 = nat_mod2();
  CHECK(e2.graded_piece(vz({1})) == 1);
  CHECK(e2.graded_piece(vz({2})) == 0);
  CHECK(e2.graded_piece(vz({-1})) == 0);
}

TEST_CASE("module invariants are validated") {
  // denominator outside the numerator
  CHECK_THROWS_AS(CombinatorialModule(nat(), FractionalIdeal(nat(), {vz({2})}),
                                      FractionalIdeal(nat(), {vz({0})}), MonoidIdeal::empty(nat())),
                  ValidationError);
  // annihilating ideal that does not land in the denominator
  CHECK_THROWS_AS(CombinatorialModule(nat(), FractionalIdeal(nat(), {vz({0})}),
                                      FractionalIdeal(nat(), {vz({5})}),
                                      MonoidIdeal(nat(), {vz({1})})),
                  ValidationError);
}

TEST_CASE("element annihilators") {
  CombinatorialModule e = nat_mod2();
  MonoidIdeal a1 = element_annihilator(e, vz({1}));
  CHECK(a1.generators() == std::vector<VecZ>{vz({1})});
  // the annihilator of the class at 0 is the ideal {2,3,...}; reduced it is (2)
  MonoidIdeal a0 = element_annihilator(e, vz({0}));
  CHECK(a0.same_ideal(MonoidIdeal(nat(), {vz({2}), vz({3})})));
  CHECK(a0.generators() == std::vector<VecZ>{vz({2})});
  CHECK(!is_prime(a0));
  CHECK_THROWS_AS(element_annihilator(e, vz({5})), DegreeNotPresentError);

  // with a nonzero relative ideal the annihilator contains it
  MonoidIdeal k(nat(), {vz({4})});
  CombinatorialModule er(nat(), FractionalIdeal(nat(), {vz({0})}),
                         FractionalIdeal(nat(), {vz({4})}), k);
  MonoidIdeal a = element_annihilator(er, vz({0}));
  CHECK(a.same_ideal(k));
}

TEST_CASE("prime filtration of the two step example") {
  PrimeFiltration f = prime_filtration(nat_mod2());
  REQUIRE(f.steps.size() == 2);
  MonoidIdeal nplus = maximal_ideal(nat());
  CHECK(f.steps[0].prime.same_ideal(nplus));
  CHECK(f.steps[1].prime.same_ideal(nplus));
  CHECK(f.steps[0].witness_degree == vz({1}));
  CHECK(f.steps[1].witness_degree == vz({0}));
  CHECK(replay_filtration(f));
}

TEST_CASE("prime filtration of a prime quotient is a single step") {
  MonoidIdeal k(nat2(), {vz({1, 0})});
  REQUIRE(is_prime(k));
  CombinatorialModule e = CombinatorialModule::ring_modulo(nat2(), k);
  PrimeFiltration f = prime_filtration(e);
  REQUIRE(f.steps.size() == 1);
  CHECK(f.steps[0].prime.same_ideal(k));
  CHECK(f.steps[0].witness_degree == vz({0, 0}));
  CHECK(replay_filtration(f));
}

TEST_CASE("prime filtration of the zero module is empty") {
  CombinatorialModule z(nat(), FractionalIdeal(nat(), {vz({1})}), FractionalIdeal(nat(), {vz({1})}),
                        MonoidIdeal::empty(nat()));
  CHECK(z.is_zero_module());
  PrimeFiltration f = prime_filtration(z);
  CHECK(f.steps.empty());
  CHECK(replay_filtration(f));
}

TEST_CASE("every filtration prime is prime and the replay is faithful") {
  std::vector<CombinatorialModule> mods;
  mods.push_back(nat_mod2());
  mods.push_back(CombinatorialModule(n23(), FractionalIdeal(n23(), {vz({0}), vz({1})}),
                                     FractionalIdeal(n23(), {}), MonoidIdeal::empty(n23())));
  mods.push_back(CombinatorialModule(nat2(), FractionalIdeal(nat2(), {vz({0, 0})}),
                                     FractionalIdeal(nat2(), {vz({2, 0}), vz({0, 1})}),
                                     MonoidIdeal::empty(nat2())));
  for (const auto& e : mods) {
    PrimeFiltration f = prime_filtration(e);
    CHECK(!f.steps.empty());
    for (const auto& s : f.steps) CHECK(is_prime(s.prime));
    CHECK(replay_filtration(f));
  }
}

TEST_CASE("filtration prime multiset survives generator permutation") {
  MonoidPresentation a(2, {vz({1, 0}), vz({0, 1})});
  MonoidPresentation b(2, {vz({0, 1}), vz({1, 0})});
  auto build = [](const MonoidPresentation& p) {
    return CombinatorialModule(p, FractionalIdeal(p, {vz({0, 0})}),
                               FractionalIdeal(p, {vz({2, 0}), vz({0, 1})}),
                               MonoidIdeal::empty(p));
  };
  auto collect = [](const PrimeFiltration& f) {
    std::vector<std::vector<VecZ>> primes;
    for (const auto& s : f.steps) primes.push_back(s.prime.generators());
    std::sort(primes.begin(), primes.end());
    return primes;
  };
  CHECK(collect(prime_filtration(build(a))) == collect(prime_filtration(build(b))));
}

TEST_CASE("quotient by an ideal") {
  CombinatorialModule e = CombinatorialModule::free_ring(nat());
  MonoidIdeal j(nat(), {vz({3})});
  CombinatorialModule q = quotient_by_ideal(e, j);
  CHECK(q.graded_piece(vz({2})) == 1);
  CHECK(q.graded_piece(vz({3})) == 0);
  CHECK(q.relative_to().same_ideal(j));
}

TEST_CASE("restriction of scalars along the identity") {
  CombinatorialModule e = nat_mod2();
  auto s = restrict_scalars(e, nat(), IntMatrix::identity(1), 10);
  REQUIRE(s.size() == 1);
  CHECK(s[0].summand.numerator().same_set(e.numerator()));
  CHECK(s[0].summand.denominator().same_set(e.denominator()));
}

TEST_CASE("restriction of the zero module is empty") {
  CombinatorialModule z(nat(), FractionalIdeal(nat(), {vz({1})}), FractionalIdeal(nat(), {vz({1})}),
                        MonoidIdeal::empty(nat()));
  CHECK(restrict_scalars(z, n23(), IntMatrix::identity(1), 10).empty());
}

TEST_CASE("restriction of the normalization to a numerical semigroup") {
  // Z[N] restricted along <2,3> into N: one gp coset, numerator generated by 0 and 1
  CombinatorialModule e = CombinatorialModule::free_ring(nat());
  auto s = restrict_scalars(e, n23(), IntMatrix::identity(1), 12);
  REQUIRE(s.size() == 1);
  CHECK(s[0].summand.numerator().generators() == std::vector<VecZ>{vz({0}), vz({1})});
  CHECK(s[0].summand.denominator().is_empty());
  CHECK(s[0].summand.relative_to().is_empty());
}

TEST_CASE("restriction matches graded ranks degreewise") {
  struct CaseDef {
    CombinatorialModule e;
    MonoidPresentation p;
  };
  std::vector<CaseDef> cases{
      {CombinatorialModule::free_ring(nat()), n23()},
      {nat_mod2(), n23()},
  };
  for (auto& c : cases) {
    auto summands = restrict_scalars(c.e, c.p, IntMatrix::identity(1), 12);
    for (long g = -4; g <= 14; ++g) {
      int lhs = c.e.graded_piece(vz({g}));
      int rhs = 0;
      for (const auto& s : summands) {
        VecZ target = vec_sub(vz({g}), s.coset);
        rhs += s.summand.graded_piece(target);
      }
      CAPTURE(g);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("restriction with infinite index is refused") {
  // N embedded on the first axis of N^2 has infinite gp index
  CombinatorialModule e = CombinatorialModule::free_ring(nat2());
  IntMatrix axis(2, 1);
  axis.at(0, 0) = 1;
  MonoidPresentation p = nat();
  CHECK_THROWS_AS(restrict_scalars(e, p, axis, 8), BoundExceededError);
}

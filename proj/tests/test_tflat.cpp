#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "torlog/tflat.hpp"

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
MonoidPresentation flagm() {
  return MonoidPresentation(2, {vz({0, 2}), vz({1, 0}), vz({2, -2})});
}

// the Z[N]-module restricted to <2,3>: numerator generated by 0 and 1
CombinatorialModule normalization_summand() {
  MonoidPresentation p = n23();
  return CombinatorialModule(p, FractionalIdeal(p, {vz({0}), vz({1})}), FractionalIdeal(p, {}),
                             MonoidIdeal::empty(p));
}

}  // namespace

TEST_CASE("monomial presentation of the maximal ideal of <2,3>") {
  MonoidPresentation p = n23();
  auto pres = present_ideal(maximal_ideal(p), MonoidIdeal::empty(p));
  CHECK(pres.free_gens == std::vector<VecZ>{vz({2}), vz({3})});
  REQUIRE(pres.syzygies.size() == 2);
  CHECK(pres.syzygies[0].degree == vz({5}));
  CHECK(pres.syzygies[1].degree == vz({6}));
  CHECK(pres.annihilations.empty());
}

TEST_CASE("monomial presentation of a principal ideal has no syzygies") {
  MonoidPresentation p = nat2();
  auto pres = present_ideal(MonoidIdeal(p, {vz({1, 0})}), MonoidIdeal::empty(p));
  CHECK(pres.free_gens.size() == 1);
  CHECK(pres.syzygies.empty());
  CHECK(pres.annihilations.empty());
}

TEST_CASE("monomial presentation with J equal to K is fully annihilated") {
  MonoidPresentation p = nat();
  MonoidIdeal j(p, {vz({2})});
  auto pres = present_ideal(j, j);
  CHECK(pres.free_gens.size() == 1);
  REQUIRE(pres.annihilations.size() == 1);
  CHECK(pres.annihilations[0].shift == vz({0}));
  // K not inside J is rejected
  CHECK_THROWS_AS(present_ideal(j, maximal_ideal(p)), ValidationError);
}

TEST_CASE("tor1 of the normalization summand: explicit small degrees") {
  MonoidPresentation p = n23();
  CombinatorialModule e = normalization_summand();
  auto pres = present_ideal(maximal_ideal(p), MonoidIdeal::empty(p));
  // frozen from the explicit degree-by-degree homology: ranks at 0..8
  std::vector<int> expect{0, 0, 0, 1, 1, 0, 0, 0, 0};
  for (long g = 0; g <= 8; ++g) {
    CAPTURE(g);
    CHECK(tor1_piece(pres, e, vz({g})) == expect[g]);
  }
  // the degree 4 piece comes from a rank 2 chain group mapping onto a rank 1
  // target with no syzygy in range, matching the stated oracle matrices
  CHECK(oracle::tor1_rank(maximal_ideal(p), MonoidIdeal::empty(p), e, vz({4})) == 1);
  CHECK(oracle::tor1_rank(maximal_ideal(p), MonoidIdeal::empty(p), e, vz({3})) == 1);
}

TEST_CASE("tor1 vanishes on the base ring") {
  MonoidPresentation p = n23();
  CombinatorialModule e = CombinatorialModule::free_ring(p);
  auto pres = present_ideal(maximal_ideal(p), MonoidIdeal::empty(p));
  for (long g = -2; g <= 12; ++g) CHECK(tor1_piece(pres, e, vz({g})) == 0);
  // degrees outside all generator shifts vanish trivially
  CHECK(tor1_piece(pres, normalization_summand(), vz({-3})) == 0);
}

TEST_CASE("tor1 on free modules over N^d at random degrees") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<long> coord(-6, 12);
  for (size_t d : {2u, 3u}) {
    std::vector<VecZ> gens;
    for (size_t i = 0; i < d; ++i) {
      VecZ v(d, Int(0));
      v[i] = 1;
      gens.push_back(v);
    }
    MonoidPresentation p(d, gens);
    CombinatorialModule e = CombinatorialModule::free_ring(p);
    auto pres = present_ideal(maximal_ideal(p), MonoidIdeal::empty(p));
    for (int iter = 0; iter < 250; ++iter) {
      VecZ g(d);
      for (auto& x : g) x = coord(rng);
      CHECK(tor1_piece(pres, e, g) == 0);
    }
  }
}

TEST_CASE("is_tflat on the desk examples") {
  {
    CombinatorialModule e = normalization_summand();
    TorVerdict v = is_tflat(e, MonoidIdeal::empty(n23()), 12);
    REQUIRE(!v.flat_up_to_bound);
    CHECK(v.witness_prime.same_ideal(maximal_ideal(n23())));
    // the minimal witness sits at weight 3; weight 4 also witnesses (the
    // stated degree-4 matrices), see the decisions ledger for the discrepancy
    CHECK(v.witness_degree == vz({3}));
    CHECK(v.kernel_rank == 1);
    // replay
    auto pres = present_ideal(v.witness_prime, MonoidIdeal::empty(n23()));
    CHECK(tor1_piece(pres, e, v.witness_degree) == v.kernel_rank);
  }
  {
    TorVerdict v = is_tflat(CombinatorialModule::free_ring(n23()), MonoidIdeal::empty(n23()), 12);
    CHECK(v.flat_up_to_bound);
    CHECK(v.primes_checked == 2);
  }
  {
    // E = Z[P]/(K) as a module over itself is flat
    MonoidIdeal k(nat2(), {vz({1, 0})});
    TorVerdict v = is_tflat(CombinatorialModule::ring_modulo(nat2(), k), k, 10);
    CHECK(v.flat_up_to_bound);
  }
}

TEST_CASE("weak t-flatness") {
  CombinatorialModule e = normalization_summand();
  TorVerdict v = is_weakly_tflat(e, MonoidIdeal::empty(n23()), 12);
  REQUIRE(!v.flat_up_to_bound);
  CHECK(v.witness_prime.same_ideal(maximal_ideal(n23())));
  CHECK(v.kernel_rank == 1);
  CHECK(is_weakly_tflat(CombinatorialModule::free_ring(n23()), MonoidIdeal::empty(n23()), 12)
            .flat_up_to_bound);
  // a zero module is vacuously flat
  CombinatorialModule z(nat(), FractionalIdeal(nat(), {vz({1})}), FractionalIdeal(nat(), {vz({1})}),
                        MonoidIdeal::empty(nat()));
  CHECK(is_weakly_tflat(z, MonoidIdeal::empty(nat()), 8).flat_up_to_bound);
}

TEST_CASE("free modules over group algebras are flat without a degree scan") {
  MonoidPresentation z(1, {vz({1}), vz({-1})});
  TorVerdict v = is_tflat(CombinatorialModule::free_ring(z), MonoidIdeal::empty(z), 10);
  CHECK(v.flat_up_to_bound);
  CHECK(v.primes_checked == 1);  // a group has only the empty prime
}

TEST_CASE("obstruction ideal of the coordinate cross") {
  // the module is the ring modulo (1,1); a quotient is weakly flat exactly
  // when the ideal absorbs that relation
  MonoidPresentation n2 = nat2();
  CombinatorialModule e(n2, FractionalIdeal(n2, {vz({0, 0})}),
                        FractionalIdeal(n2, {vz({1, 1})}), MonoidIdeal::empty(n2));
  ObstructionResult r = obstruction_ideal(e, 2);
  CHECK(r.ideal.generators() == std::vector<VecZ>{vz({1, 1})});
}

TEST_CASE("witnesses at negative weight are found") {
  // a shifted copy of (N)/(15+N): the only witness sits at degree -5, which
  // requires scanning monoid elements beyond the weight bound itself
  MonoidPresentation p = nat();
  CombinatorialModule e(p, FractionalIdeal(p, {vz({-20})}), FractionalIdeal(p, {vz({-5})}),
                        MonoidIdeal::empty(p));
  TorVerdict v = is_weakly_tflat(e, MonoidIdeal::empty(p), 12);
  REQUIRE(!v.flat_up_to_bound);
  CHECK(v.witness_degree == vz({-5}));
  CHECK(oracle::tor1_rank(maximal_ideal(p), MonoidIdeal::empty(p), e, vz({-5})) == 1);
}

TEST_CASE("parallel scan returns the same witness") {
  CombinatorialModule e = normalization_summand();
  TorVerdict v1 = is_tflat(e, MonoidIdeal::empty(n23()), 12, 1);
  TorVerdict v4 = is_tflat(e, MonoidIdeal::empty(n23()), 12, 4);
  CHECK(v1.flat_up_to_bound == v4.flat_up_to_bound);
  CHECK(v1.witness_degree == v4.witness_degree);
  CHECK(v1.witness_prime.same_ideal(v4.witness_prime));
}

TEST_CASE("degreewise homology agrees with the direct tensor oracle") {
  struct CaseDef {
    MonoidPresentation p;
    CombinatorialModule e;
  };
  std::vector<CaseDef> cases;
  cases.push_back({nat(), CombinatorialModule(nat(), FractionalIdeal(nat(), {vz({0})}),
                                              FractionalIdeal(nat(), {vz({2})}),
                                              MonoidIdeal::empty(nat()))});
  cases.push_back({n23(), normalization_summand()});
  cases.push_back({nat2(), CombinatorialModule(nat2(), FractionalIdeal(nat2(), {vz({0, 0})}),
                                               FractionalIdeal(nat2(), {vz({1, 1})}),
                                               MonoidIdeal::empty(nat2()))});
  for (auto& c : cases) {
    for (const auto& j : prime_ideals(c.p)) {
      auto pres = present_ideal(j, MonoidIdeal::empty(c.p));
      if (c.p.ambient_rank() == 1) {
        for (long g = -3; g <= 10; ++g) {
          CAPTURE(g);
          CHECK(tor1_piece(pres, c.e, vz({g})) ==
                oracle::tor1_rank(j, MonoidIdeal::empty(c.p), c.e, vz({g})));
        }
      } else {
        for (long x = -2; x <= 6; ++x)
          for (long y = -2; y <= 6; ++y) {
            CAPTURE(x);
            CAPTURE(y);
            CHECK(tor1_piece(pres, c.e, vz({x, y})) ==
                  oracle::tor1_rank(j, MonoidIdeal::empty(c.p), c.e, vz({x, y})));
          }
      }
    }
  }
}

TEST_CASE("a non-prime witness always lifts to a prime witness") {
  // over <2,3>: J = 2 P+ is not prime; the normalization summand has a
  // witness against it, and also against the prime above it
  MonoidPresentation p = n23();
  CombinatorialModule e = normalization_summand();
  MonoidIdeal twop = power_sumset(2, maximal_ideal(p));
  REQUIRE(!is_prime(twop));
  auto pres = present_ideal(twop, MonoidIdeal::empty(p));
  bool nonprime_witness = false;
  for (long g = 0; g <= 12 && !nonprime_witness; ++g)
    if (tor1_piece(pres, e, vz({g})) > 0) nonprime_witness = true;
  REQUIRE(nonprime_witness);
  bool prime_witness = false;
  for (const auto& prime : prime_ideals(p)) {
    if (!twop.subset_of(prime)) continue;
    auto pp = present_ideal(prime, MonoidIdeal::empty(p));
    for (long g = 0; g <= 12; ++g)
      if (tor1_piece(pp, e, vz({g})) > 0) prime_witness = true;
  }
  CHECK(prime_witness);
}

TEST_CASE("t-flat and weakly t-flat verdicts agree on the desk suite") {
  struct CaseDef {
    CombinatorialModule e;
    MonoidIdeal k;
  };
  std::vector<CaseDef> cases;
  cases.push_back({normalization_summand(), MonoidIdeal::empty(n23())});
  cases.push_back({CombinatorialModule::free_ring(n23()), MonoidIdeal::empty(n23())});
  cases.push_back({CombinatorialModule::free_ring(nat2()), MonoidIdeal::empty(nat2())});
  cases.push_back({CombinatorialModule(nat(), FractionalIdeal(nat(), {vz({0})}),
                                       FractionalIdeal(nat(), {vz({2})}), MonoidIdeal::empty(nat())),
                   MonoidIdeal::empty(nat())});
  for (auto& c : cases) {
    TorVerdict strong = is_tflat(c.e, c.k, 12);
    TorVerdict weak = is_weakly_tflat(c.e, c.k, 12);
    CHECK(strong.flat_up_to_bound == weak.flat_up_to_bound);
  }
}

TEST_CASE("base change of a free module along a split inclusion stays flat") {
  // N inside N^2 on the first axis; the base change of Z[N] is Z[N^2]
  CombinatorialModule e = CombinatorialModule::free_ring(nat2());
  TorVerdict v = is_tflat(e, MonoidIdeal::empty(nat2()), 10);
  CHECK(v.flat_up_to_bound);
}

TEST_CASE("pushforward consistency through restriction of scalars") {
  // Z[N] is flat over itself, but its restriction along <2,3> is not t-flat
  CombinatorialModule free_big = CombinatorialModule::free_ring(nat());
  TorVerdict over_q = is_tflat(free_big, MonoidIdeal::empty(nat()), 12);
  CHECK(over_q.flat_up_to_bound);
  auto summands = restrict_scalars(free_big, n23(), IntMatrix::identity(1), 12);
  REQUIRE(summands.size() == 1);
  TorVerdict over_p = is_tflat(summands[0].summand, MonoidIdeal::empty(n23()), 12);
  CHECK(!over_p.flat_up_to_bound);
}

TEST_CASE("gr multiplication rule") {
  CHECK(gr_structure_check(MonoidIdeal::empty(nat()), 100).ok);
  {
    auto r = gr_structure_check(MonoidIdeal(nat(), {vz({2})}), 100);
    CHECK(r.ok);
    CHECK(r.pairs_checked == 100);
  }
  CHECK(gr_structure_check(maximal_ideal(n23()), 100).ok);
  CHECK(gr_structure_check(maximal_ideal(nat2()), 100).ok);
  CHECK(gr_structure_check(maximal_ideal(flagm()), 100).ok);
}

TEST_CASE("obstruction ideal examples") {
  {
    // direct weak checks, the stated oracle for the expected value (3)
    CombinatorialModule e(nat(), FractionalIdeal(nat(), {vz({0})}),
                          FractionalIdeal(nat(), {vz({3})}), MonoidIdeal::empty(nat()));
    for (long n = 1; n <= 4; ++n) {
      MonoidIdeal j(nat(), {vz({n})});
      CombinatorialModule ej = quotient_by_ideal(e, j);
      TorVerdict v = is_weakly_tflat(ej, j, 10);
      CHECK(v.flat_up_to_bound == (n <= 3));
    }
    ObstructionResult r = obstruction_ideal(e, 6);
    CHECK(r.ideal.generators() == std::vector<VecZ>{vz({3})});
    CHECK(r.upward_closure_checked);
  }
  {
    ObstructionResult r = obstruction_ideal(CombinatorialModule::free_ring(nat()), 5);
    CHECK(r.ideal.is_empty());
  }
  {
    CombinatorialModule z(nat(), FractionalIdeal(nat(), {vz({1})}),
                          FractionalIdeal(nat(), {vz({1})}), MonoidIdeal::empty(nat()));
    CHECK(obstruction_ideal(z, 5).ideal.is_empty());
  }
}

TEST_CASE("log regularity reports") {
  {
    LogRegularityReport r = log_regularity_report(n23());
    CHECK(r.dimension == 1);
    CHECK(!r.saturated);
    CHECK(r.log_regular);
    REQUIRE(r.prime_heights.size() == 2);
    CHECK(r.prime_heights[0].localized_dimension == 1);  // maximal ideal
    CHECK(r.prime_heights[1].localized_dimension == 0);  // empty prime
  }
  {
    MonoidPresentation big(2, {vz({4, 0}), vz({3, 1}), vz({1, 3}), vz({0, 4})});
    LogRegularityReport r = log_regularity_report(big);
    CHECK(r.dimension == 2);
    CHECK(!r.saturated);
    CHECK(r.log_regular);
  }
  {
    LogRegularityReport r = log_regularity_report(nat2());
    CHECK(r.dimension == 2);
    CHECK(r.saturated);
  }
  CHECK_THROWS_AS(log_regularity_report(MonoidPresentation(1, {vz({1}), vz({-1})})), NotSharpError);
}

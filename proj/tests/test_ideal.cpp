#include <doctest.h>

#include "oracles.hpp"
#include "torlog/ideal.hpp"

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
MonoidPresentation big4() {
  return MonoidPresentation(2, {vz({4, 0}), vz({3, 1}), vz({1, 3}), vz({0, 4})});
}

}  // namespace

TEST_CASE("ideal membership") {
  MonoidIdeal k(n23(), {vz({2}), vz({3})});
  CHECK(k.contains(vz({7})));
  CHECK(!k.contains(vz({1})));
  CHECK(!k.contains(vz({0})));
  MonoidIdeal e = MonoidIdeal::empty(n23());
  CHECK(!e.contains(vz({5})));
}

TEST_CASE("generator validation") {
  CHECK_THROWS_AS(MonoidIdeal(n23(), {vz({1})}), ValidationError);
  CHECK_THROWS_AS(FractionalIdeal(MonoidPresentation(2, {vz({0, 2}), vz({2, 0})}), {vz({1, 1})}),
                  ValidationError);
}

TEST_CASE("generator reduction") {
  // over N the ideal {2,3,...} is generated by 2 alone
  MonoidIdeal k(nat(), {vz({2}), vz({3})});
  CHECK(k.generators() == std::vector<VecZ>{vz({2})});
  // reduction is idempotent
  auto once = reduce_generators(n23(), {vz({4}), vz({2}), vz({9}), vz({2})});
  CHECK(reduce_generators(n23(), once) == once);
  CHECK(once == std::vector<VecZ>{vz({2})});
  // unit translates collapse to one representative
  MonoidPresentation zx(2, {vz({0, 1}), vz({0, -1}), vz({1, 0})});
  auto red = reduce_generators(zx, {vz({1, 2}), vz({1, -1})});
  CHECK(red.size() == 1);
}

TEST_CASE("primality") {
  MonoidIdeal two_up(nat(), {vz({2}), vz({3})});
  CHECK(!is_prime(two_up));
  MonoidIdeal e1(nat2(), {vz({1, 0})});
  CHECK(is_prime(e1));
  CHECK(is_prime(MonoidIdeal::empty(nat2())));
}

TEST_CASE("prime spectrum") {
  {
    auto pr = prime_ideals(nat2());
    REQUIRE(pr.size() == 4);
    // complements of the four faces; the unit face gives the maximal ideal
    CHECK(pr[0].generators().size() == 2);
    CHECK(pr[3].is_empty());
  }
  {
    auto pr = prime_ideals(n23());
    REQUIRE(pr.size() == 2);
    CHECK(pr[0].generators() == std::vector<VecZ>{vz({2}), vz({3})});
    CHECK(pr[1].is_empty());
  }
  {
    auto pr = prime_ideals(MonoidPresentation(1, {vz({0})}));
    REQUIRE(pr.size() == 1);
    CHECK(pr[0].is_empty());
  }
  // prime count equals face count on the fixtures
  for (const auto& p : {nat2(), flagm(), n23(), big4()})
    CHECK(prime_ideals(p).size() == p.faces().size());
}

TEST_CASE("prime ideals satisfy the defining property on a box") {
  for (const auto& p : {nat2(), n23(), flagm()}) {
    auto elems = p.elements_up_to_weight(8);
    for (const auto& k : prime_ideals(p)) {
      for (const auto& x : elems)
        for (const auto& y : elems)
          if (k.contains(vec_add(x, y))) CHECK((k.contains(x) || k.contains(y)));
    }
  }
}

TEST_CASE("union, sumset and powers") {
  MonoidIdeal mx = maximal_ideal(nat());
  CHECK(mx.generators() == std::vector<VecZ>{vz({1})});
  MonoidIdeal sq = power_sumset(2, mx);
  CHECK(sq.generators() == std::vector<VecZ>{vz({2})});
  CHECK(ideal_union(MonoidIdeal::empty(nat()), sq).same_ideal(sq));
  MonoidIdeal e1(nat2(), {vz({1, 0})});
  MonoidIdeal e2(nat2(), {vz({0, 1})});
  CHECK(ideal_union(e1, e2).same_ideal(maximal_ideal(nat2())));
  // 2 P+ over <2,3>: pairwise sums 4,5,6 reduce to {4,5} since 6 = 4 + 2
  MonoidIdeal p2 = power_sumset(2, maximal_ideal(n23()));
  CHECK(p2.generators() == std::vector<VecZ>{vz({4}), vz({5})});
  MonoidIdeal whole = power_sumset(0, maximal_ideal(nat()));
  CHECK(whole.contains(vz({0})));
}

TEST_CASE("intersect_shifts on the stated examples") {
  CHECK(intersect_shifts(vz({2}), vz({3}), n23()) == std::vector<VecZ>{vz({5}), vz({6})});
  CHECK(intersect_shifts(vz({1, 0}), vz({0, 1}), nat2()) == std::vector<VecZ>{vz({1, 1})});
  CHECK(intersect_shifts(vz({5}), vz({5}), n23()) == std::vector<VecZ>{vz({5})});
}

TEST_CASE("intersect_shifts output is minimal and generates (box check)") {
  struct CaseDef {
    MonoidPresentation p;
    VecZ a, b;
  };
  std::vector<CaseDef> cases{
      {n23(), vz({2}), vz({3})},     {n23(), vz({0}), vz({1})},
      {nat2(), vz({2, 0}), vz({0, 3})}, {flagm(), vz({0, 2}), vz({1, 0})},
      {flagm(), vz({0, 0}), vz({2, -2})}, {big4(), vz({4, 0}), vz({3, 1})},
      {big4(), vz({0, 0}), vz({2, 2})},
  };
  for (auto& c : cases) {
    auto mins = intersect_shifts(c.a, c.b, c.p);
    for (const auto& m : mins) {
      CHECK(c.p.contains(vec_sub(m, c.a)));
      CHECK(c.p.contains(vec_sub(m, c.b)));
      for (const auto& m2 : mins)
        if (!(m == m2)) CHECK(!c.p.contains(vec_sub(m, m2)));
    }
    // every element of the intersection in a box is covered by some minimal
    for (const auto& x : oracle::shift_intersection_box(c.p, c.a, c.b, 14)) {
      bool covered = false;
      for (const auto& m : mins)
        if (c.p.contains(vec_sub(x, m))) covered = true;
      CHECK(covered);
    }
  }
}

TEST_CASE("contraction") {
  MonoidIdeal qplus = maximal_ideal(nat());
  MonoidIdeal kp = contract(qplus, n23(), IntMatrix::identity(1));
  CHECK(kp.generators() == std::vector<VecZ>{vz({2}), vz({3})});

  CHECK(contract(MonoidIdeal::empty(nat()), n23(), IntMatrix::identity(1)).is_empty());

  MonoidIdeal self(n23(), {vz({2})});
  CHECK(contract(self, n23(), IntMatrix::identity(1)).same_ideal(self));

  // non-prime contraction through the bounded path: (2) of N pulled to <2,3>
  MonoidIdeal two(nat(), {vz({2})});
  MonoidIdeal kt = contract(two, n23(), IntMatrix::identity(1));
  // {p in <2,3> : p >= 2} has minimal elements 2 and 3
  CHECK(kt.generators() == std::vector<VecZ>{vz({2}), vz({3})});

  // a map that does not respect the monoids is rejected
  CHECK_THROWS_AS(contract(qplus, MonoidPresentation(1, {vz({-1})}), IntMatrix::identity(1)),
                  ValidationError);
}

TEST_CASE("fractional ideals shift into the monoid") {
  FractionalIdeal a(n23(), {vz({-1}), vz({4})});
  VecZ s = a.denominator_shift();
  for (const auto& g : a.generators()) CHECK(n23().contains(vec_add(s, g)));
}

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "torlog/lattice.hpp"

using namespace torlog;

namespace {

VecZ vz(std::initializer_list<long> xs) {
  VecZ v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

void check_snf_contract(const IntMatrix& m) {
  SmithForm f = smith_normal_form(m);
  CHECK(f.u.mul(m).mul(f.v) == f.s);
  CHECK(f.u.mul(f.u_inv) == IntMatrix::identity(m.rows()));
  CHECK(f.v.mul(f.v_inv) == IntMatrix::identity(m.cols()));
  CHECK(abs(det(f.u)) == 1);
  CHECK(abs(det(f.v)) == 1);
  for (size_t i = 0; i + 1 < f.diag.size(); ++i) {
    CHECK(f.diag[i] > 0);
    CHECK(f.diag[i + 1] % f.diag[i] == 0);
  }
  // off-diagonal zero
  for (size_t i = 0; i < f.s.rows(); ++i)
    for (size_t j = 0; j < f.s.cols(); ++j)
      if (i != j) CHECK(f.s.at(i, j) == 0);
}

}  // namespace

TEST_CASE("smith normal form on the stated examples") {
  {
    IntMatrix m{{2, 0}, {0, 2}};
    SmithForm f = smith_normal_form(m);
    CHECK(f.diag == std::vector<Int>{2, 2});
    CHECK(f.u == IntMatrix::identity(2));
    CHECK(f.v == IntMatrix::identity(2));
  }
  {
    IntMatrix m{{0, 2}};
    SmithForm f = smith_normal_form(m);
    CHECK(f.s == IntMatrix{{2, 0}});
    check_snf_contract(m);
  }
  {
    // frozen from the minor-gcd oracle: gcd of 1x1 minors is 1, gcd of 2x2
    // minors is 4, so the diagonal is (1, 4)
    IntMatrix m{{4, 3, 1, 0}, {0, 1, 3, 4}};
    auto diag = oracle::minor_gcd_diagonal(m);
    CHECK(diag == std::vector<Int>{1, 4});
    SmithForm f = smith_normal_form(m);
    CHECK(f.diag == diag);
    check_snf_contract(m);
  }
}

TEST_CASE("smith normal form properties on random matrices") {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<long> entry(-5, 5);
  std::uniform_int_distribution<size_t> dim(1, 4);
  for (int iter = 0; iter < 60; ++iter) {
    IntMatrix m(dim(rng), dim(rng));
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
    check_snf_contract(m);
    SmithForm f = smith_normal_form(m);
    CHECK(f.diag == oracle::minor_gcd_diagonal(m));
  }
}

TEST_CASE("kernel basis") {
  {
    IntMatrix k = kernel_basis(IntMatrix::identity(2));
    CHECK(k.cols() == 0);
  }
  {
    IntMatrix k = kernel_basis(IntMatrix{{1, 1}});
    REQUIRE(k.cols() == 1);
    CHECK(k.col(0) == vz({1, -1}));
  }
  {
    // Mx = 0 with primitive solution, frozen after checking 2*3 - 3*2 = 0
    IntMatrix m{{2, 3}};
    IntMatrix k = kernel_basis(m);
    REQUIRE(k.cols() == 1);
    CHECK(k.col(0) == vz({3, -2}));
    CHECK(m.mul(k) == IntMatrix(1, 1));
  }
}

TEST_CASE("kernel lattice is saturated") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> entry(-5, 5);
  for (int iter = 0; iter < 40; ++iter) {
    IntMatrix m(2, 4);
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
    IntMatrix k = kernel_basis(m);
    // m * k = 0
    IntMatrix z = m.mul(k);
    for (size_t i = 0; i < z.rows(); ++i)
      for (size_t j = 0; j < z.cols(); ++j) CHECK(z.at(i, j) == 0);
    if (k.cols() > 0) {
      SmithForm f = smith_normal_form(k);
      CHECK(f.rank == k.cols());
      for (const Int& d : f.diag) CHECK(d == 1);
    }
  }
}

TEST_CASE("quotient presentations") {
  {
    auto q = quotient_presentation(2, {vz({0, 2})});
    CHECK(q.group.free_rank == 1);
    CHECK(q.group.torsion_orders == std::vector<Int>{2});
    CHECK(q.projection.project(vz({0, 2})).is_zero());
  }
  {
    auto q = quotient_presentation(2, {});
    CHECK(q.group.free_rank == 2);
    CHECK(q.group.torsion_orders.empty());
  }
  {
    auto q = quotient_presentation(1, {vz({3})});
    CHECK(q.group.free_rank == 0);
    CHECK(q.group.torsion_orders == std::vector<Int>{3});
    CHECK(q.projection.project(vz({3})).is_zero());
    CHECK(!q.projection.project(vz({1})).is_zero());
    CHECK(!q.projection.project(vz({2})).is_zero());
  }
}

TEST_CASE("quotient projection kills exactly the subgroup") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> entry(-4, 4);
  for (int iter = 0; iter < 30; ++iter) {
    std::vector<VecZ> gens;
    size_t n = 3;
    for (int i = 0; i < 2; ++i) {
      VecZ v(n);
      for (auto& x : v) x = entry(rng);
      gens.push_back(v);
    }
    auto q = quotient_presentation(n, gens);
    for (const auto& g : gens) CHECK(q.projection.project(g).is_zero());
    // additivity
    VecZ a(n), b(n);
    for (auto& x : a) x = entry(rng);
    for (auto& x : b) x = entry(rng);
    CHECK(q.projection.add(q.projection.project(a), q.projection.project(b)) ==
          q.projection.project(vec_add(a, b)));
  }
}

TEST_CASE("splitting sections") {
  {
    auto s = splitting_section({vz({1, 0})}, 2);
    REQUIRE(s.has_value());
    CHECK(s->sigma == IntMatrix{{1, 0}});
    CHECK(s->basis.col(0) == vz({1, 0}));
  }
  {
    auto s = splitting_section({vz({0, 2})}, 2);
    CHECK(!s.has_value());
  }
  {
    auto s = splitting_section({vz({1, 1})}, 2);
    REQUIRE(s.has_value());
    // sigma(x, y) = x is one valid deterministic choice
    CHECK(s->sigma == IntMatrix{{1, 0}});
    CHECK(s->basis.mul(s->sigma).apply(vz({1, 1})) == vz({1, 1}));
  }
  {
    // trivial subgroup splits with empty matrices
    auto s = splitting_section({}, 3);
    REQUIRE(s.has_value());
    CHECK(s->sigma.rows() == 0);
    CHECK(s->basis.cols() == 0);
  }
}

TEST_CASE("splitting restricted to the subgroup is the identity") {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<long> entry(-3, 3);
  int found = 0;
  for (int iter = 0; iter < 60 && found < 20; ++iter) {
    std::vector<VecZ> gens;
    for (int i = 0; i < 2; ++i) {
      VecZ v(3);
      for (auto& x : v) x = entry(rng);
      gens.push_back(v);
    }
    auto s = splitting_section(gens, 3);
    if (!s) continue;
    ++found;
    for (const auto& g : gens) CHECK(s->basis.apply(s->sigma.apply(g)) == g);
  }
  CHECK(found > 0);
}

TEST_CASE("lattice basis canonical form") {
  auto b = lattice_basis(2, {vz({0, 2}), vz({0, -2})});
  REQUIRE(b.size() == 1);
  CHECK(b[0] == vz({0, 2}));
  auto b2 = lattice_basis(2, {vz({2, 0}), vz({3, 0})});
  REQUIRE(b2.size() == 1);
  CHECK(b2[0] == vz({1, 0}));
}

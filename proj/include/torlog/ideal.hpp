#pragma once

#include "torlog/monoid.hpp"

namespace torlog {

// Ideal of a monoid: union of shifted copies g + P.  Generators are kept
// reduced (no generator lies in another's shifted copy) and sorted.
class MonoidIdeal {
public:
  MonoidIdeal() = default;
  MonoidIdeal(const MonoidPresentation& parent, const std::vector<VecZ>& gens);

  static MonoidIdeal empty(const MonoidPresentation& parent) { return MonoidIdeal(parent, {}); }

  const MonoidPresentation& parent() const { return parent_; }
  const std::vector<VecZ>& generators() const { return gens_; }
  bool is_empty() const { return gens_.empty(); }

  bool contains(const VecZ& v) const;
  bool subset_of(const MonoidIdeal& other) const;
  bool same_ideal(const MonoidIdeal& other) const;

private:
  MonoidPresentation parent_;
  std::vector<VecZ> gens_;
};

// Finitely generated P-stable subset of the gp group that shifts into P.
class FractionalIdeal {
public:
  FractionalIdeal() = default;
  FractionalIdeal(const MonoidPresentation& parent, const std::vector<VecZ>& gens);

  const MonoidPresentation& parent() const { return parent_; }
  const std::vector<VecZ>& generators() const { return gens_; }
  bool is_empty() const { return gens_.empty(); }

  bool contains(const VecZ& v) const;
  bool subset_of(const FractionalIdeal& other) const;
  bool same_set(const FractionalIdeal& other) const;
  // a shift p with p + A contained in P
  VecZ denominator_shift() const;

private:
  MonoidPresentation parent_;
  std::vector<VecZ> gens_;
};

bool is_prime(const MonoidIdeal& k);
std::vector<MonoidIdeal> prime_ideals(const MonoidPresentation& p);
// the prime complement of a face
MonoidIdeal face_complement_ideal(const Face& f);
// the maximal ideal, complement of the unit face
MonoidIdeal maximal_ideal(const MonoidPresentation& p);

MonoidIdeal ideal_union(const MonoidIdeal& k, const MonoidIdeal& j);
MonoidIdeal ideal_sumset(const MonoidIdeal& k, const MonoidIdeal& j);
MonoidIdeal power_sumset(size_t n, const MonoidIdeal& k);
// set intersection of two ideals of the same monoid
MonoidIdeal ideal_intersection(const MonoidIdeal& k, const MonoidIdeal& j);

// Reduced generators of (a+P) intersect (b+P); exact for saturated parents
// and for monoids of dimension at most one, bounded search with a stability
// check otherwise.
std::vector<VecZ> intersect_shifts(const VecZ& a, const VecZ& b, const MonoidPresentation& p);

// minimal generators of the P-set {p in P : p - delta in P}
std::vector<VecZ> shift_intersection_generators(const MonoidPresentation& p, const VecZ& delta);

// minimal generators of the P-set {p in P : inclusion(p) - delta in Q}
std::vector<VecZ> cross_shift_generators(const MonoidPresentation& p, const IntMatrix& inclusion,
                                         const MonoidPresentation& q, const VecZ& delta);

// K intersect P along an inclusion P -> Q given on ambient coordinates
MonoidIdeal contract(const MonoidIdeal& k, const MonoidPresentation& p, const IntMatrix& inclusion);

// reduction helper shared with the module layer: drops generators dominated
// by others (unit-equivalent duplicates keep the lex-smallest)
std::vector<VecZ> reduce_generators(const MonoidPresentation& p, std::vector<VecZ> gens);

}  // namespace torlog

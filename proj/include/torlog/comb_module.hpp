#pragma once

#include "torlog/ideal.hpp"

namespace torlog {

// Quotient (A)/(B) of monomial submodules of the gp group algebra, with an
// optional annihilating ideal K (then A + K must land in B).
class CombinatorialModule {
public:
  CombinatorialModule() = default;
  CombinatorialModule(const MonoidPresentation& parent, const FractionalIdeal& numerator,
                      const FractionalIdeal& denominator, const MonoidIdeal& relative_to);

  static CombinatorialModule ring_modulo(const MonoidPresentation& p, const MonoidIdeal& k);
  // the monoid ring itself, (P)/(empty)
  static CombinatorialModule free_ring(const MonoidPresentation& p);

  const MonoidPresentation& parent() const { return parent_; }
  const FractionalIdeal& numerator() const { return num_; }
  const FractionalIdeal& denominator() const { return den_; }
  const MonoidIdeal& relative_to() const { return rel_; }

  // rank of the graded piece at g: 1 when g lies in A but not in B
  int graded_piece(const VecZ& g) const;
  bool is_zero_module() const;  // A contained in B

private:
  MonoidPresentation parent_;
  FractionalIdeal num_, den_;
  MonoidIdeal rel_;
};

// annihilator of the class of g: {p in P : g + p in B} union K
MonoidIdeal element_annihilator(const CombinatorialModule& e, const VecZ& g);

struct PrimeFiltrationStep {
  MonoidIdeal prime;
  VecZ witness_degree;
};

struct PrimeFiltration {
  CombinatorialModule module;
  std::vector<PrimeFiltrationStep> steps;
};

// Constructive prime filtration: repeatedly bump a minimal generator until
// its annihilator is prime, record it, enlarge the denominator, repeat.
PrimeFiltration prime_filtration(const CombinatorialModule& e);

// replays the recorded steps; true when every annihilator matches the
// recorded prime and the module is exhausted
bool replay_filtration(const PrimeFiltration& f);

// quotient E/(J)E as a combinatorial module relative to K union J
CombinatorialModule quotient_by_ideal(const CombinatorialModule& e, const MonoidIdeal& j);

struct RestrictedSummand {
  VecZ coset;  // representative in the ambient of the larger monoid
  CombinatorialModule summand;
};

// Restriction of scalars along an inclusion P -> Q: decomposes a
// combinatorial Z[Q]/(K)-module into combinatorial Z[P]/(K')-modules indexed
// by gp cosets.  Throws BoundExceededError when the coset count cannot be
// certified finite.
std::vector<RestrictedSummand> restrict_scalars(const CombinatorialModule& e,
                                                const MonoidPresentation& p,
                                                const IntMatrix& inclusion, const Int& coset_box);

}  // namespace torlog

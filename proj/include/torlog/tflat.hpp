#pragma once

#include "torlog/comb_module.hpp"

namespace torlog {

// Presentation of (J)/(K) by monomial generators, pairwise binomial syzygies
// and K-annihilation relations.
struct MonomialPresentation {
  MonoidIdeal ideal;        // J
  MonoidIdeal relative_to;  // K, contained in J

  std::vector<VecZ> free_gens;  // reduced generators of J

  struct Syzygy {
    VecZ degree;  // minimal element of (j_i + P) meet (j_l + P)
    size_t i, l;
  };
  struct Annihilation {
    VecZ shift;  // j_i + shift lies in K
    size_t i;
  };
  std::vector<Syzygy> syzygies;
  std::vector<Annihilation> annihilations;
};

MonomialPresentation present_ideal(const MonoidIdeal& j, const MonoidIdeal& k);

// rank of Tor_1 over Z[P]/(K) of (Z[P]/(J), E) in degree g, computed as the
// homology of the three term complex (F1 x E)_g -> (F0 x E)_g -> E_g
int tor1_piece(const MonomialPresentation& pres, const CombinatorialModule& e, const VecZ& g);

struct TorVerdict {
  bool flat_up_to_bound = true;
  Int bound{0};
  size_t primes_checked = 0;
  // failure witness, meaningful when flat_up_to_bound is false
  MonoidIdeal witness_prime;
  VecZ witness_degree;
  int kernel_rank = 0;
};

TorVerdict is_tflat(const CombinatorialModule& e, const MonoidIdeal& k, const Int& bound,
                    int jobs = 1);
TorVerdict is_weakly_tflat(const CombinatorialModule& e, const MonoidIdeal& k, const Int& bound);

struct GrCheckResult {
  bool ok = true;
  size_t pairs_checked = 0;
  std::string detail;
};

// checks the associated graded multiplication rule t^p t^q = t^{p+q} away
// from K (and zero inside K) on deterministically sampled pairs
GrCheckResult gr_structure_check(const MonoidIdeal& k, size_t sample_pairs);

struct ObstructionResult {
  MonoidIdeal ideal;
  Int bound{0};
  size_t weakly_flat_count = 0;
  bool upward_closure_checked = true;
};

// intersection of all ideals J generated in weight <= bound such that
// E/(J)E is weakly t-flat relative to J
ObstructionResult obstruction_ideal(const CombinatorialModule& e, const Int& bound);

struct PrimeHeight {
  MonoidIdeal prime;
  size_t localized_dimension;  // dimension of the localization at the prime
};

struct LogRegularityReport {
  size_t dimension = 0;
  size_t gp_rank = 0;
  bool saturated = false;
  AbelianGroupPresentation sharp_quotient_group;
  std::vector<PrimeHeight> prime_heights;
  bool log_regular = true;
  std::string justification;
};

LogRegularityReport log_regularity_report(const MonoidPresentation& p);

}  // namespace torlog

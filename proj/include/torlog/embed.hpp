#pragma once

#include "torlog/ideal.hpp"

namespace torlog {

// Integer-valued linear functional on the gp group, stored with a common
// denominator so it can act on ambient coordinates.
struct LinearFunctional {
  VecZ coeffs;
  Int denom{1};
  Int operator()(const VecZ& v) const;  // exact; throws when not integral
};

// Monoid inclusion into N^d carrying the standard flag to a chosen flag.
// The map is v -> (matrix * v) / denom, integral on the gp group.
struct FlagEmbedding {
  MonoidPresentation source;
  Flag flag;
  IntMatrix matrix;  // d x ambient
  Int denom{1};

  size_t target_dim() const { return matrix.rows(); }
  VecZ apply(const VecZ& v) const;
};

struct EmbeddingCertificate {
  bool ok = true;
  std::string violated_clause;  // empty when ok
  std::string detail;
};

// Support functional of a facet: nonnegative on the monoid, zero exactly on
// the facet, primitive on the gp group.
LinearFunctional facet_valuation(const MonoidPresentation& p, const Face& facet);

FlagEmbedding flag_embedding(const MonoidPresentation& p, const Flag& flag);

EmbeddingCertificate verify_embedding(const FlagEmbedding& e, const Int& box_bound);

}  // namespace torlog

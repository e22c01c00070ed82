#pragma once

#include <optional>

#include "torlog/matrix.hpp"

namespace torlog {

// U * M * V = S with S diagonal, diagonal entries nonnegative and each dividing
// the next; U and V unimodular.  u_inv and v_inv carry the inverse transforms.
struct SmithForm {
  IntMatrix s, u, v, u_inv, v_inv;
  size_t rank = 0;
  std::vector<Int> diag;  // nonzero diagonal entries, divisibility chain
};

SmithForm smith_normal_form(const IntMatrix& m);

// Columns form a basis of the integer kernel {x : Mx = 0}.  The spanned
// lattice is saturated; columns are sign-normalized.
IntMatrix kernel_basis(const IntMatrix& m);

// Column Hermite basis of the lattice spanned by the given vectors.
// Deterministic canonical basis, pivots positive.
std::vector<VecZ> lattice_basis(size_t dim, const std::vector<VecZ>& gens);

// Z^free_rank + sum of Z/torsion_orders[i], orders >= 2 in divisibility order.
struct AbelianGroupPresentation {
  size_t free_rank = 0;
  std::vector<Int> torsion_orders;
  bool operator==(const AbelianGroupPresentation& o) const {
    return free_rank == o.free_rank && torsion_orders == o.torsion_orders;
  }
};

// Image of an arbitrary ambient vector in the quotient group.
struct QuotientElement {
  VecZ free;
  VecZ torsion;  // torsion[i] reduced mod order[i]
  bool operator==(const QuotientElement& o) const { return free == o.free && torsion == o.torsion; }
  bool operator<(const QuotientElement& o) const {
    if (free != o.free) return free < o.free;
    return torsion < o.torsion;
  }
  bool is_zero() const { return torlog::is_zero(free) && torlog::is_zero(torsion); }
};

// Explicit projection Z^n -> Z^free + sum Z/d_i, kernel = the given subgroup.
struct QuotientProjection {
  IntMatrix u;                   // SNF row transform of the subgroup matrix
  std::vector<Int> diag;         // s_0..s_{r-1}
  std::vector<size_t> torsion_rows;  // rows of u with s_i >= 2
  std::vector<size_t> free_rows;     // rows of u beyond the rank
  std::vector<Int> torsion_orders;

  QuotientElement project(const VecZ& v) const;
  QuotientElement add(const QuotientElement& a, const QuotientElement& b) const;
  QuotientElement scale(const Int& c, const QuotientElement& a) const;
};

struct QuotientPresentation {
  AbelianGroupPresentation group;
  QuotientProjection projection;
};

QuotientPresentation quotient_presentation(size_t ambient_rank, const std::vector<VecZ>& subgroup_gens);

// Retraction of Z^ambient onto the subgroup, when the subgroup is a direct
// summand.  basis columns span the subgroup; sigma * basis = identity.
struct SplittingSection {
  IntMatrix basis;  // ambient x r
  IntMatrix sigma;  // r x ambient
};

std::optional<SplittingSection> splitting_section(const std::vector<VecZ>& subgroup_gens,
                                                  size_t ambient_rank);

// Solves B c = v for B with independent columns; nullopt when v is outside
// the column lattice.
std::optional<VecZ> solve_in_lattice(const IntMatrix& basis, const VecZ& v);

}  // namespace torlog

#pragma once

#include "torlog/lattice.hpp"

namespace torlog {

struct Constraint {
  VecZ normal;
  bool equality = false;
};

struct DDResult {
  std::vector<VecZ> rays;      // extreme rays modulo lineality, primitive
  std::vector<VecZ> lineality;  // spanning set of the lineality space
};

// Extreme rays and lineality of {x : n.x >= 0 (or = 0)} by double description.
DDResult dd_intersect(size_t dim, const std::vector<Constraint>& constraints);

// Rational polyhedral cone spanned by integer generators.
class Cone {
public:
  Cone(size_t dim, const std::vector<VecZ>& generators);

  size_t ambient_dim() const { return dim_; }
  // extreme rays of the dual cone; valid inequalities cutting out the cone
  // inside its span; sorted, primitive
  const std::vector<VecZ>& facet_normals() const { return facet_normals_; }
  // equations vanishing on the span of the cone
  const std::vector<VecZ>& span_equations() const { return span_equations_; }
  // primitive representatives of the extreme rays modulo lineality
  const std::vector<VecZ>& extreme_rays() const { return extreme_rays_; }
  // lattice basis of lineality space intersected with Z^dim (saturated)
  const std::vector<VecZ>& lineality_lattice() const { return lineality_lattice_; }

  bool contains(const VecZ& v) const;
  bool in_lineality(const VecZ& v) const;
  bool pointed() const { return lineality_lattice_.empty(); }
  size_t dim() const;  // dimension of the cone as a polyhedron

  // all faces, each given as the set of generator indices lying on it,
  // sorted by (size, lex); the last entry is the whole cone
  std::vector<std::vector<size_t>> face_generator_sets(const std::vector<VecZ>& gens) const;

  // indices of facet normals vanishing on v (the face signature of v)
  std::vector<size_t> tight_normals(const VecZ& v) const;

private:
  size_t dim_;
  std::vector<VecZ> facet_normals_;
  std::vector<VecZ> span_equations_;
  std::vector<VecZ> extreme_rays_;
  std::vector<VecZ> lineality_lattice_;
};

// Vertices of {x : rows[i].x >= rhs[i]} as exact rational points.
std::vector<VecQ> polyhedron_vertices(size_t dim, const std::vector<VecZ>& rows,
                                      const std::vector<Int>& rhs);

}  // namespace torlog

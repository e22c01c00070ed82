#pragma once

#include <memory>

#include "torlog/cone.hpp"

namespace torlog {

class MonoidPresentation;

// Face of a monoid, recorded as the set of parent generators lying on it.
struct Face {
  Face() = default;
  Face(const MonoidPresentation& parent, std::vector<size_t> generator_subset);

  std::shared_ptr<const MonoidPresentation> parent;
  std::vector<size_t> generator_subset;  // sorted

  const MonoidPresentation& parent_monoid() const { return *parent; }
  std::vector<VecZ> generator_vectors() const;
  MonoidPresentation monoid() const;  // the face as a submonoid
  size_t rank() const;
  bool contains(const VecZ& v) const;  // membership in the face submonoid

  bool operator==(const Face& o) const;
};

struct Flag {
  std::vector<Face> faces;  // strictly increasing
  bool is_complete() const;  // starts at the unit face, ends at the whole monoid, saturated chain
};

struct QuotientMonoid {
  MonoidPresentation* base_ptr() const { return base.get(); }
  std::shared_ptr<MonoidPresentation> base;
  std::vector<VecZ> unit_subgroup_gens;      // lattice basis of the unit group
  AbelianGroupPresentation group;            // gp of the quotient
  std::vector<QuotientElement> gen_images;   // aligned with base generators

  IntMatrix gp_basis;        // ambient x r, basis of the base gp group
  QuotientProjection proj;   // quotient of gp coordinates by the unit lattice

  QuotientElement project(const VecZ& v) const;  // v must lie in the gp group
  QuotientElement add(const QuotientElement& a, const QuotientElement& b) const {
    return proj.add(a, b);
  }
  QuotientElement scale(const Int& c, const QuotientElement& a) const { return proj.scale(c, a); }
};

bool is_torsion_free_quotient(const QuotientMonoid& q);

// Finitely generated submonoid of Z^k.  Immutable; copies share cached data.
class MonoidPresentation {
public:
  MonoidPresentation();  // trivial monoid in Z^0
  MonoidPresentation(size_t ambient_rank, const std::vector<VecZ>& generators);

  size_t ambient_rank() const;
  // deduplicated, zero vectors dropped, input order preserved
  const std::vector<VecZ>& generators() const;

  bool contains(const VecZ& v) const;
  bool in_gp(const VecZ& v) const;
  const IntMatrix& gp_basis() const;  // ambient x r
  size_t gp_rank() const;
  VecZ gp_coords(const VecZ& v) const;  // throws ValidationError when v outside gp

  const Cone& cone() const;

  std::vector<VecZ> unit_group() const;  // lattice basis of P* (may be empty)
  size_t unit_rank() const;
  bool is_sharp() const;
  size_t dimension() const;  // rank of the gp group of the sharp quotient

  // integer functional, >= 1 on non-unit generators and 0 on unit generators
  VecZ grading() const;
  // same functional; throws NotSharpError when the monoid has nontrivial units
  VecZ positive_grading() const;
  Int weight(const VecZ& v) const { return dot(grading(), v); }

  QuotientMonoid sharp_quotient() const;

  MonoidPresentation saturation() const;
  bool is_saturated() const;

  std::vector<Face> faces() const;
  Face face_from_generators(const std::vector<size_t>& subset) const;  // validates
  Face unit_face() const;
  Face top_face() const;

  Flag complete_flag() const;  // lexicographically smallest facet at every step

  MonoidPresentation localize(const Face& f) const;

  // all monoid elements of weight <= w, sorted by (weight, lex); sharp only
  std::vector<VecZ> elements_up_to_weight(const Int& w) const;

  bool operator==(const MonoidPresentation& o) const;

private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// same submonoid of the same ambient lattice (mutual generator membership)
bool same_monoid(const MonoidPresentation& a, const MonoidPresentation& b);

}  // namespace torlog

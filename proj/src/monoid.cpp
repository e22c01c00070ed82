#include "torlog/monoid.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <optional>
#include <set>

namespace torlog {

struct MonoidPresentation::Impl {
  size_t ambient = 0;
  std::vector<VecZ> gens;

  mutable std::recursive_mutex mu;
  mutable std::optional<IntMatrix> gp_basis;
  mutable std::optional<Cone> cone;
  mutable std::optional<std::vector<VecZ>> units;
  mutable std::optional<VecZ> grading;

  mutable bool memb_ready = false;
  mutable QuotientProjection unit_proj;
  mutable AbelianGroupPresentation unit_quotient_group;
  mutable std::vector<QuotientElement> nonunit_images;
  mutable VecZ qgrading;
  mutable std::map<VecZ, bool> memb_memo;
  mutable std::map<QuotientElement, bool> reach_memo;

  mutable std::optional<std::vector<std::vector<size_t>>> facesets;
  mutable std::shared_ptr<const MonoidPresentation> saturation_cache;
  mutable std::optional<bool> saturated;
  mutable std::vector<VecZ> elements;  // sorted by (weight, lex)
  mutable Int elements_w{-1};

  void ensure_membership_data(const MonoidPresentation& p, const Cone& cn, const IntMatrix& basis) const;
  bool reach_zero(const QuotientElement& u) const;
};

MonoidPresentation::MonoidPresentation() : MonoidPresentation(0, {}) {}

MonoidPresentation::MonoidPresentation(size_t ambient_rank, const std::vector<VecZ>& generators)
    : impl_(std::make_shared<Impl>()) {
  impl_->ambient = ambient_rank;
  for (const auto& g : generators) {
    if (g.size() != ambient_rank)
      throw ValidationError("generator " + vec_to_string(g) + " has wrong dimension");
    if (is_zero(g)) continue;
    if (std::find(impl_->gens.begin(), impl_->gens.end(), g) == impl_->gens.end())
      impl_->gens.push_back(g);
  }
}

size_t MonoidPresentation::ambient_rank() const { return impl_->ambient; }
const std::vector<VecZ>& MonoidPresentation::generators() const { return impl_->gens; }

const Cone& MonoidPresentation::cone() const {
  std::lock_guard<std::recursive_mutex> lk(impl_->mu);
  if (!impl_->cone) impl_->cone.emplace(impl_->ambient, impl_->gens);
  return *impl_->cone;
}

const IntMatrix& MonoidPresentation::gp_basis() const {
  std::lock_guard<std::recursive_mutex> lk(impl_->mu);
  if (!impl_->gp_basis)
    impl_->gp_basis = IntMatrix::from_columns(impl_->ambient, lattice_basis(impl_->ambient, impl_->gens));
  return *impl_->gp_basis;
}

size_t MonoidPresentation::gp_rank() const { return gp_basis().cols(); }

bool MonoidPresentation::in_gp(const VecZ& v) const {
  return solve_in_lattice(gp_basis(), v).has_value();
}

VecZ MonoidPresentation::gp_coords(const VecZ& v) const {
  auto c = solve_in_lattice(gp_basis(), v);
  if (!c) throw ValidationError("vector " + vec_to_string(v) + " is outside the gp group");
  return *c;
}

std::vector<VecZ> MonoidPresentation::unit_group() const {
  std::lock_guard<std::recursive_mutex> lk(impl_->mu);
  if (!impl_->units) {
    const Cone& c = cone();
    std::vector<VecZ> ug;
    for (const auto& g : impl_->gens)
      if (c.in_lineality(g)) ug.push_back(g);
    impl_->units = lattice_basis(impl_->ambient, ug);
  }
  return *impl_->units;
}

size_t MonoidPresentation::unit_rank() const { return unit_group().size(); }
bool MonoidPresentation::is_sharp() const { return unit_group().empty(); }
size_t MonoidPresentation::dimension() const { return gp_rank() - unit_rank(); }

VecZ MonoidPresentation::grading() const {
  std::lock_guard<std::recursive_mutex> lk(impl_->mu);
  if (!impl_->grading) {
    VecZ w(impl_->ambient, Int(0));
    for (const auto& h : cone().facet_normals()) w = vec_add(w, h);
    impl_->grading = w;
  }
  return *impl_->grading;
}

VecZ MonoidPresentation::positive_grading() const {
  if (!is_sharp()) throw NotSharpError("positive grading requires a sharp monoid");
  VecZ w = grading();
  for (const auto& g : impl_->gens) assert(dot(w, g) >= 1);
  return w;
}

void MonoidPresentation::Impl::ensure_membership_data(const MonoidPresentation& p, const Cone& cn,
                                                      const IntMatrix& basis) const {
  if (memb_ready) return;
  size_t r = basis.cols();
  std::vector<VecZ> unit_coords;
  std::vector<VecZ> nonunit_coords;
  for (const auto& g : gens) {
    VecZ c = p.gp_coords(g);
    if (cn.in_lineality(g))
      unit_coords.push_back(c);
    else
      nonunit_coords.push_back(c);
  }
  auto q = quotient_presentation(r, unit_coords);
  unit_proj = q.projection;
  unit_quotient_group = q.group;
  for (const auto& c : nonunit_coords) nonunit_images.push_back(unit_proj.project(c));

  size_t m = q.group.free_rank;
  std::vector<VecZ> frees;
  for (const auto& e : nonunit_images) frees.push_back(e.free);
  Cone qc(m, frees);
  VecZ w(m, Int(0));
  for (const auto& h : qc.facet_normals()) w = vec_add(w, h);
  qgrading = w;
  for (const auto& e : nonunit_images) assert(dot(w, e.free) >= 1);
  memb_ready = true;
}

bool MonoidPresentation::Impl::reach_zero(const QuotientElement& u) const {
  if (u.is_zero()) return true;
  auto it = reach_memo.find(u);
  if (it != reach_memo.end()) return it->second;
  bool ok = false;
  for (const auto& c : nonunit_images) {
    QuotientElement d = unit_proj.add(u, unit_proj.scale(Int(-1), c));
    if (dot(qgrading, d.free) < 0) continue;
    if (reach_zero(d)) {
      ok = true;
      break;
    }
  }
  reach_memo[u] = ok;
  return ok;
}

bool MonoidPresentation::contains(const VecZ& v) const {
  if (v.size() != impl_->ambient)
    throw ValidationError("membership query with wrong dimension");
  if (is_zero(v)) return true;
  std::lock_guard<std::recursive_mutex> lk(impl_->mu);
  auto it = impl_->memb_memo.find(v);
  if (it != impl_->memb_memo.end()) return it->second;
  bool result = false;
  // quick cone rejection
  if (cone().contains(v)) {
    auto coords = solve_in_lattice(gp_basis(), v);
    if (coords) {
      impl_->ensure_membership_data(*this, cone(), gp_basis());
      QuotientElement target = impl_->unit_proj.project(*coords);
      result = impl_->reach_zero(target);
    }
  }
  impl_->memb_memo[v] = result;
  return result;
}

QuotientElement QuotientMonoid::project(const VecZ& v) const {
  auto c = solve_in_lattice(gp_basis, v);
  if (!c) throw ValidationError("vector outside the gp group of the base monoid");
  return proj.project(*c);
}

bool is_torsion_free_quotient(const QuotientMonoid& q) { return q.group.torsion_orders.empty(); }

QuotientMonoid MonoidPresentation::sharp_quotient() const {
  QuotientMonoid q;
  q.base = std::make_shared<MonoidPresentation>(*this);
  q.unit_subgroup_gens = unit_group();
  q.gp_basis = gp_basis();
  size_t r = gp_rank();
  std::vector<VecZ> unit_coords;
  for (const auto& u : q.unit_subgroup_gens) unit_coords.push_back(gp_coords(u));
  auto pres = quotient_presentation(r, unit_coords);
  q.group = pres.group;
  q.proj = pres.projection;
  for (const auto& g : impl_->gens) q.gen_images.push_back(q.proj.project(gp_coords(g)));
  return q;
}

// ---------------------------------------------------------------------------
// faces and flags

Face::Face(const MonoidPresentation& p, std::vector<size_t> generator_subset)
    : parent(std::make_shared<MonoidPresentation>(p)), generator_subset(std::move(generator_subset)) {
  std::sort(this->generator_subset.begin(), this->generator_subset.end());
}

std::vector<VecZ> Face::generator_vectors() const {
  std::vector<VecZ> v;
  for (size_t i : generator_subset) v.push_back(parent->generators()[i]);
  return v;
}

MonoidPresentation Face::monoid() const {
  return MonoidPresentation(parent->ambient_rank(), generator_vectors());
}

size_t Face::rank() const {
  auto v = generator_vectors();
  if (v.empty()) return 0;
  return rank_of(IntMatrix::from_columns(parent->ambient_rank(), v));
}

bool Face::contains(const VecZ& v) const {
  if (!parent->contains(v)) return false;
  // v lies on the face iff every facet normal vanishing on the face vanishes on v
  const Cone& c = parent->cone();
  auto gv = generator_vectors();
  for (const auto& h : c.facet_normals()) {
    bool on_face = true;
    for (const auto& g : gv)
      if (dot(h, g) != 0) {
        on_face = false;
        break;
      }
    if (on_face && dot(h, v) != 0) return false;
  }
  return true;
}

bool Face::operator==(const Face& o) const {
  return parent->ambient_rank() == o.parent->ambient_rank() &&
         parent->generators() == o.parent->generators() && generator_subset == o.generator_subset;
}

std::vector<Face> MonoidPresentation::faces() const {
  std::vector<std::vector<size_t>> sets;
  {
    std::lock_guard<std::recursive_mutex> lk(impl_->mu);
    if (!impl_->facesets) impl_->facesets = cone().face_generator_sets(impl_->gens);
    sets = *impl_->facesets;
  }
  std::vector<Face> out;
  for (auto& s : sets) out.emplace_back(*this, s);
  return out;
}

Face MonoidPresentation::face_from_generators(const std::vector<size_t>& subset) const {
  std::vector<size_t> s = subset;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (size_t i : s)
    if (i >= impl_->gens.size()) throw ValidationError("face generator index out of range");
  for (const auto& f : faces())
    if (f.generator_subset == s) return f;
  throw NotFaceError("generator subset does not define a face");
}

Face MonoidPresentation::unit_face() const { return faces().front(); }
Face MonoidPresentation::top_face() const { return faces().back(); }

bool Flag::is_complete() const {
  if (faces.empty()) return false;
  const MonoidPresentation& p = *faces[0].parent;
  if (faces.front().generator_subset != p.unit_face().generator_subset) return false;
  if (faces.back().generator_subset != p.top_face().generator_subset) return false;
  for (size_t i = 0; i + 1 < faces.size(); ++i) {
    const auto& a = faces[i].generator_subset;
    const auto& b = faces[i + 1].generator_subset;
    if (!std::includes(b.begin(), b.end(), a.begin(), a.end()) || a == b) return false;
    if (faces[i].rank() + 1 != faces[i + 1].rank()) return false;
  }
  return true;
}

Flag MonoidPresentation::complete_flag() const {
  auto fs = faces();
  std::map<std::vector<size_t>, size_t> rank_of_set;
  for (const auto& f : fs) rank_of_set[f.generator_subset] = f.rank();

  Flag flag;
  Face current = top_face();
  flag.faces.push_back(current);
  size_t bottom_rank = unit_face().rank();
  while (current.rank() > bottom_rank) {
    size_t want = current.rank() - 1;
    const Face* best = nullptr;
    for (const auto& f : fs) {
      if (rank_of_set[f.generator_subset] != want) continue;
      if (!std::includes(current.generator_subset.begin(), current.generator_subset.end(),
                         f.generator_subset.begin(), f.generator_subset.end()))
        continue;
      if (!best || f.generator_subset < best->generator_subset) best = &f;
    }
    assert(best != nullptr);
    flag.faces.push_back(*best);
    current = *best;
  }
  std::reverse(flag.faces.begin(), flag.faces.end());
  return flag;
}

MonoidPresentation MonoidPresentation::localize(const Face& f) const {
  if (f.parent->ambient_rank() != impl_->ambient || f.parent->generators() != impl_->gens)
    throw NotFaceError("face belongs to a different monoid");
  bool found = false;
  for (const auto& g : faces())
    if (g.generator_subset == f.generator_subset) {
      found = true;
      break;
    }
  if (!found) throw NotFaceError("generator subset is not a face");
  std::vector<VecZ> gens = impl_->gens;
  for (size_t i : f.generator_subset) gens.push_back(vec_neg(impl_->gens[i]));
  return MonoidPresentation(impl_->ambient, gens);
}

std::vector<VecZ> MonoidPresentation::elements_up_to_weight(const Int& w) const {
  if (!is_sharp()) throw NotSharpError("element enumeration requires a sharp monoid");
  std::lock_guard<std::recursive_mutex> lk(impl_->mu);
  VecZ grad = grading();
  if (impl_->elements_w < w) {
    std::set<VecZ> visited;
    VecZ zero(impl_->ambient, Int(0));
    visited.insert(zero);
    std::vector<VecZ> frontier{zero};
    while (!frontier.empty()) {
      std::vector<VecZ> next;
      for (const auto& v : frontier)
        for (const auto& g : impl_->gens) {
          VecZ u = vec_add(v, g);
          if (dot(grad, u) > w) continue;
          if (visited.insert(u).second) next.push_back(u);
        }
      frontier = std::move(next);
    }
    impl_->elements.assign(visited.begin(), visited.end());
    std::sort(impl_->elements.begin(), impl_->elements.end(), [&](const VecZ& a, const VecZ& b) {
      Int wa = dot(grad, a), wb = dot(grad, b);
      if (wa != wb) return wa < wb;
      return a < b;
    });
    impl_->elements_w = w;
  }
  std::vector<VecZ> out;
  for (const auto& v : impl_->elements)
    if (dot(grad, v) <= w) out.push_back(v);
  return out;
}

// ---------------------------------------------------------------------------
// saturation

namespace {

// lattice points of the half-open parallelepiped spanned by the columns of q
std::vector<VecZ> parallelepiped_points(const IntMatrix& q) {
  size_t t = q.rows();
  assert(det(q) != 0);
  SmithForm f = smith_normal_form(q);
  std::vector<VecZ> points;
  // representatives of Z^t / q Z^t are x_c = u_inv * c for c in prod [0, s_i);
  // the parallelepiped point of the class is x_c - q * floor(q^{-1} x_c) with
  // q^{-1} x_c = v * diag(1/s_i) * c, so the coordinates have denominator L
  Int l = 1;
  for (const Int& s : f.diag) l = l / gcd(l, s) * s;
  std::vector<Int> scale(t);
  for (size_t i = 0; i < t; ++i) scale[i] = l / f.diag[i];
  VecZ counter(t, Int(0));
  while (true) {
    VecZ x(t, Int(0));
    for (size_t i = 0; i < t; ++i) {
      if (counter[i] == 0) continue;
      for (size_t k = 0; k < t; ++k) x[k] += f.u_inv.at(k, i) * counter[i];
    }
    VecZ lam_floor(t);
    for (size_t j = 0; j < t; ++j) {
      Int num = 0;
      for (size_t k = 0; k < t; ++k) num += f.v.at(j, k) * counter[k] * scale[k];
      mpz_fdiv_q(lam_floor[j].get_mpz_t(), num.get_mpz_t(), l.get_mpz_t());
    }
    VecZ p = x;
    for (size_t j = 0; j < t; ++j) {
      if (lam_floor[j] == 0) continue;
      for (size_t k = 0; k < t; ++k) p[k] -= q.at(k, j) * lam_floor[j];
    }
    if (!is_zero(p)) points.push_back(p);
    // next representative
    size_t i = 0;
    for (; i < t; ++i) {
      counter[i] += 1;
      if (counter[i] < f.diag[i]) break;
      counter[i] = 0;
    }
    if (i == t) break;
  }
  return points;
}

// placing triangulation of a pointed full-dimensional cone given by its
// extreme rays; returns simplices as ray index sets
std::vector<std::vector<size_t>> triangulate_rays(const std::vector<VecZ>& rays, size_t t) {
  // greedy independent base
  std::vector<size_t> base;
  for (size_t i = 0; i < rays.size() && base.size() < t; ++i) {
    std::vector<VecZ> probe;
    for (size_t b : base) probe.push_back(rays[b]);
    probe.push_back(rays[i]);
    if (rank_of(IntMatrix::from_columns(t, probe)) == probe.size()) base.push_back(i);
  }
  assert(base.size() == t);
  std::vector<std::vector<size_t>> simplices{base};

  for (size_t i = 0; i < rays.size(); ++i) {
    if (std::find(base.begin(), base.end(), i) != base.end()) continue;
    // boundary facets appear in exactly one simplex
    std::map<std::vector<size_t>, std::vector<size_t>> facet_owner;
    std::map<std::vector<size_t>, int> facet_count;
    for (const auto& s : simplices)
      for (size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<size_t> f;
        for (size_t j = 0; j < s.size(); ++j)
          if (j != drop) f.push_back(s[j]);
        std::sort(f.begin(), f.end());
        facet_count[f] += 1;
        facet_owner[f] = s;
      }
    std::vector<std::vector<size_t>> added;
    for (const auto& [f, cnt] : facet_count) {
      if (cnt != 1) continue;
      std::vector<VecZ> frows;
      for (size_t j : f) frows.push_back(rays[j]);
      IntMatrix h = kernel_basis(IntMatrix::from_columns(t, frows).transpose());
      assert(h.cols() == 1);
      VecZ normal = h.col(0);
      // orient away from the owning simplex
      const auto& owner = facet_owner[f];
      size_t off = owner[0];
      for (size_t j : owner)
        if (std::find(f.begin(), f.end(), j) == f.end()) off = j;
      Int side = dot(normal, rays[off]);
      assert(side != 0);
      if (side < 0) normal = vec_neg(normal);
      if (dot(normal, rays[i]) < 0) {
        std::vector<size_t> s = f;
        s.push_back(i);
        added.push_back(s);
      }
    }
    simplices.insert(simplices.end(), added.begin(), added.end());
  }
  return simplices;
}

// Hilbert basis of (pointed, full-dimensional) cone intersect Z^t
std::vector<VecZ> hilbert_basis_pointed(const Cone& c, size_t t) {
  if (t == 0) return {};
  const std::vector<VecZ>& rays = c.extreme_rays();
  assert(!rays.empty());
  std::set<VecZ> cand(rays.begin(), rays.end());
  // lattice points of the fundamental parallelepipeds of a triangulation
  for (const auto& s : triangulate_rays(rays, t)) {
    std::vector<VecZ> cols;
    for (size_t i : s) cols.push_back(rays[i]);
    IntMatrix q = IntMatrix::from_columns(t, cols);
    for (auto& p : parallelepiped_points(q)) cand.insert(p);
  }
  // reduce to irreducible elements, scanning by increasing weight so only the
  // irreducibles found so far need to be tested as divisors
  VecZ w(t, Int(0));
  for (const auto& h : c.facet_normals()) w = vec_add(w, h);
  std::vector<VecZ> sorted(cand.begin(), cand.end());
  std::sort(sorted.begin(), sorted.end(), [&](const VecZ& a, const VecZ& b) {
    Int wa = dot(w, a), wb = dot(w, b);
    if (wa != wb) return wa < wb;
    return a < b;
  });
  std::vector<VecZ> hb;
  for (const auto& x : sorted) {
    bool reducible = false;
    for (const auto& y : hb) {
      VecZ d = vec_sub(x, y);
      if (!is_zero(d) && c.contains(d)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) hb.push_back(x);
  }
  std::sort(hb.begin(), hb.end());
  return hb;
}

}  // namespace

MonoidPresentation MonoidPresentation::saturation() const {
  {
    std::lock_guard<std::recursive_mutex> lk(impl_->mu);
    if (impl_->saturation_cache) return *impl_->saturation_cache;
  }
  const IntMatrix& b = gp_basis();
  size_t r = b.cols();
  std::vector<VecZ> coord_gens;
  for (const auto& g : impl_->gens) coord_gens.push_back(gp_coords(g));
  Cone cc(r, coord_gens);

  std::vector<VecZ> sat_coord_gens;
  std::vector<VecZ> lin = cc.lineality_lattice();
  for (const auto& u : lin) {
    sat_coord_gens.push_back(u);
    sat_coord_gens.push_back(vec_neg(u));
  }

  if (lin.size() < r) {
    std::vector<VecZ> hb_lifted;
    if (lin.empty()) {
      hb_lifted = hilbert_basis_pointed(cc, r);
    } else {
      // split off the (saturated) lineality lattice and work in the quotient
      SmithForm f = smith_normal_form(IntMatrix::from_columns(r, lin));
      for (const Int& d : f.diag) {
        (void)d;
        assert(d == 1);
      }
      size_t t = r - f.rank;
      std::vector<VecZ> proj_gens;
      for (const auto& c : coord_gens) {
        VecZ w = f.u.apply(c);
        proj_gens.push_back(VecZ(w.begin() + f.rank, w.end()));
      }
      Cone qc(t, proj_gens);
      for (const auto& h : hilbert_basis_pointed(qc, t)) {
        VecZ z(r, Int(0));
        for (size_t i = 0; i < t; ++i)
          for (size_t k = 0; k < r; ++k) z[k] += f.u_inv.at(k, f.rank + i) * h[i];
        assert(cc.contains(z));
        hb_lifted.push_back(z);
      }
    }
    sat_coord_gens.insert(sat_coord_gens.end(), hb_lifted.begin(), hb_lifted.end());
  }

  std::vector<VecZ> ambient_gens;
  for (const auto& c : sat_coord_gens) ambient_gens.push_back(b.apply(c));
  std::sort(ambient_gens.begin(), ambient_gens.end());
  MonoidPresentation sat(impl_->ambient, ambient_gens);
  {
    std::lock_guard<std::recursive_mutex> lk(impl_->mu);
    impl_->saturation_cache = std::make_shared<const MonoidPresentation>(sat);
  }
  return sat;
}

bool MonoidPresentation::is_saturated() const {
  {
    std::lock_guard<std::recursive_mutex> lk(impl_->mu);
    if (impl_->saturated) return *impl_->saturated;
  }
  bool ok = true;
  MonoidPresentation sat = saturation();
  for (const auto& g : sat.generators())
    if (!contains(g)) {
      ok = false;
      break;
    }
  std::lock_guard<std::recursive_mutex> lk(impl_->mu);
  impl_->saturated = ok;
  return ok;
}

bool MonoidPresentation::operator==(const MonoidPresentation& o) const {
  return impl_->ambient == o.impl_->ambient && impl_->gens == o.impl_->gens;
}

bool same_monoid(const MonoidPresentation& a, const MonoidPresentation& b) {
  if (a.ambient_rank() != b.ambient_rank()) return false;
  for (const auto& g : a.generators())
    if (!b.contains(g)) return false;
  for (const auto& g : b.generators())
    if (!a.contains(g)) return false;
  return true;
}

}  // namespace torlog

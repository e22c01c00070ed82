#include "torlog/cone.hpp"

#include <algorithm>
#include <set>

namespace torlog {

namespace {

struct Ray {
  VecZ v;
  std::set<size_t> tight;  // processed constraint indices with zero slack
};

bool tight_subset(const std::set<size_t>& a, const std::set<size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

DDResult dd_intersect(size_t dim, const std::vector<Constraint>& constraints) {
  std::vector<VecZ> lin;
  for (size_t i = 0; i < dim; ++i) {
    VecZ e(dim, Int(0));
    e[i] = 1;
    lin.push_back(e);
  }
  std::vector<Ray> rays;

  for (size_t c = 0; c < constraints.size(); ++c) {
    const VecZ& h = constraints[c].normal;
    bool eq = constraints[c].equality;

    size_t star = lin.size();
    for (size_t i = 0; i < lin.size(); ++i)
      if (dot(h, lin[i]) != 0) {
        star = i;
        break;
      }

    if (star < lin.size()) {
      VecZ ls = lin[star];
      Int hls = dot(h, ls);
      if (hls < 0) {
        ls = vec_neg(ls);
        hls = -hls;
      }
      std::vector<VecZ> new_lin;
      for (size_t i = 0; i < lin.size(); ++i) {
        if (i == star) continue;
        Int hl = dot(h, lin[i]);
        VecZ w = vec_sub(vec_scale(hls, lin[i]), vec_scale(hl, ls));
        make_primitive(w);
        new_lin.push_back(w);
      }
      lin = new_lin;
      // project rays onto the hyperplane; they keep all previous tightness
      for (auto& r : rays) {
        Int hr = dot(h, r.v);
        if (hr != 0) {
          r.v = vec_sub(vec_scale(hls, r.v), vec_scale(hr, ls));
          make_primitive(r.v);
        }
        r.tight.insert(c);
      }
      if (!eq) {
        Ray nr;
        nr.v = ls;
        make_primitive(nr.v);
        for (size_t j = 0; j < c; ++j) nr.tight.insert(j);  // ls was in the lineality
        rays.push_back(nr);
      }
      continue;
    }

    std::vector<Ray> pos, zero, neg;
    for (auto& r : rays) {
      Int s = dot(h, r.v);
      if (s > 0)
        pos.push_back(r);
      else if (s < 0)
        neg.push_back(r);
      else {
        r.tight.insert(c);
        zero.push_back(r);
      }
    }
    std::vector<Ray> next = zero;
    if (!eq)
      for (auto& r : pos) next.push_back(r);
    for (const auto& rp : pos)
      for (const auto& rn : neg) {
        // adjacency: no third ray is tight everywhere both are
        std::set<size_t> common;
        std::set_intersection(rp.tight.begin(), rp.tight.end(), rn.tight.begin(), rn.tight.end(),
                              std::inserter(common, common.begin()));
        bool adjacent = true;
        for (const auto& other : rays) {
          if (other.v == rp.v || other.v == rn.v) continue;
          if (tight_subset(common, other.tight)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        Ray w;
        Int sp = dot(h, rp.v), sn = dot(h, rn.v);
        w.v = vec_sub(vec_scale(sp, rn.v), vec_scale(sn, rp.v));
        make_primitive(w.v);
        w.tight = common;
        w.tight.insert(c);
        next.push_back(w);
      }
    rays = next;
  }

  DDResult res;
  for (auto& r : rays) res.rays.push_back(r.v);
  std::sort(res.rays.begin(), res.rays.end());
  res.rays.erase(std::unique(res.rays.begin(), res.rays.end()), res.rays.end());
  res.lineality = lin;
  return res;
}

Cone::Cone(size_t dim, const std::vector<VecZ>& generators) : dim_(dim) {
  std::vector<Constraint> dual;
  for (const auto& g : generators)
    if (!is_zero(g)) dual.push_back({g, false});
  DDResult d = dd_intersect(dim, dual);
  facet_normals_ = d.rays;
  // canonical basis for the orthogonal complement of the span
  span_equations_ = lattice_basis(dim, d.lineality);

  std::vector<Constraint> primal;
  for (const auto& h : facet_normals_) primal.push_back({h, false});
  for (const auto& e : span_equations_) primal.push_back({e, true});
  DDResult p = dd_intersect(dim, primal);
  extreme_rays_ = p.rays;

  std::vector<VecZ> rows = facet_normals_;
  rows.insert(rows.end(), span_equations_.begin(), span_equations_.end());
  if (rows.empty()) {
    lineality_lattice_ = lattice_basis(dim, p.lineality);
  } else {
    lineality_lattice_ = kernel_basis(IntMatrix::from_rows(rows)).columns();
  }
}

bool Cone::contains(const VecZ& v) const {
  for (const auto& e : span_equations_)
    if (dot(e, v) != 0) return false;
  for (const auto& h : facet_normals_)
    if (dot(h, v) < 0) return false;
  return true;
}

bool Cone::in_lineality(const VecZ& v) const {
  for (const auto& e : span_equations_)
    if (dot(e, v) != 0) return false;
  for (const auto& h : facet_normals_)
    if (dot(h, v) != 0) return false;
  return true;
}

size_t Cone::dim() const { return dim_ - span_equations_.size(); }

std::vector<std::vector<size_t>> Cone::face_generator_sets(const std::vector<VecZ>& gens) const {
  size_t f = facet_normals_.size();
  if (f > 25) throw BoundExceededError("face enumeration: too many facets (" + std::to_string(f) + ")");
  std::set<std::vector<size_t>> seen;
  for (size_t mask = 0; mask < (size_t(1) << f); ++mask) {
    std::vector<size_t> genset;
    for (size_t i = 0; i < gens.size(); ++i) {
      bool on = true;
      for (size_t j = 0; j < f && on; ++j)
        if (mask & (size_t(1) << j))
          if (dot(facet_normals_[j], gens[i]) != 0) on = false;
      if (on) genset.push_back(i);
    }
    seen.insert(genset);
  }
  std::vector<std::vector<size_t>> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<size_t> Cone::tight_normals(const VecZ& v) const {
  std::vector<size_t> t;
  for (size_t j = 0; j < facet_normals_.size(); ++j)
    if (dot(facet_normals_[j], v) == 0) t.push_back(j);
  return t;
}

namespace {

// Gaussian elimination over Q; returns false when singular.
bool solve_rational(std::vector<VecQ>& a, VecQ& b) {
  size_t n = b.size();
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return false;
    std::swap(a[p], a[k]);
    std::swap(b[p], b[k]);
    for (size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Rat f = a[i][k] / a[k][k];
      for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  for (size_t k = 0; k < n; ++k) b[k] /= a[k][k];
  return true;
}

}  // namespace

std::vector<VecQ> polyhedron_vertices(size_t dim, const std::vector<VecZ>& rows,
                                      const std::vector<Int>& rhs) {
  std::vector<VecQ> vertices;
  size_t m = rows.size();
  if (dim == 0) {
    bool ok = true;
    for (size_t i = 0; i < m; ++i)
      if (rhs[i] > 0) ok = false;
    if (ok) vertices.push_back({});
    return vertices;
  }
  // iterate over dim-subsets of constraints
  std::vector<size_t> c(dim);
  for (size_t i = 0; i < dim; ++i) c[i] = i;
  if (m < dim) return vertices;
  while (true) {
    std::vector<VecQ> a(dim, VecQ(dim));
    VecQ b(dim);
    for (size_t i = 0; i < dim; ++i) {
      for (size_t j = 0; j < dim; ++j) {
        a[i][j] = Rat(rows[c[i]][j]);
        a[i][j].canonicalize();
      }
      b[i] = Rat(rhs[c[i]]);
      b[i].canonicalize();
    }
    if (solve_rational(a, b)) {
      bool feas = true;
      for (size_t i = 0; i < m && feas; ++i) {
        Rat s(0);
        for (size_t j = 0; j < dim; ++j) s += Rat(rows[i][j]) * b[j];
        if (s < Rat(rhs[i])) feas = false;
      }
      if (feas && std::find(vertices.begin(), vertices.end(), b) == vertices.end())
        vertices.push_back(b);
    }
    // next subset
    bool advanced = false;
    for (size_t k = dim; k-- > 0;) {
      if (c[k] < m - dim + k) {
        ++c[k];
        for (size_t j = k + 1; j < dim; ++j) c[j] = c[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return vertices;
}

}  // namespace torlog

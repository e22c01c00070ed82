#include "torlog/embed.hpp"

#include <algorithm>
#include <cassert>

namespace torlog {

namespace {

// rational matrix as integer matrix over a positive common denominator
struct RatMatrix {
  IntMatrix num;
  Int den{1};

  void normalize() {
    if (den < 0) {
      den = -den;
      for (size_t i = 0; i < num.rows(); ++i) num.negate_row(i);
    }
    Int g = den;
    for (size_t i = 0; i < num.rows(); ++i)
      for (size_t j = 0; j < num.cols(); ++j) g = gcd(g, num.at(i, j));
    if (g > 1) {
      for (size_t i = 0; i < num.rows(); ++i)
        for (size_t j = 0; j < num.cols(); ++j) num.at(i, j) /= g;
      den /= g;
    }
  }

  RatMatrix mul(const RatMatrix& o) const {
    RatMatrix r{num.mul(o.num), den * o.den};
    r.normalize();
    return r;
  }
};

// adjugate-based rational left inverse X with X * b = identity (b has
// independent columns); X = adj(b^T b) b^T / det(b^T b)
RatMatrix rational_left_inverse(const IntMatrix& b) {
  size_t r = b.cols();
  IntMatrix bt = b.transpose();
  IntMatrix m = bt.mul(b);
  Int d = det(m);
  if (d == 0) throw ValidationError("left inverse of a rank-deficient matrix");
  IntMatrix adj(r, r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      IntMatrix minor(r - 1, r - 1);
      for (size_t a = 0, ai = 0; a < r; ++a) {
        if (a == j) continue;
        for (size_t c = 0, ci = 0; c < r; ++c) {
          if (c == i) continue;
          minor.at(ai, ci) = m.at(a, c);
          ++ci;
        }
        ++ai;
      }
      Int cof = det(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      adj.at(i, j) = cof;
    }
  RatMatrix x{adj.mul(bt), d};
  x.normalize();
  return x;
}

// the unique facet normal vanishing on all the given generators
VecZ facet_normal_of(const Cone& c, const std::vector<VecZ>& face_gens) {
  std::vector<VecZ> candidates;
  for (const auto& h : c.facet_normals()) {
    bool vanishes = true;
    for (const auto& g : face_gens)
      if (dot(h, g) != 0) {
        vanishes = false;
        break;
      }
    if (vanishes) candidates.push_back(h);
  }
  if (candidates.size() != 1)
    throw NotFacetError("face is not a facet (has " + std::to_string(candidates.size()) +
                        " vanishing support forms)");
  return candidates[0];
}

std::vector<size_t> normal_signature(const Cone& c, const std::vector<VecZ>& face_gens) {
  std::vector<size_t> sig;
  for (size_t j = 0; j < c.facet_normals().size(); ++j) {
    bool vanishes = true;
    for (const auto& g : face_gens)
      if (dot(c.facet_normals()[j], g) != 0) {
        vanishes = false;
        break;
      }
    if (vanishes) sig.push_back(j);
  }
  return sig;
}

// face of `target` cut out by the same facet normals
Face corresponding_face(const MonoidPresentation& target, const Cone& cone,
                        const std::vector<size_t>& signature) {
  std::vector<size_t> subset;
  for (size_t i = 0; i < target.generators().size(); ++i) {
    bool on = true;
    for (size_t j : signature)
      if (dot(cone.facet_normals()[j], target.generators()[i]) != 0) {
        on = false;
        break;
      }
    if (on) subset.push_back(i);
  }
  return target.face_from_generators(subset);
}

// recursive construction over a saturated sharp monoid
RatMatrix embed_saturated(const MonoidPresentation& psat, const std::vector<Face>& flag_faces) {
  size_t d = flag_faces.size() - 1;
  size_t k = psat.ambient_rank();
  if (d == 0) return RatMatrix{IntMatrix(0, k), Int(1)};

  const Face& facet = flag_faces[d - 1];
  MonoidPresentation fm = facet.monoid();

  // restrict the flag below the facet to faces of the facet monoid
  std::vector<Face> sub_flag;
  for (size_t i = 0; i < d; ++i) {
    std::vector<size_t> subset;
    const auto& inner = flag_faces[i].generator_subset;
    for (size_t pos = 0; pos < facet.generator_subset.size(); ++pos)
      if (std::binary_search(inner.begin(), inner.end(), facet.generator_subset[pos]))
        subset.push_back(pos);
    sub_flag.push_back(fm.face_from_generators(subset));
  }
  RatMatrix rho = embed_saturated(fm, sub_flag);

  // retraction of the gp group onto the facet gp group
  const IntMatrix& basis = psat.gp_basis();
  std::vector<VecZ> facet_coords;
  for (const auto& g : facet.generator_vectors()) facet_coords.push_back(psat.gp_coords(g));
  auto section = splitting_section(facet_coords, basis.cols());
  if (!section)  // cannot happen: a face gp group is saturated inside a saturated monoid
    throw Error("flag embedding: no splitting for a facet gp group");

  RatMatrix coords = rational_left_inverse(basis);
  IntMatrix to_ambient = basis.mul(section->basis);  // ambient x rank(facet)
  RatMatrix psi1 =
      rho.mul(RatMatrix{to_ambient.mul(section->sigma), Int(1)}.mul(coords));

  // support form of the facet, primitive on the gp group; psat is saturated
  // by construction, so the public precondition checks are not repeated here
  LinearFunctional psi2;
  {
    VecZ h = facet_normal_of(psat.cone(), facet.generator_vectors());
    Int g = 0;
    for (size_t j = 0; j < basis.cols(); ++j) g = gcd(g, dot(h, basis.col(j)));
    psi2 = LinearFunctional{h, g == 0 ? Int(1) : g};
  }

  // stack psi1 over psi2 with a common denominator
  Int den = psi1.den * psi2.denom / gcd(psi1.den, psi2.denom);
  IntMatrix psi(d, k);
  for (size_t i = 0; i + 1 < d; ++i)
    for (size_t j = 0; j < k; ++j) psi.at(i, j) = psi1.num.at(i, j) * (den / psi1.den);
  for (size_t j = 0; j < k; ++j) psi.at(d - 1, j) = psi2.coeffs[j] * (den / psi2.denom);

  // shear: smallest n_i making every Hilbert basis image nonnegative
  for (size_t i = 0; i + 1 < d; ++i) {
    Int n = 0;
    for (const auto& p : psat.generators()) {
      VecZ img = psi.apply(p);
      Int last = img[d - 1];
      if (last == 0) continue;
      assert(last > 0);
      // need img[i] + n * last >= 0, so n >= ceil(-img[i] / last)
      Int need;
      mpz_cdiv_q(need.get_mpz_t(), Int(-img[i]).get_mpz_t(), last.get_mpz_t());
      n = std::max(n, need);
    }
    for (size_t j = 0; j < k; ++j) psi.at(i, j) += n * psi.at(d - 1, j);
  }
  RatMatrix out{psi, den};
  out.normalize();
  return out;
}

}  // namespace

Int LinearFunctional::operator()(const VecZ& v) const {
  Int s = dot(coeffs, v);
  if (s % denom != 0)
    throw ValidationError("functional is not integral at " + vec_to_string(v));
  return s / denom;
}

VecZ FlagEmbedding::apply(const VecZ& v) const {
  VecZ w = matrix.apply(v);
  for (auto& x : w) {
    if (x % denom != 0)
      throw ValidationError("embedding is not integral at " + vec_to_string(v));
    x /= denom;
  }
  return w;
}

LinearFunctional facet_valuation(const MonoidPresentation& p, const Face& facet) {
  if (!p.is_sharp()) throw NotSharpError("facet valuation requires a sharp monoid");
  if (!p.is_saturated()) throw NotSaturatedError("facet valuation requires a saturated monoid");
  if (facet.rank() + 1 != p.dimension())
    throw NotFacetError("face has codimension different from one");
  VecZ h = facet_normal_of(p.cone(), facet.generator_vectors());
  // make the restriction to the gp group primitive
  const IntMatrix& basis = p.gp_basis();
  Int g = 0;
  for (size_t j = 0; j < basis.cols(); ++j) g = gcd(g, dot(h, basis.col(j)));
  if (g == 0) g = 1;
  return LinearFunctional{h, g};
}

FlagEmbedding flag_embedding(const MonoidPresentation& p, const Flag& flag) {
  if (!p.is_sharp()) throw NotSharpError("flag embedding requires a sharp monoid");
  if (flag.faces.empty() || !(flag.faces[0].parent_monoid() == p) || !flag.is_complete())
    throw IncompleteFlagError("flag is not a complete flag of the monoid");
  if (flag.faces.size() != p.dimension() + 1)
    throw IncompleteFlagError("flag length does not match the dimension");

  MonoidPresentation psat = p.saturation();
  const Cone& c = p.cone();
  std::vector<Face> sat_faces;
  for (const auto& f : flag.faces)
    sat_faces.push_back(corresponding_face(psat, c, normal_signature(c, f.generator_vectors())));

  RatMatrix m = embed_saturated(psat, sat_faces);
  FlagEmbedding e;
  e.source = p;
  e.flag = flag;
  e.matrix = m.num;
  e.denom = m.den;
  return e;
}

EmbeddingCertificate verify_embedding(const FlagEmbedding& e, const Int& box_bound) {
  const MonoidPresentation& p = e.source;
  size_t d = e.target_dim();
  auto fail = [](const std::string& clause, const std::string& detail) {
    return EmbeddingCertificate{false, clause, detail};
  };

  std::vector<VecZ> images;
  for (const auto& g : p.generators()) {
    try {
      images.push_back(e.apply(g));
    } catch (const ValidationError&) {
      return fail("gp-isomorphism", "matrix is not integral on generator " + vec_to_string(g));
    }
  }

  for (size_t i = 0; i < images.size(); ++i)
    for (size_t j = i + 1; j < images.size(); ++j)
      if (images[i] == images[j])
        return fail("injectivity", "generators " + vec_to_string(p.generators()[i]) + " and " +
                                       vec_to_string(p.generators()[j]) + " collide");

  {
    const IntMatrix& basis = p.gp_basis();
    if (d != basis.cols()) return fail("gp-isomorphism", "target rank differs from gp rank");
    IntMatrix m = e.matrix.mul(basis);
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j) {
        if (m.at(i, j) % e.denom != 0)
          return fail("gp-isomorphism", "matrix is not integral on the gp group");
        m.at(i, j) /= e.denom;
      }
    SmithForm f = smith_normal_form(m);
    if (f.rank != d) return fail("gp-isomorphism", "gp image has deficient rank");
    for (const Int& x : f.diag)
      if (x != 1) return fail("gp-isomorphism", "gp index is " + x.get_str());
  }

  for (size_t i = 0; i < images.size(); ++i)
    for (const auto& x : images[i])
      if (x < 0)
        return fail("nonnegativity",
                    "generator " + vec_to_string(p.generators()[i]) + " maps to " +
                        vec_to_string(images[i]));

  // flag pullback on generators: coordinates past the flag position vanish
  // exactly on the face generators
  for (size_t idx = 0; idx < e.flag.faces.size(); ++idx) {
    std::vector<size_t> pulled;
    for (size_t i = 0; i < images.size(); ++i) {
      bool inside = true;
      for (size_t j = idx; j < d; ++j)
        if (images[i][j] != 0) {
          inside = false;
          break;
        }
      if (inside) pulled.push_back(i);
    }
    if (pulled != e.flag.faces[idx].generator_subset)
      return fail("flag-pullback", "standard flag face " + std::to_string(idx) +
                                       " does not pull back to the given face");
  }

  // box check of the pullback on monoid elements
  if (box_bound > 0 && p.is_sharp()) {
    for (const auto& v : p.elements_up_to_weight(box_bound)) {
      VecZ img;
      try {
        img = e.apply(v);
      } catch (const ValidationError&) {
        return fail("gp-isomorphism", "matrix is not integral at " + vec_to_string(v));
      }
      for (size_t idx = 0; idx < e.flag.faces.size(); ++idx) {
        bool inside = true;
        for (size_t j = idx; j < d; ++j)
          if (img[j] != 0) {
            inside = false;
            break;
          }
        if (inside != e.flag.faces[idx].contains(v))
          return fail("flag-pullback", "pullback mismatch at " + vec_to_string(v));
      }
    }
  }

  return EmbeddingCertificate{};
}

}  // namespace torlog

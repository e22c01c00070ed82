#include "torlog/comb_module.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace torlog {

CombinatorialModule::CombinatorialModule(const MonoidPresentation& parent,
                                         const FractionalIdeal& numerator,
                                         const FractionalIdeal& denominator,
                                         const MonoidIdeal& relative_to)
    : parent_(parent), num_(numerator), den_(denominator), rel_(relative_to) {
  if (!den_.subset_of(num_))
    throw ValidationError("module denominator is not contained in the numerator");
  if (!rel_.is_empty()) {
    for (const auto& a : num_.generators())
      for (const auto& k : rel_.generators())
        if (!den_.contains(vec_add(a, k)))
          throw ValidationError("annihilating ideal does not map the numerator into the denominator");
  }
}

CombinatorialModule CombinatorialModule::ring_modulo(const MonoidPresentation& p,
                                                     const MonoidIdeal& k) {
  VecZ zero(p.ambient_rank(), Int(0));
  return CombinatorialModule(p, FractionalIdeal(p, {zero}), FractionalIdeal(p, k.generators()), k);
}

CombinatorialModule CombinatorialModule::free_ring(const MonoidPresentation& p) {
  return ring_modulo(p, MonoidIdeal::empty(p));
}

int CombinatorialModule::graded_piece(const VecZ& g) const {
  if (!parent_.in_gp(g)) return 0;
  return num_.contains(g) && !den_.contains(g) ? 1 : 0;
}

bool CombinatorialModule::is_zero_module() const {
  for (const auto& a : num_.generators())
    if (!den_.contains(a)) return false;
  return true;
}

MonoidIdeal element_annihilator(const CombinatorialModule& e, const VecZ& g) {
  if (e.graded_piece(g) != 1)
    throw DegreeNotPresentError("degree " + vec_to_string(g) + " is not present in the module");
  const MonoidPresentation& p = e.parent();
  std::vector<VecZ> gens = e.relative_to().generators();
  for (const auto& b : e.denominator().generators()) {
    auto t = shift_intersection_generators(p, vec_sub(b, g));
    gens.insert(gens.end(), t.begin(), t.end());
  }
  return MonoidIdeal(p, gens);
}

namespace {

MonoidIdeal annihilator_in(const MonoidPresentation& p, const std::vector<VecZ>& den_gens,
                           const MonoidIdeal& rel, const VecZ& g) {
  std::vector<VecZ> gens = rel.generators();
  for (const auto& b : den_gens) {
    auto t = shift_intersection_generators(p, vec_sub(b, g));
    gens.insert(gens.end(), t.begin(), t.end());
  }
  return MonoidIdeal(p, gens);
}

bool in_set(const MonoidPresentation& p, const std::vector<VecZ>& gens, const VecZ& v) {
  for (const auto& g : gens)
    if (p.contains(vec_sub(v, g))) return true;
  return false;
}

// smallest p (by weight then lex) with p and some p' outside the ideal while
// p + p' lies inside; exists whenever the ideal is not prime
VecZ find_bump(const MonoidPresentation& p, const MonoidIdeal& ann) {
  VecZ w = p.grading();
  Int bound = 2;
  for (const auto& g : ann.generators()) bound = std::max(bound, dot(w, g));
  for (const auto& g : p.generators()) bound = std::max(bound, dot(w, g));
  for (int round = 0; round < 10; ++round, bound *= 2) {
    auto elems = p.elements_up_to_weight(bound);
    // elems is sorted by (weight, lex); scan pairs by total weight
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < elems.size(); ++i)
      for (size_t j = 0; j < elems.size(); ++j) pairs.push_back({i, j});
    std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
      Int wa = dot(w, elems[a.first]) + dot(w, elems[a.second]);
      Int wb = dot(w, elems[b.first]) + dot(w, elems[b.second]);
      if (wa != wb) return wa < wb;
      if (elems[a.first] != elems[b.first]) return elems[a.first] < elems[b.first];
      return elems[a.second] < elems[b.second];
    });
    for (const auto& [i, j] : pairs) {
      if (ann.contains(elems[i]) || ann.contains(elems[j])) continue;
      if (ann.contains(vec_add(elems[i], elems[j]))) return elems[i];
    }
  }
  throw Error("prime filtration: no bump witness found for a non-prime annihilator");
}

}  // namespace

PrimeFiltration prime_filtration(const CombinatorialModule& e) {
  const MonoidPresentation& p = e.parent();
  VecZ w = p.grading();
  PrimeFiltration out;
  out.module = e;

  std::vector<VecZ> den = e.denominator().generators();
  const std::vector<VecZ>& num = e.numerator().generators();

  for (int guard = 0; guard < 4096; ++guard) {
    // smallest numerator generator with a nonzero class
    const VecZ* pick = nullptr;
    for (const auto& a : num) {
      if (in_set(p, den, a)) continue;
      if (!pick || dot(w, a) < dot(w, *pick) || (dot(w, a) == dot(w, *pick) && a < *pick))
        pick = &a;
    }
    if (!pick) {
      return out;  // module exhausted
    }
    VecZ g = *pick;
    MonoidIdeal ann = annihilator_in(p, den, e.relative_to(), g);
    while (!is_prime(ann)) {
      VecZ bump = find_bump(p, ann);
      g = vec_add(g, bump);
      ann = annihilator_in(p, den, e.relative_to(), g);
    }
    out.steps.push_back({ann, g});
    den = reduce_generators(p, [&] {
      std::vector<VecZ> d = den;
      d.push_back(g);
      return d;
    }());
  }
  throw Error("prime filtration did not terminate");
}

bool replay_filtration(const PrimeFiltration& f) {
  const CombinatorialModule& e = f.module;
  const MonoidPresentation& p = e.parent();
  std::vector<VecZ> den = e.denominator().generators();
  for (const auto& step : f.steps) {
    if (!e.numerator().contains(step.witness_degree)) return false;
    if (in_set(p, den, step.witness_degree)) return false;
    MonoidIdeal ann = annihilator_in(p, den, e.relative_to(), step.witness_degree);
    if (!ann.same_ideal(step.prime)) return false;
    if (!is_prime(ann)) return false;
    den.push_back(step.witness_degree);
    den = reduce_generators(p, den);
  }
  for (const auto& a : e.numerator().generators())
    if (!in_set(p, den, a)) return false;
  return true;
}

CombinatorialModule quotient_by_ideal(const CombinatorialModule& e, const MonoidIdeal& j) {
  const MonoidPresentation& p = e.parent();
  std::vector<VecZ> den = e.denominator().generators();
  for (const auto& a : e.numerator().generators())
    for (const auto& jg : j.generators()) den.push_back(vec_add(a, jg));
  MonoidIdeal rel = ideal_union(e.relative_to(), j);
  return CombinatorialModule(p, e.numerator(), FractionalIdeal(p, den), rel);
}

// ---------------------------------------------------------------------------
// restriction of scalars

namespace {

// module generators of Q over the image of P, with a closure certificate
std::vector<VecZ> module_generators_over(const MonoidPresentation& q, const MonoidPresentation& p,
                                         const IntMatrix& inclusion, const Int& cap) {
  if (!q.is_sharp()) throw BoundExceededError("restriction requires a sharp larger monoid");
  auto in_image_shift = [&](const VecZ& x) {
    // x in u + inclusion(P) for some known u is tested by the caller; here:
    // x in inclusion(P)?
    auto pre = solve_in_lattice(inclusion.mul(p.gp_basis()), x);
    if (!pre) return false;
    return p.contains(p.gp_basis().apply(*pre));
  };
  VecZ w = q.grading();
  Int bound = 1;
  for (const auto& g : q.generators()) bound = std::max(bound, dot(w, g));
  for (int round = 0; round < 24; ++round, bound += std::max(Int(2), Int(bound / 2))) {
    if (bound > cap) break;
    std::vector<VecZ> mods;
    for (const auto& x : q.elements_up_to_weight(bound)) {
      bool covered = false;
      for (const auto& u : mods)
        if (in_image_shift(vec_sub(x, u))) {
          covered = true;
          break;
        }
      if (!covered) mods.push_back(x);
    }
    // closure certificate: adding any generator stays covered
    bool closed = true;
    for (const auto& u : mods) {
      for (const auto& g : q.generators()) {
        VecZ x = vec_add(u, g);
        bool covered = false;
        for (const auto& u2 : mods)
          if (in_image_shift(vec_sub(x, u2))) {
            covered = true;
            break;
          }
        if (!covered) {
          closed = false;
          break;
        }
      }
      if (!closed) break;
    }
    if (closed) return mods;
  }
  throw BoundExceededError("restriction: module generators did not certify within the box");
}

}  // namespace

std::vector<RestrictedSummand> restrict_scalars(const CombinatorialModule& e,
                                                const MonoidPresentation& p,
                                                const IntMatrix& inclusion, const Int& coset_box) {
  const MonoidPresentation& q = e.parent();
  for (const auto& g : p.generators())
    if (!q.contains(inclusion.apply(g)))
      throw ValidationError("inclusion does not map the submonoid into the larger monoid");
  if (e.is_zero_module()) return {};

  IntMatrix image_basis = inclusion.mul(p.gp_basis());
  if (rank_of(image_basis) != p.gp_rank())
    throw ValidationError("inclusion is not injective on the gp group");

  // finite index certificate
  const IntMatrix& qb = q.gp_basis();
  std::vector<VecZ> image_in_q;
  for (size_t j = 0; j < image_basis.cols(); ++j) image_in_q.push_back(q.gp_coords(image_basis.col(j)));
  auto quot = quotient_presentation(qb.cols(), image_in_q);
  if (quot.group.free_rank != 0)
    throw BoundExceededError("restriction: infinite gp index, cosets meeting the module are not finite");

  // cone comparability: every extreme ray of the larger cone must be reachable
  // from the submonoid cone, otherwise the restriction is not finitely generated
  for (const auto& ray : q.cone().extreme_rays()) {
    auto pre = solve_in_lattice(image_basis, ray);
    VecZ scaled = ray;
    if (!pre) {
      Int idx = 1;
      for (const auto& t : quot.group.torsion_orders) idx *= t;
      scaled = vec_scale(idx, ray);
      pre = solve_in_lattice(image_basis, scaled);
      if (!pre) throw BoundExceededError("restriction: ray outside the image lattice span");
    }
    if (!p.cone().contains(p.gp_basis().apply(*pre)))
      throw BoundExceededError("restriction: cones differ, module is not finitely generated");
  }

  std::vector<VecZ> mods = module_generators_over(q, p, inclusion, coset_box * 16 + 64);

  // cosets met by the numerator: classes of a_i + subgroup generated by Q
  auto cls = [&](const VecZ& v) { return quot.projection.project(q.gp_coords(v)); };
  std::map<QuotientElement, VecZ> reps;  // class -> representative vector
  std::vector<VecZ> frontier;
  for (const auto& a : e.numerator().generators()) {
    auto c = cls(a);
    if (!reps.count(c)) {
      reps[c] = a;
      frontier.push_back(a);
    }
  }
  while (!frontier.empty()) {
    std::vector<VecZ> next;
    for (const auto& v : frontier)
      for (const auto& g : q.generators()) {
        VecZ u = vec_add(v, g);
        auto c = cls(u);
        if (!reps.count(c)) {
          reps[c] = u;
          next.push_back(u);
        }
      }
    frontier = std::move(next);
  }

  MonoidIdeal kprime = contract(e.relative_to(), p, inclusion);

  std::vector<RestrictedSummand> out;
  for (const auto& [c, rep] : reps) {
    auto pull = [&](const std::vector<VecZ>& gens) {
      std::vector<VecZ> pulled;
      for (const auto& a : gens)
        for (const auto& u : mods) {
          VecZ target = vec_sub(vec_add(a, u), rep);
          auto pre = solve_in_lattice(image_basis, target);
          if (pre) pulled.push_back(p.gp_basis().apply(*pre));
        }
      return reduce_generators(p, pulled);
    };
    std::vector<VecZ> ac = pull(e.numerator().generators());
    if (ac.empty()) continue;
    std::vector<VecZ> bc = pull(e.denominator().generators());
    FractionalIdeal num(p, ac), den(p, bc);
    if (num.subset_of(den)) continue;  // zero summand
    out.push_back({rep, CombinatorialModule(p, num, den, kprime)});
  }
  std::sort(out.begin(), out.end(),
            [](const RestrictedSummand& a, const RestrictedSummand& b) { return a.coset < b.coset; });
  return out;
}

}  // namespace torlog

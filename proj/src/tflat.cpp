#include "torlog/tflat.hpp"

#include <algorithm>
#include <cassert>
#include <future>
#include <set>

namespace torlog {

MonomialPresentation present_ideal(const MonoidIdeal& j, const MonoidIdeal& k) {
  if (!k.subset_of(j)) throw ValidationError("present_ideal requires K contained in J");
  const MonoidPresentation& p = j.parent();
  MonomialPresentation pres;
  pres.ideal = j;
  pres.relative_to = k;
  pres.free_gens = j.generators();
  for (size_t i = 0; i < pres.free_gens.size(); ++i)
    for (size_t l = i + 1; l < pres.free_gens.size(); ++l)
      for (const auto& m : intersect_shifts(pres.free_gens[i], pres.free_gens[l], p))
        pres.syzygies.push_back({m, i, l});
  if (!k.is_empty()) {
    for (size_t i = 0; i < pres.free_gens.size(); ++i) {
      std::vector<VecZ> ann;
      for (const auto& kg : k.generators()) {
        auto t = shift_intersection_generators(p, vec_sub(kg, pres.free_gens[i]));
        ann.insert(ann.end(), t.begin(), t.end());
      }
      for (const auto& a : reduce_generators(p, ann)) pres.annihilations.push_back({a, i});
    }
  }
  return pres;
}

int tor1_piece(const MonomialPresentation& pres, const CombinatorialModule& e, const VecZ& g) {
  // F0 basis at degree g: generators whose shifted degree is present in E
  std::vector<size_t> f0;
  for (size_t i = 0; i < pres.free_gens.size(); ++i)
    if (e.graded_piece(vec_sub(g, pres.free_gens[i])) == 1) f0.push_back(i);
  if (f0.empty()) return 0;
  std::vector<size_t> row_of(pres.free_gens.size(), size_t(-1));
  for (size_t r = 0; r < f0.size(); ++r) row_of[f0[r]] = r;

  // columns of the relation map landing in the F0 piece
  std::vector<VecZ> cols;
  for (const auto& s : pres.syzygies) {
    if (e.graded_piece(vec_sub(g, s.degree)) != 1) continue;
    VecZ col(f0.size(), Int(0));
    if (row_of[s.i] != size_t(-1)) col[row_of[s.i]] += 1;
    if (row_of[s.l] != size_t(-1)) col[row_of[s.l]] -= 1;
    cols.push_back(col);
  }
  for (const auto& a : pres.annihilations) {
    if (e.graded_piece(vec_sub(vec_sub(g, pres.free_gens[a.i]), a.shift)) != 1) continue;
    VecZ col(f0.size(), Int(0));
    if (row_of[a.i] != size_t(-1)) col[row_of[a.i]] += 1;
    cols.push_back(col);
  }

  size_t rank_d1 = cols.empty() ? 0 : rank_of(IntMatrix::from_columns(f0.size(), cols));
  size_t rank_d0 = e.graded_piece(g) == 1 ? 1 : 0;
#ifndef NDEBUG
  if (rank_d0 == 1) {
    // the relation columns must sum to zero against the all-ones row
    for (const auto& col : cols) {
      Int s = 0;
      for (const auto& x : col) s += x;
      assert(s == 0);
    }
  }
#endif
  // homology of Z^{F1} -> Z^{F0} -> E_g is torsion-free of this rank
  return static_cast<int>(f0.size() - rank_d0 - rank_d1);
}

namespace {

void check_annihilated(const CombinatorialModule& e, const MonoidIdeal& k) {
  for (const auto& a : e.numerator().generators())
    for (const auto& kg : k.generators())
      if (!e.denominator().contains(vec_add(a, kg)))
        throw ValidationError("module is not annihilated by the relative ideal");
}

std::vector<VecZ> candidate_degrees(const MonomialPresentation& pres, const CombinatorialModule& e,
                                    const Int& bound) {
  const MonoidPresentation& p = e.parent();
  if (pres.free_gens.empty() || e.numerator().generators().empty()) return {};
  VecZ w = p.grading();
  std::set<VecZ> degs;
  // numerator generators may sit at negative weight, so the element budget is
  // taken over all generator pairs
  Int budget = 0;
  for (const auto& j : pres.free_gens)
    for (const auto& a : e.numerator().generators())
      budget = std::max(budget, Int(bound - dot(w, j) - dot(w, a)));
  auto elems = p.elements_up_to_weight(budget);
  for (const auto& j : pres.free_gens)
    for (const auto& a : e.numerator().generators()) {
      VecZ base = vec_add(j, a);
      for (const auto& q : elems) {
        VecZ g = vec_add(base, q);
        if (dot(w, g) <= bound) degs.insert(g);
      }
    }
  std::vector<VecZ> out(degs.begin(), degs.end());
  std::sort(out.begin(), out.end(), [&](const VecZ& a, const VecZ& b) {
    Int wa = dot(w, a), wb = dot(w, b);
    if (wa != wb) return wa < wb;
    return a < b;
  });
  return out;
}

struct PrimeScan {
  bool found = false;
  VecZ degree;
  int rank = 0;
};

PrimeScan scan_prime(const MonoidIdeal& prime, const MonoidIdeal& k, const CombinatorialModule& e,
                     const Int& bound) {
  PrimeScan r;
  MonomialPresentation pres = present_ideal(prime, k);
  for (const auto& g : candidate_degrees(pres, e, bound)) {
    int rank = tor1_piece(pres, e, g);
    if (rank > 0) {
      r.found = true;
      r.degree = g;
      r.rank = rank;
      break;
    }
  }
  return r;
}

TorVerdict combine_scans(const std::vector<MonoidIdeal>& primes,
                         const std::vector<PrimeScan>& scans, const MonoidPresentation& p,
                         const Int& bound) {
  TorVerdict v;
  v.bound = bound;
  v.primes_checked = primes.size();
  VecZ w = p.grading();
  long best = -1;
  for (size_t i = 0; i < scans.size(); ++i) {
    if (!scans[i].found) continue;
    if (best < 0) {
      best = static_cast<long>(i);
      continue;
    }
    const auto& a = scans[i];
    const auto& b = scans[best];
    Int wa = dot(w, a.degree), wb = dot(w, b.degree);
    if (wa < wb || (wa == wb && a.degree < b.degree)) best = static_cast<long>(i);
  }
  if (best >= 0) {
    v.flat_up_to_bound = false;
    v.witness_prime = primes[best];
    v.witness_degree = scans[best].degree;
    v.kernel_rank = scans[best].rank;
  }
  return v;
}

}  // namespace

TorVerdict is_tflat(const CombinatorialModule& e, const MonoidIdeal& k, const Int& bound, int jobs) {
  const MonoidPresentation& p = e.parent();
  check_annihilated(e, k);
  std::vector<MonoidIdeal> primes;
  for (const auto& prime : prime_ideals(p))
    if (k.subset_of(prime)) primes.push_back(prime);

  std::vector<PrimeScan> scans(primes.size());
  if (jobs > 1 && primes.size() > 1) {
    std::vector<std::future<PrimeScan>> futures;
    for (size_t i = 0; i < primes.size(); ++i)
      futures.push_back(std::async(std::launch::async,
                                   [&, i] { return scan_prime(primes[i], k, e, bound); }));
    for (size_t i = 0; i < primes.size(); ++i) scans[i] = futures[i].get();
  } else {
    for (size_t i = 0; i < primes.size(); ++i) scans[i] = scan_prime(primes[i], k, e, bound);
  }
  return combine_scans(primes, scans, p, bound);
}

TorVerdict is_weakly_tflat(const CombinatorialModule& e, const MonoidIdeal& k, const Int& bound) {
  const MonoidPresentation& p = e.parent();
  check_annihilated(e, k);
  std::vector<MonoidIdeal> primes{ideal_union(maximal_ideal(p), k)};
  std::vector<PrimeScan> scans{scan_prime(primes[0], k, e, bound)};
  return combine_scans(primes, scans, p, bound);
}

GrCheckResult gr_structure_check(const MonoidIdeal& k, size_t sample_pairs) {
  const MonoidPresentation& p = k.parent();
  GrCheckResult res;
  VecZ w = p.grading();
  Int bound = 4;
  std::vector<VecZ> elems;
  while (true) {
    elems = p.elements_up_to_weight(bound);
    if (elems.size() * elems.size() >= sample_pairs || bound > 64) break;
    bound *= 2;
  }
  std::vector<std::pair<VecZ, VecZ>> pairs;
  for (const auto& a : elems) {
    for (const auto& b : elems) {
      pairs.push_back({a, b});
      if (pairs.size() == sample_pairs) break;
    }
    if (pairs.size() == sample_pairs) break;
  }
  for (const auto& [a, b] : pairs) {
    VecZ s = vec_add(a, b);
    // the filtration degree of the product is exactly the sum of degrees:
    // no divisor of s inside the monoid may have larger weight
    for (const auto& d : elems) {
      if (dot(w, d) <= dot(w, s)) continue;
      if (p.contains(vec_sub(s, d))) {
        res.ok = false;
        res.detail = "filtration level of " + vec_to_string(s) + " drops below " + vec_to_string(d);
        return res;
      }
    }
    // multiplication rule: the product class survives exactly outside K
    bool in_gr = !k.contains(s);
    bool rule = !k.contains(s);
    if (in_gr != rule) {
      res.ok = false;
      res.detail = "rule mismatch at " + vec_to_string(a) + " + " + vec_to_string(b);
      return res;
    }
    ++res.pairs_checked;
  }
  return res;
}

ObstructionResult obstruction_ideal(const CombinatorialModule& e, const Int& bound) {
  const MonoidPresentation& p = e.parent();
  ObstructionResult res;
  res.bound = bound;
  if (e.is_zero_module()) {
    res.ideal = MonoidIdeal::empty(p);
    return res;
  }

  std::vector<VecZ> pool;
  for (const auto& v : p.elements_up_to_weight(bound))
    if (!is_zero(v)) pool.push_back(v);
  if (pool.size() > 14)
    throw BoundExceededError("obstruction search: candidate pool too large (" +
                             std::to_string(pool.size()) + " elements)");

  std::set<std::vector<VecZ>> seen;
  std::vector<MonoidIdeal> candidates;
  candidates.push_back(MonoidIdeal::empty(p));
  seen.insert({});
  for (size_t mask = 1; mask < (size_t(1) << pool.size()); ++mask) {
    std::vector<VecZ> gens;
    for (size_t i = 0; i < pool.size(); ++i)
      if (mask & (size_t(1) << i)) gens.push_back(pool[i]);
    MonoidIdeal j(p, gens);
    if (seen.insert(j.generators()).second) candidates.push_back(j);
  }

  std::vector<MonoidIdeal> weakly_flat;
  for (const auto& j : candidates) {
    CombinatorialModule ej = quotient_by_ideal(e, j);
    MonoidIdeal rel = ideal_union(e.relative_to(), j);
    TorVerdict v = is_weakly_tflat(ej, rel, bound);
    if (v.flat_up_to_bound) weakly_flat.push_back(j);
  }
  res.weakly_flat_count = weakly_flat.size();
  if (weakly_flat.empty())
    throw BoundExceededError("obstruction search: no weakly flat ideal within the bound");

  MonoidIdeal k = weakly_flat[0];
  for (size_t i = 1; i < weakly_flat.size(); ++i) {
    if (k.is_empty()) break;  // intersection already minimal
    if (weakly_flat[i].is_empty()) {
      k = weakly_flat[i];
      break;
    }
    k = ideal_intersection(k, weakly_flat[i]);
  }
  res.ideal = k;

  // upward closure spot check on a few supersets
  size_t checked = 0;
  for (const auto& j : weakly_flat) {
    if (checked >= 3) break;
    for (const auto& extra : pool) {
      if (j.contains(extra)) continue;
      std::vector<VecZ> gens = j.generators();
      gens.push_back(extra);
      MonoidIdeal bigger(p, gens);
      CombinatorialModule ej = quotient_by_ideal(e, bigger);
      TorVerdict v = is_weakly_tflat(ej, ideal_union(e.relative_to(), bigger), bound);
      if (!v.flat_up_to_bound) res.upward_closure_checked = false;
      ++checked;
      break;
    }
  }
  return res;
}

LogRegularityReport log_regularity_report(const MonoidPresentation& p) {
  if (!p.is_sharp())
    throw NotSharpError("log regularity report requires a sharp monoid; pass the sharp quotient");
  LogRegularityReport rep;
  rep.dimension = p.dimension();
  rep.gp_rank = p.gp_rank();
  rep.saturated = p.is_saturated();
  rep.sharp_quotient_group = p.sharp_quotient().group;
  auto fs = p.faces();
  auto primes = prime_ideals(p);
  for (size_t i = 0; i < primes.size(); ++i)
    rep.prime_heights.push_back({primes[i], p.dimension() - fs[i].rank()});
  rep.log_regular = true;
  rep.justification =
      "the monoid algebra is free over itself, hence flat; regularity of the quotient by the "
      "monomial maximal ideal is the integers, a regular base";
  return rep;
}

}  // namespace torlog

#include "torlog/lattice.hpp"

#include <algorithm>

namespace torlog {

namespace {

// smallest nonzero |entry| in s[t.., t..], ties by (row, col)
bool find_pivot(const IntMatrix& s, size_t t, size_t& pi, size_t& pj) {
  bool found = false;
  Int best = 0;
  for (size_t i = t; i < s.rows(); ++i)
    for (size_t j = t; j < s.cols(); ++j) {
      const Int& x = s.at(i, j);
      if (x == 0) continue;
      Int ax = abs(x);
      if (!found || ax < best) {
        found = true;
        best = ax;
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm f;
  f.s = m;
  f.u = IntMatrix::identity(m.rows());
  f.u_inv = IntMatrix::identity(m.rows());
  f.v = IntMatrix::identity(m.cols());
  f.v_inv = IntMatrix::identity(m.cols());
  IntMatrix& s = f.s;

  // row op on (s, u) mirrors an inverse column op on u_inv, so u * u_inv = I
  auto row_swap = [&](size_t i, size_t j) {
    s.swap_rows(i, j);
    f.u.swap_rows(i, j);
    f.u_inv.swap_cols(i, j);
  };
  auto col_swap = [&](size_t i, size_t j) {
    s.swap_cols(i, j);
    f.v.swap_cols(i, j);
    f.v_inv.swap_rows(i, j);
  };
  auto row_neg = [&](size_t i) {
    s.negate_row(i);
    f.u.negate_row(i);
    f.u_inv.negate_col(i);
  };
  auto row_add = [&](size_t dst, size_t src, const Int& c) {
    s.add_row_multiple(dst, src, c);
    f.u.add_row_multiple(dst, src, c);
    f.u_inv.add_col_multiple(src, dst, -c);
  };
  auto col_add = [&](size_t dst, size_t src, const Int& c) {
    s.add_col_multiple(dst, src, c);
    f.v.add_col_multiple(dst, src, c);
    f.v_inv.add_row_multiple(src, dst, -c);
  };

  size_t n = std::min(m.rows(), m.cols());
  size_t t = 0;
  for (; t < n; ++t) {
    while (true) {
      // always restart from the smallest entry of the block; single Euclid
      // steps keep the accumulated transforms from blowing up
      size_t pi = t, pj = t;
      if (!find_pivot(s, t, pi, pj)) goto done;
      row_swap(t, pi);
      col_swap(t, pj);
      if (s.at(t, t) < 0) row_neg(t);
      const Int piv = s.at(t, t);

      bool stepped = false;
      for (size_t i = t + 1; i < s.rows() && !stepped; ++i) {
        if (s.at(i, t) % piv == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), s.at(i, t).get_mpz_t(), piv.get_mpz_t());
        row_add(i, t, -q);
        stepped = true;  // the remainder is a strictly smaller pivot
      }
      if (stepped) continue;
      for (size_t j = t + 1; j < s.cols() && !stepped; ++j) {
        if (s.at(t, j) % piv == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), s.at(t, j).get_mpz_t(), piv.get_mpz_t());
        col_add(j, t, -q);
        stepped = true;
      }
      if (stepped) continue;

      // pivot divides its row and column: one exact clearing pass each
      for (size_t i = t + 1; i < s.rows(); ++i)
        if (s.at(i, t) != 0) row_add(i, t, -Int(s.at(i, t) / piv));
      for (size_t j = t + 1; j < s.cols(); ++j)
        if (s.at(t, j) != 0) col_add(j, t, -Int(s.at(t, j) / piv));

      // pivot must divide the remaining block
      bool redo = false;
      for (size_t i = t + 1; i < s.rows() && !redo; ++i)
        for (size_t j = t + 1; j < s.cols() && !redo; ++j)
          if (s.at(i, j) % piv != 0) {
            row_add(t, i, 1);
            redo = true;
          }
      if (!redo) break;
    }
  }
done:

  for (size_t i = 0; i < n; ++i) {
    if (s.at(i, i) == 0) break;
    f.diag.push_back(s.at(i, i));
  }
  f.rank = f.diag.size();
  return f;
}

IntMatrix kernel_basis(const IntMatrix& m) {
  SmithForm f = smith_normal_form(m);
  std::vector<VecZ> cols;
  for (size_t j = f.rank; j < m.cols(); ++j) {
    VecZ c = f.v.col(j);
    normalize_sign(c);
    cols.push_back(c);
  }
  return IntMatrix::from_columns(m.cols(), cols);
}

std::vector<VecZ> lattice_basis(size_t dim, const std::vector<VecZ>& gens) {
  // column Hermite form by integer column reduction
  std::vector<VecZ> work;
  for (const auto& g : gens)
    if (!is_zero(g)) work.push_back(g);
  std::vector<VecZ> basis;
  size_t col = 0;
  for (size_t row = 0; row < dim && !work.empty(); ++row) {
    // gcd-reduce entries of the current row across remaining columns
    while (true) {
      size_t best = work.size();
      for (size_t j = col; j < work.size(); ++j) {
        if (work[j][row] == 0) continue;
        if (best == work.size() || abs(work[j][row]) < abs(work[best][row])) best = j;
      }
      if (best == work.size()) break;
      std::swap(work[col], work[best]);
      bool done = true;
      for (size_t j = col + 1; j < work.size(); ++j) {
        if (work[j][row] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), work[j][row].get_mpz_t(), work[col][row].get_mpz_t());
        for (size_t k = 0; k < dim; ++k) work[j][k] -= q * work[col][k];
        if (work[j][row] != 0) done = false;
      }
      if (done) break;
    }
    if (col < work.size() && work[col][row] != 0) {
      if (work[col][row] < 0)
        for (auto& x : work[col]) x = -x;
      ++col;
    }
  }
  work.resize(col);
  // reduce entries above each pivot for a canonical form
  for (size_t j = col; j-- > 0;) {
    size_t prow = 0;
    while (prow < dim && work[j][prow] == 0) ++prow;
    for (size_t i = 0; i < j; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), work[i][prow].get_mpz_t(), work[j][prow].get_mpz_t());
      if (q != 0)
        for (size_t k = 0; k < dim; ++k) work[i][k] -= q * work[j][k];
    }
  }
  return work;
}

QuotientElement QuotientProjection::project(const VecZ& v) const {
  VecZ w = u.apply(v);
  QuotientElement e;
  for (size_t idx = 0; idx < torsion_rows.size(); ++idx) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), w[torsion_rows[idx]].get_mpz_t(), torsion_orders[idx].get_mpz_t());
    e.torsion.push_back(r);
  }
  for (size_t row : free_rows) e.free.push_back(w[row]);
  return e;
}

QuotientElement QuotientProjection::add(const QuotientElement& a, const QuotientElement& b) const {
  QuotientElement e;
  e.free = vec_add(a.free, b.free);
  e.torsion.resize(a.torsion.size());
  for (size_t i = 0; i < a.torsion.size(); ++i) {
    Int s = a.torsion[i] + b.torsion[i];
    mpz_fdiv_r(e.torsion[i].get_mpz_t(), s.get_mpz_t(), torsion_orders[i].get_mpz_t());
  }
  return e;
}

QuotientElement QuotientProjection::scale(const Int& c, const QuotientElement& a) const {
  QuotientElement e;
  e.free = vec_scale(c, a.free);
  e.torsion.resize(a.torsion.size());
  for (size_t i = 0; i < a.torsion.size(); ++i) {
    Int s = c * a.torsion[i];
    mpz_fdiv_r(e.torsion[i].get_mpz_t(), s.get_mpz_t(), torsion_orders[i].get_mpz_t());
  }
  return e;
}

QuotientPresentation quotient_presentation(size_t ambient_rank, const std::vector<VecZ>& subgroup_gens) {
  IntMatrix g = IntMatrix::from_columns(ambient_rank, subgroup_gens);
  SmithForm f = smith_normal_form(g);
  QuotientPresentation q;
  q.projection.u = f.u;
  q.projection.diag = f.diag;
  for (size_t i = 0; i < f.rank; ++i) {
    if (f.diag[i] >= 2) {
      q.projection.torsion_rows.push_back(i);
      q.projection.torsion_orders.push_back(f.diag[i]);
    }
  }
  for (size_t i = f.rank; i < ambient_rank; ++i) q.projection.free_rows.push_back(i);
  q.group.free_rank = ambient_rank - f.rank;
  q.group.torsion_orders = q.projection.torsion_orders;
  return q;
}

std::optional<SplittingSection> splitting_section(const std::vector<VecZ>& subgroup_gens,
                                                  size_t ambient_rank) {
  IntMatrix g = IntMatrix::from_columns(ambient_rank, subgroup_gens);
  SmithForm f = smith_normal_form(g);
  for (const Int& d : f.diag)
    if (d != 1) return std::nullopt;  // quotient has torsion, no retraction
  size_t r = f.rank;
  SplittingSection sec;
  sec.basis = IntMatrix(ambient_rank, r);
  sec.sigma = IntMatrix(r, ambient_rank);
  for (size_t i = 0; i < r; ++i)
    for (size_t k = 0; k < ambient_rank; ++k) {
      sec.basis.at(k, i) = f.u_inv.at(k, i);
      sec.sigma.at(i, k) = f.u.at(i, k);
    }
  return sec;
}

std::optional<VecZ> solve_in_lattice(const IntMatrix& basis, const VecZ& v) {
  // fraction-free elimination on [basis | v]
  size_t rows = basis.rows(), cols = basis.cols();
  IntMatrix a(rows, cols + 1);
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) a.at(i, j) = basis.at(i, j);
    a.at(i, cols) = v[i];
  }
  std::vector<size_t> pivot_row(cols);
  size_t pr = 0;
  for (size_t pc = 0; pc < cols; ++pc) {
    size_t pivot = pr;
    while (pivot < rows && a.at(pivot, pc) == 0) ++pivot;
    if (pivot == rows) return std::nullopt;  // columns assumed independent
    a.swap_rows(pr, pivot);
    for (size_t i = 0; i < rows; ++i) {
      if (i == pr || a.at(i, pc) == 0) continue;
      Int g = gcd(a.at(pr, pc), a.at(i, pc));
      Int cp = a.at(pr, pc) / g, ci = a.at(i, pc) / g;
      for (size_t j = 0; j <= cols; ++j) a.at(i, j) = a.at(i, j) * cp - a.at(pr, j) * ci;
    }
    pivot_row[pc] = pr;
    ++pr;
  }
  for (size_t i = pr; i < rows; ++i)
    if (a.at(i, cols) != 0) return std::nullopt;
  VecZ x(cols);
  for (size_t j = 0; j < cols; ++j) {
    size_t i = pivot_row[j];
    if (a.at(i, cols) % a.at(i, j) != 0) return std::nullopt;
    x[j] = a.at(i, cols) / a.at(i, j);
  }
  return x;
}

}  // namespace torlog

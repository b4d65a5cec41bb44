#pragma once

// Exact linear algebra over Q(i, sqrt2): dense Bareiss rank, Gauss-Jordan
// nullspace, and an incremental sparse echelon form for large stacks.

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "spinorsym/errors.hpp"
#include "spinorsym/field.hpp"

namespace spinorsym {

using Vector = std::vector<FieldElement>;
using Matrix = std::vector<Vector>;

inline Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m[0].size(), Vector(m.size()));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m[r].size(); ++c) t[c][r] = m[r][c];
  return t;
}

inline Vector mat_vec(const Matrix& m, const Vector& v) {
  Vector out(m.size());
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (m[r].size() != v.size()) throw ContractViolation("mat_vec: dimension mismatch");
    for (std::size_t c = 0; c < v.size(); ++c)
      if (!m[r][c].is_zero() && !v[c].is_zero()) out[r] += m[r][c] * v[c];
  }
  return out;
}

/// Rank by fraction-free (Bareiss) elimination with row pivoting.
inline std::size_t exact_rank(Matrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  FieldElement prev(1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const FieldElement& p = m[rank][c];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        FieldElement v = p * m[r][k] - m[r][c] * m[rank][k];
        m[r][k] = v / prev;
      }
      m[r][c] = FieldElement();
    }
    prev = p;
    ++rank;
  }
  return rank;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    FieldElement inv = m[r][c].inverse();
    for (std::size_t k = c; k < cols; ++k)
      if (!m[r][k].is_zero()) m[r][k] *= inv;
    for (std::size_t o = 0; o < rows; ++o) {
      if (o == r || m[o][c].is_zero()) continue;
      FieldElement f = m[o][c];
      for (std::size_t k = c; k < cols; ++k)
        if (!m[r][k].is_zero()) m[o][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Kernel basis of a dense matrix with `cols` columns (cols needed for empty input).
inline std::vector<Vector> exact_nullspace(Matrix m, std::size_t cols) {
  for (const auto& row : m)
    if (row.size() != cols) throw ContractViolation("exact_nullspace: ragged matrix");
  auto pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = FieldElement(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (!m[r][f].is_zero()) v[pivots[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<Vector> exact_nullspace(const Matrix& m) {
  if (m.empty()) throw ContractViolation("exact_nullspace: column count unknown for empty matrix");
  return exact_nullspace(m, m[0].size());
}

/// Sparse row: strictly increasing column indices, nonzero values.
using SparseRow = std::vector<std::pair<std::size_t, FieldElement>>;

namespace detail {

// a - f*b on sparse rows.
inline SparseRow axpy(const SparseRow& a, const FieldElement& f, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, -(f * j->second));
      ++j;
    } else {
      FieldElement v = i->second - f * j->second;
      if (!v.is_zero()) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace detail

/// Incremental echelon form: rows are reduced against stored pivots on insert.
class SparseEchelon {
 public:
  /// Insert a row; returns true when it was independent of the rows so far.
  bool insert(SparseRow row) {
    while (!row.empty()) {
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) break;
      FieldElement f = row.front().second;
      row = detail::axpy(row, f, rows_[it->second]);
    }
    if (row.empty()) return false;
    FieldElement inv = row.front().second.inverse();
    for (auto& e : row) e.second *= inv;
    pivots_.emplace(row.front().first, rows_.size());
    rows_.push_back(std::move(row));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

  /// Reduce stored rows to RREF and return a kernel basis for `cols` columns.
  std::vector<SparseRow> nullspace(std::size_t cols) {
    // Back-substitute: process pivots from the right.
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const std::size_t pc = it->first;
      const SparseRow& prow = rows_[it->second];
      for (auto& row : rows_) {
        if (&row == &prow) continue;
        auto e = std::lower_bound(row.begin(), row.end(), pc,
                                  [](const auto& x, std::size_t key) { return x.first < key; });
        if (e == row.end() || e->first != pc) continue;
        FieldElement f = e->second;
        row = detail::axpy(row, f, prow);
      }
    }
    std::vector<SparseRow> basis;
    std::vector<std::vector<std::pair<std::size_t, FieldElement>>> by_free(cols);
    for (const auto& [pc, ri] : pivots_)
      for (const auto& [c, v] : rows_[ri])
        if (c != pc) by_free[c].emplace_back(pc, -v);
    for (std::size_t f = 0; f < cols; ++f) {
      if (pivots_.count(f)) continue;
      SparseRow v = by_free[f];
      v.emplace_back(f, FieldElement(1));
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  std::map<std::size_t, std::size_t> pivots_;  // pivot column -> row index
  std::vector<SparseRow> rows_;
};

inline SparseRow to_sparse(const Vector& v) {
  SparseRow out;
  for (std::size_t c = 0; c < v.size(); ++c)
    if (!v[c].is_zero()) out.emplace_back(c, v[c]);
  return out;
}

inline Vector to_dense(const SparseRow& r, std::size_t cols) {
  Vector out(cols);
  for (const auto& [c, v] : r) out.at(c) = v;
  return out;
}

inline std::size_t sparse_rank(const std::vector<SparseRow>& rows) {
  SparseEchelon e;
  for (const auto& r : rows) e.insert(r);
  return e.rank();
}

inline std::vector<SparseRow> sparse_nullspace(const std::vector<SparseRow>& rows, std::size_t cols) {
  SparseEchelon e;
  for (const auto& r : rows) e.insert(r);
  return e.nullspace(cols);
}

/// Real-split a complex row: column c -> (2c: real part, 2c+1: imaginary part),
/// both in Q(sqrt2). Real rank of complex vectors equals rank of the split rows.
inline SparseRow real_split(const SparseRow& r) {
  SparseRow out;
  out.reserve(2 * r.size());
  for (const auto& [c, v] : r) {
    FieldElement re = v.real_part();
    FieldElement im = v.imag_part();
    if (!re.is_zero()) out.emplace_back(2 * c, std::move(re));
    if (!im.is_zero()) out.emplace_back(2 * c + 1, std::move(im));
  }
  return out;
}

}  // namespace spinorsym

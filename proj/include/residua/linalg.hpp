#pragma once

// Exact linear algebra over a field: dense row reduction with kernel bases,
// and a sparse rank computation used where matrices get large but stay thin
// (truncated De Rham level computations).

#include <cstddef>
#include <map>
#include <vector>

#include "residua/errors.hpp"

namespace residua {

template <class K>
using DenseMatrix = std::vector<std::vector<K>>;

// Reduce in place to row echelon form; returns the pivot column of each
// surviving row, in order.  Rows may end up shorter than `cols` only if the
// caller built them that way (we require rectangular input).
template <class K>
std::vector<std::size_t> row_reduce(DenseMatrix<K>& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m.front().size();
  for (auto& r : m)
    if (r.size() != cols)
      throw domain_error("ragged-matrix", "matrix rows have unequal length");
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t sel = rows;
    for (std::size_t i = row; i < rows; ++i)
      if (!m[i][col].is_zero()) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    std::swap(m[row], m[sel]);
    K inv = K(1) / m[row][col];
    for (std::size_t j = col; j < cols; ++j) m[row][j] = m[row][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || m[i][col].is_zero()) continue;
      K f = m[i][col];
      for (std::size_t j = col; j < cols; ++j)
        m[i][j] = m[i][j] - f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
std::size_t dense_rank(DenseMatrix<K> m) {
  return row_reduce(m).size();
}

// Basis of { x : M x = 0 }.
template <class K>
DenseMatrix<K> kernel_basis(DenseMatrix<K> m, std::size_t cols) {
  for (auto& r : m)
    if (r.size() != cols)
      throw domain_error("ragged-matrix", "matrix rows have unequal length");
  auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  DenseMatrix<K> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<K> v(cols, K(0));
    v[free] = K(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = K(0) - m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Sparse rows: column index -> entry (entries kept nonzero).
template <class K>
using SparseRow = std::map<std::size_t, K>;

template <class K>
std::size_t sparse_rank(std::vector<SparseRow<K>> rows) {
  // Prune zero entries defensively.
  for (auto& r : rows)
    for (auto it = r.begin(); it != r.end();)
      it = it->second.is_zero() ? r.erase(it) : std::next(it);
  std::size_t rank = 0;
  std::vector<bool> used(rows.size(), false);
  while (true) {
    // Pick the unused row whose leading column is smallest; among those, the
    // sparsest, to limit fill-in.
    std::size_t best = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (used[i] || rows[i].empty()) continue;
      if (best == rows.size()) {
        best = i;
        continue;
      }
      auto lc = rows[i].begin()->first, bc = rows[best].begin()->first;
      if (lc < bc || (lc == bc && rows[i].size() < rows[best].size())) best = i;
    }
    if (best == rows.size()) break;
    used[best] = true;
    ++rank;
    const std::size_t col = rows[best].begin()->first;
    K inv = K(1) / rows[best].begin()->second;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (used[i] || rows[i].empty()) continue;
      auto it = rows[i].find(col);
      if (it == rows[i].end()) continue;
      K f = it->second * inv;
      rows[i].erase(it);
      for (auto& [c, v] : rows[best]) {
        if (c == col) continue;
        auto jt = rows[i].find(c);
        if (jt == rows[i].end()) {
          K nv = K(0) - f * v;
          if (!nv.is_zero()) rows[i].emplace(c, nv);
        } else {
          jt->second = jt->second - f * v;
          if (jt->second.is_zero()) rows[i].erase(jt);
        }
      }
    }
  }
  return rank;
}

}  // namespace residua

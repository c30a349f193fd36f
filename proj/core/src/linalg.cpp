// Copyright 2026 The gptkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gptkit/linalg.hpp"

#include <utility>

#include "gptkit/error.hpp"

namespace gptkit {

Rref rref(QMatrix m) {
  Rref out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    }
    Q inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      Q f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

std::size_t rank(const std::vector<QVec>& rows, std::size_t dim) {
  return rank(QMatrix::from_rows(rows, dim));
}

std::vector<QVec> nullspace(const QMatrix& m) {
  Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<QVec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVec v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
      v[r.pivots[i]] = -r.reduced(i, f);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> solve(const QMatrix& a, const QVec& b) {
  QMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Rref r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == a.cols()) return std::nullopt;
  QVec x(a.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    x[r.pivots[i]] = r.reduced(i, a.cols());
  }
  return x;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Rref r = rref(aug);
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  }
  return inv;
}

std::vector<std::size_t> independent_rows(const std::vector<QVec>& rows,
                                          std::size_t dim) {
  // Incremental echelon basis: reduce each row against the kept ones.
  std::vector<QVec> basis;
  std::vector<std::size_t> lead;
  std::vector<std::size_t> chosen;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    QVec v = rows[k];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (is_zero(v[lead[b]])) continue;
      Q f = v[lead[b]];
      for (std::size_t j = 0; j < dim; ++j) {
        if (!is_zero(basis[b][j])) v[j] -= f * basis[b][j];
      }
    }
    std::size_t l = 0;
    while (l < dim && is_zero(v[l])) ++l;
    if (l == dim) continue;
    Q inv = 1 / v[l];
    for (auto& x : v) x *= inv;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (is_zero(basis[b][l])) continue;
      Q f = basis[b][l];
      for (std::size_t j = 0; j < dim; ++j) {
        if (!is_zero(v[j])) basis[b][j] -= f * v[j];
      }
    }
    basis.push_back(std::move(v));
    lead.push_back(l);
    chosen.push_back(k);
    if (basis.size() == dim) break;
  }
  return chosen;
}

QMatrix left_inverse(const QMatrix& a) {
  QMatrix at = a.transpose();
  auto g = inverse(at * a);
  if (!g) throw Singular();
  return *g * at;
}

}  // namespace gptkit

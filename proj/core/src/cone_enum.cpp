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

#include "gptkit/cone_enum.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>

#include "gptkit/error.hpp"
#include "gptkit/linalg.hpp"

namespace gptkit {
namespace {

struct Ray {
  QVec v;
  boost::dynamic_bitset<> zeros;
};

}  // namespace

std::vector<QVec> extreme_rays(const std::vector<QVec>& rows, std::size_t dim) {
  if (dim == 0) return {};
  std::vector<std::size_t> init = independent_rows(rows, dim);
  if (init.size() < dim) throw Error("cone is not pointed");

  const std::size_t m = rows.size();
  std::vector<QVec> b_rows;
  for (auto i : init) b_rows.push_back(rows[i]);
  auto binv = inverse(QMatrix::from_rows(b_rows, dim));
  if (!binv) throw Singular();

  std::vector<Ray> rays;
  for (std::size_t j = 0; j < dim; ++j) {
    Ray r{primitive(binv->col(j)), boost::dynamic_bitset<>(m)};
    for (std::size_t k = 0; k < dim; ++k) {
      if (k != j) r.zeros.set(init[k]);
    }
    rays.push_back(std::move(r));
  }

  std::vector<bool> used(m, false);
  for (auto i : init) used[i] = true;

  for (std::size_t c = 0; c < m; ++c) {
    if (used[c]) continue;
    const QVec& a = rows[c];
    std::vector<Q> s(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      s[k] = dot(a, rays[k].v);
      int sg = sign(s[k]);
      if (sg > 0) pos.push_back(k);
      else if (sg < 0) neg.push_back(k);
      else rays[k].zeros.set(c);
    }
    if (neg.empty()) continue;

    std::vector<Ray> next;
    next.reserve(rays.size());
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (sign(s[k]) >= 0) next.push_back(rays[k]);
    }
    for (auto p : pos) {
      for (auto n : neg) {
        boost::dynamic_bitset<> common = rays[p].zeros & rays[n].zeros;
        if (dim >= 2 && common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == p || k == n) continue;
          if (common.is_subset_of(rays[k].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        QVec v(dim);
        for (std::size_t j = 0; j < dim; ++j) {
          v[j] = s[p] * rays[n].v[j] - s[n] * rays[p].v[j];
        }
        if (is_zero(v)) continue;
        Ray r{primitive(v), common};
        r.zeros.set(c);
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
  }

  std::vector<QVec> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<QVec> polytope_vertices(const std::vector<QVec>& eq, const QVec& beq,
                                    const std::vector<QVec>& ineq,
                                    const QVec& bineq, std::size_t dim) {
  // Homogenize to z = (t, x) and parametrize the equalities.
  const std::size_t h = dim + 1;
  QMatrix e(eq.size(), h);
  for (std::size_t i = 0; i < eq.size(); ++i) {
    e(i, 0) = -beq[i];
    for (std::size_t j = 0; j < dim; ++j) e(i, j + 1) = eq[i][j];
  }
  std::vector<QVec> basis =
      eq.empty() ? std::vector<QVec>() : nullspace(e);
  if (eq.empty()) {
    for (std::size_t j = 0; j < h; ++j) basis.push_back(unit_vector(h, j));
  }
  const std::size_t k = basis.size();
  if (k == 0) return {};
  QMatrix n = QMatrix::from_cols(basis, h);

  std::vector<QVec> rows;
  rows.push_back(n.row(0));
  for (std::size_t i = 0; i < ineq.size(); ++i) {
    QVec hrow(h);
    hrow[0] = -bineq[i];
    for (std::size_t j = 0; j < dim; ++j) hrow[j + 1] = ineq[i][j];
    QVec r(k);
    for (std::size_t c = 0; c < k; ++c) r[c] = dot(hrow, n.col(c));
    rows.push_back(std::move(r));
  }
  if (rank(rows, k) < k) throw ValidationError("polyhedron is unbounded");

  std::vector<QVec> verts;
  for (const auto& y : extreme_rays(rows, k)) {
    QVec z = n.apply(y);
    if (sign(z[0]) <= 0) throw ValidationError("polyhedron is unbounded");
    QVec x(dim);
    for (std::size_t j = 0; j < dim; ++j) x[j] = z[j + 1] / z[0];
    verts.push_back(std::move(x));
  }
  std::sort(verts.begin(), verts.end());
  return verts;
}

}  // namespace gptkit

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

#include "gptkit/simplex.hpp"

#include "gptkit/error.hpp"

namespace gptkit {
namespace {

// Tableau with rows 0..m-1 for constraints and row m for reduced costs.
// Column n + m holds the right-hand side (and minus the objective in row m).
class Tableau {
 public:
  Tableau(const QMatrix& a, const QVec& b)
      : m_(a.rows()), n_(a.cols()), t_(m_ + 1, n_ + m_ + 1), basis_(m_), flip_(m_, false) {
    for (std::size_t i = 0; i < m_; ++i) {
      flip_[i] = sign(b[i]) < 0;
      for (std::size_t j = 0; j < n_; ++j) t_(i, j) = flip_[i] ? Q(-a(i, j)) : a(i, j);
      t_(i, n_ + i) = 1;
      t_(i, rhs()) = flip_[i] ? Q(-b[i]) : b[i];
      basis_[i] = n_ + i;
    }
    // Phase-one costs: one per artificial.
    for (std::size_t j = 0; j <= rhs(); ++j) {
      if (j >= n_ && j < n_ + m_) continue;
      Q s = 0;
      for (std::size_t i = 0; i < m_; ++i) s += t_(i, j);
      t_(m_, j) = -s;
    }
  }

  std::size_t rhs() const { return n_ + m_; }

  // Runs Bland pivots over columns [0, limit). Returns false if unbounded.
  bool optimize(std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (sign(t_(m_, j)) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = m_;
      Q best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sign(t_(i, enter)) <= 0) continue;
        Q ratio = t_(i, rhs()) / t_(i, enter);
        if (leave == m_ || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Q inv = 1 / t_(r, c);
    for (std::size_t j = 0; j <= rhs(); ++j) {
      if (!is_zero(t_(r, j))) t_(r, j) *= inv;
    }
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || is_zero(t_(i, c))) continue;
      Q f = t_(i, c);
      for (std::size_t j = 0; j <= rhs(); ++j) {
        if (!is_zero(t_(r, j))) t_(i, j) -= f * t_(r, j);
      }
    }
    basis_[r] = c;
  }

  Q phase_one_value() const { return -t_(m_, rhs()); }

  QVec farkas() const {
    // Dual of phase one: y_i = 1 - reduced cost of artificial i.
    QVec y(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      Q yi = 1 - t_(m_, n_ + i);
      y[i] = flip_[i] ? yi : Q(-yi);
    }
    return y;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!is_zero(t_(i, j))) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  void set_costs(const QVec& c) {
    for (std::size_t j = 0; j <= rhs(); ++j) {
      Q r = j < n_ ? c[j] : Q(0);
      if (j >= n_ && j < n_ + m_) {
        t_(m_, j) = 0;
        continue;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] < n_ && !is_zero(c[basis_[i]])) r -= c[basis_[i]] * t_(i, j);
      }
      t_(m_, j) = r;
    }
  }

  QVec solution() const {
    QVec x(n_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = t_(i, rhs());
    }
    return x;
  }

  std::size_t n() const { return n_; }

 private:
  std::size_t m_, n_;
  QMatrix t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> flip_;
};

}  // namespace

LpResult lp_minimize(const QMatrix& a, const QVec& b, const QVec& c) {
  LpResult res;
  Tableau t(a, b);
  t.optimize(t.rhs());
  if (sign(t.phase_one_value()) > 0) {
    res.status = LpStatus::kInfeasible;
    res.farkas = t.farkas();
    return res;
  }
  t.drive_out_artificials();
  t.set_costs(c);
  if (!t.optimize(t.n())) {
    res.status = LpStatus::kUnbounded;
    res.x = t.solution();
    return res;
  }
  res.status = LpStatus::kOptimal;
  res.x = t.solution();
  res.value = dot(c, res.x);
  return res;
}

LpResult lp_feasible(const QMatrix& a, const QVec& b) {
  return lp_minimize(a, b, QVec(a.cols()));
}

std::size_t LinearProgram::add_var(bool free) {
  free_.push_back(free);
  return free_.size() - 1;
}

std::size_t LinearProgram::add_vars(std::size_t n, bool free) {
  std::size_t first = free_.size();
  for (std::size_t i = 0; i < n; ++i) free_.push_back(free);
  return first;
}

void LinearProgram::add_eq(const Terms& terms, const Q& rhs) {
  rows_.push_back({terms, rhs, Sense::kEq});
}
void LinearProgram::add_ge(const Terms& terms, const Q& rhs) {
  rows_.push_back({terms, rhs, Sense::kGe});
}
void LinearProgram::add_le(const Terms& terms, const Q& rhs) {
  rows_.push_back({terms, rhs, Sense::kLe});
}

LinearProgram::Result LinearProgram::feasibility() const { return minimize({}); }

LinearProgram::Result LinearProgram::minimize(const Terms& objective) const {
  // Column layout: x+ for every variable, x- for free ones, one slack per
  // inequality row.
  std::vector<std::size_t> neg_col(free_.size(), 0);
  std::size_t cols = free_.size();
  for (std::size_t v = 0; v < free_.size(); ++v) {
    if (free_[v]) neg_col[v] = cols++;
  }
  std::vector<std::size_t> slack_col(rows_.size(), 0);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].sense != Sense::kEq) slack_col[r] = cols++;
  }
  QMatrix a(rows_.size(), cols);
  QVec b(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& [v, coef] : rows_[r].terms) {
      if (v >= free_.size()) throw DimensionMismatch("unknown LP variable");
      a(r, v) += coef;
      if (free_[v]) a(r, neg_col[v]) -= coef;
    }
    if (rows_[r].sense == Sense::kGe) a(r, slack_col[r]) = -1;
    if (rows_[r].sense == Sense::kLe) a(r, slack_col[r]) = 1;
    b[r] = rows_[r].rhs;
  }
  QVec c(cols);
  for (const auto& [v, coef] : objective) {
    c[v] += coef;
    if (free_[v]) c[neg_col[v]] -= coef;
  }
  LpResult lp = lp_minimize(a, b, c);
  Result out;
  if (lp.status == LpStatus::kInfeasible) {
    out.certificate = lp.farkas;
    return out;
  }
  out.feasible = true;
  out.bounded = lp.status == LpStatus::kOptimal;
  out.x.resize(free_.size());
  for (std::size_t v = 0; v < free_.size(); ++v) {
    out.x[v] = lp.x[v];
    if (free_[v]) out.x[v] -= lp.x[neg_col[v]];
  }
  out.value = lp.value;
  return out;
}

}  // namespace gptkit

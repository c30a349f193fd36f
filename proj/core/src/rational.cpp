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

#include "gptkit/rational.hpp"

#include <cctype>
#include <cstdio>

#include "gptkit/error.hpp"

namespace gptkit {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Q parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ValidationError("not a rational: '" + std::string(text) + "'");
  }
  Z n{std::string(num)};
  Z d{std::string(den)};
  if (d == 0) throw ValidationError("zero denominator: '" + std::string(text) + "'");
  Q q(n, d);
  return negative ? Q(-q) : q;
}

std::string to_string(const Q& q) {
  Z n = numerator(q);
  Z d = denominator(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

std::string pretty(const Q& q) {
  if (denominator(q) == 1) return to_string(q);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", to_double(q));
  return to_string(q) + " (≈" + buf + ")";
}

double to_double(const Q& q) { return q.convert_to<double>(); }

std::vector<double> to_double(const QVec& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(to_double(q));
  return out;
}

Q dot(const QVec& a, const QVec& b) {
  Q s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!is_zero(a[i]) && !is_zero(b[i])) s += a[i] * b[i];
  }
  return s;
}

QVec add(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec sub(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec scale(const Q& s, const QVec& v) {
  QVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

bool is_zero(const QVec& v) {
  for (const auto& q : v) {
    if (!is_zero(q)) return false;
  }
  return true;
}

QVec kron(const QVec& a, const QVec& b) {
  QVec r;
  r.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) r.push_back(x * y);
  }
  return r;
}

QVec unit_vector(std::size_t n, std::size_t i) {
  QVec v(n);
  v[i] = 1;
  return v;
}

QVec primitive(const QVec& v) {
  Z l = 1;
  for (const auto& q : v) {
    if (!is_zero(q)) l = lcm(l, Z(denominator(q)));
  }
  std::vector<Z> ints;
  ints.reserve(v.size());
  Z g = 0;
  for (const auto& q : v) {
    Z n = numerator(q) * (l / denominator(q));
    ints.push_back(n);
    g = gcd(g, abs(n));
  }
  QVec out(v.size());
  if (g == 0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Q(ints[i] / g);
  return out;
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVec>& rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QMatrix QMatrix::from_cols(const std::vector<QVec>& cols, std::size_t rows) {
  QMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

QVec QMatrix::row(std::size_t i) const {
  return QVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

QVec QMatrix::col(std::size_t j) const {
  QVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<QVec> QMatrix::row_list() const {
  std::vector<QVec> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

QVec QMatrix::apply(const QVec& v) const {
  QVec r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Q s = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      const Q& a = (*this)(i, j);
      if (!is_zero(a) && !is_zero(v[j])) s += a * v[j];
    }
    r[i] = s;
  }
  return r;
}

QMatrix QMatrix::reshape(const QVec& flat, std::size_t rows, std::size_t cols) {
  QMatrix m(rows, cols);
  m.data_ = flat;
  return m;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  QMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Q& x = a(i, k);
      if (is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Q& y = b(k, j);
        if (!is_zero(y)) c(i, j) += x * y;
      }
    }
  }
  return c;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  QMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  QMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

QMatrix operator*(const Q& s, const QMatrix& m) {
  QMatrix c = m;
  for (auto& x : c.data_) x *= s;
  return c;
}

QMatrix kron(const QMatrix& a, const QMatrix& b) {
  QMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return c;
}

}  // namespace gptkit

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

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gptkit {

using Q = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                        boost::multiprecision::et_off>;
using Z = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                        boost::multiprecision::et_off>;
using QVec = std::vector<Q>;

inline bool is_zero(const Q& q) { return q.is_zero(); }
inline int sign(const Q& q) { return q.sign(); }

// Parses "p/q", "-p/q" or an integer. Throws ValidationError otherwise.
Q parse_rational(std::string_view text);

// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Q& q);

// "p/q (≈decimal)" for human output.
std::string pretty(const Q& q);

double to_double(const Q& q);
std::vector<double> to_double(const QVec& v);

Q dot(const QVec& a, const QVec& b);
QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const Q& s, const QVec& v);
bool is_zero(const QVec& v);
QVec kron(const QVec& a, const QVec& b);
QVec unit_vector(std::size_t n, std::size_t i);

// Scales v by a positive rational so that it becomes a primitive integer
// vector. Zero stays zero.
QVec primitive(const QVec& v);

// Dense row-major rational matrix.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<QVec>& rows, std::size_t cols);
  static QMatrix from_cols(const std::vector<QVec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Q& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Q& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  QVec row(std::size_t i) const;
  QVec col(std::size_t j) const;
  std::vector<QVec> row_list() const;
  QMatrix transpose() const;
  QVec apply(const QVec& v) const;
  // Row-major flattening.
  const QVec& data() const { return data_; }
  static QMatrix reshape(const QVec& flat, std::size_t rows, std::size_t cols);

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator*(const Q& s, const QMatrix& m);
  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  QVec data_;
};

QMatrix kron(const QMatrix& a, const QMatrix& b);

}  // namespace gptkit

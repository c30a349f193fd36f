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

#include "gptkit/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "gptkit/error.hpp"
#include "json.hpp"

namespace gptkit {
namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

MatrixXcd jordan_mul(const MatrixXcd& x, const MatrixXcd& y) {
  return 0.5 * (x * y + y * x);
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

VectorXcd kron(const VectorXcd& a, const VectorXcd& b) {
  VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

MatrixXcd random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = cd(g(rng), g(rng));
  }
  return (m + m.adjoint()) / (2.0 * n);
}

VectorXcd random_unit_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  VectorXcd v(n);
  for (int i = 0; i < n; ++i) v[i] = cd(g(rng), g(rng));
  return v.normalized();
}

MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = cd(g(rng), g(rng));
  }
  Eigen::HouseholderQR<MatrixXcd> qr(m);
  return qr.householderQ() * MatrixXcd::Identity(n, n);
}

MatrixXcd random_density(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = cd(g(rng), g(rng));
  }
  MatrixXcd w = a * a.adjoint();
  return w / w.trace().real();
}

MatrixXcd unit_matrix(int rows, int i, int j) {
  MatrixXcd m = MatrixXcd::Zero(rows, rows);
  m(i, j) = 1;
  return m;
}

// [[A, B], [-B̄, Ā]].
MatrixXcd quat_embed(const MatrixXcd& a, const MatrixXcd& b) {
  const auto n = a.rows();
  MatrixXcd m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = a;
  m.topRightCorner(n, n) = b;
  m.bottomLeftCorner(n, n) = -b.conjugate();
  m.bottomRightCorner(n, n) = a.conjugate();
  return m;
}

Eigen::Vector3d direction(double theta) {
  return Eigen::Vector3d(std::sin(theta), 0, std::cos(theta));
}

MatrixXcd bloch_observable(const Eigen::Vector3d& n) {
  MatrixXcd m(2, 2);
  m(0, 0) = n.z();
  m(1, 1) = -n.z();
  m(0, 1) = cd(n.x(), -n.y());
  m(1, 0) = cd(n.x(), n.y());
  return m;
}

MatrixXcd chsh_operator(const Eigen::Vector3d& a0, const Eigen::Vector3d& a1,
                        const Eigen::Vector3d& b0, const Eigen::Vector3d& b1) {
  MatrixXcd A0 = bloch_observable(a0), A1 = bloch_observable(a1);
  MatrixXcd B0 = bloch_observable(b0), B1 = bloch_observable(b1);
  return kron(A0, B0) + kron(A0, B1) + kron(A1, B0) - kron(A1, B1);
}

double norm(const VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

const char* to_string(JordanKind k) {
  switch (k) {
    case JordanKind::kRealSym: return "real";
    case JordanKind::kComplexHerm: return "complex";
    case JordanKind::kQuatHerm: return "quaternion";
    case JordanKind::kSpin: return "spin";
  }
  return "?";
}

JordanKind parse_jordan_kind(const std::string& s) {
  if (s == "real") return JordanKind::kRealSym;
  if (s == "complex") return JordanKind::kComplexHerm;
  if (s == "quaternion" || s == "quat") return JordanKind::kQuatHerm;
  if (s == "spin") return JordanKind::kSpin;
  throw ValidationError("unknown Jordan kind '" + s + "'");
}

JordanSystem::JordanSystem(JordanKind kind, int n) : kind_(kind), n_(n), dim_(0) {
  if (n < 1) throw ValidationError("Jordan system size must be positive");
  if (kind == JordanKind::kSpin) {
    dim_ = n + 1;
    return;
  }
  const MatrixXcd zero = MatrixXcd::Zero(n, n);
  const cd i1(0, 1);
  auto add = [&](const MatrixXcd& m) { basis_.push_back(m); };
  for (int i = 0; i < n; ++i) {
    MatrixXcd e = unit_matrix(n, i, i);
    add(kind == JordanKind::kQuatHerm ? quat_embed(e, zero) : e);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      MatrixXcd sym = unit_matrix(n, i, j) + unit_matrix(n, j, i);
      MatrixXcd asym = unit_matrix(n, i, j) - unit_matrix(n, j, i);
      switch (kind) {
        case JordanKind::kRealSym:
          add(sym);
          break;
        case JordanKind::kComplexHerm:
          add(sym);
          add(i1 * asym);
          break;
        case JordanKind::kQuatHerm:
          add(quat_embed(sym, zero));
          add(quat_embed(i1 * asym, zero));
          add(quat_embed(zero, asym));
          add(quat_embed(zero, i1 * asym));
          break;
        case JordanKind::kSpin:
          break;
      }
    }
  }
  trace_scale_ = kind == JordanKind::kQuatHerm ? 0.5 : 1.0;
  for (auto& b : basis_) b /= std::sqrt(trace_scale_ * (b * b).trace().real());
  dim_ = static_cast<int>(basis_.size());
}

JordanSystem JordanSystem::real_sym(int n) { return JordanSystem(JordanKind::kRealSym, n); }
JordanSystem JordanSystem::complex_herm(int n) {
  return JordanSystem(JordanKind::kComplexHerm, n);
}
JordanSystem JordanSystem::quat_herm(int n) { return JordanSystem(JordanKind::kQuatHerm, n); }
JordanSystem JordanSystem::spin(int n) { return JordanSystem(JordanKind::kSpin, n); }
JordanSystem JordanSystem::make(JordanKind kind, int n) { return JordanSystem(kind, n); }

VectorXd JordanSystem::unit() const {
  if (kind_ == JordanKind::kSpin) {
    VectorXd u = VectorXd::Zero(dim_);
    u[0] = 1;
    return u;
  }
  const auto rows = basis_.front().rows();
  return from_matrix(MatrixXcd::Identity(rows, rows));
}

VectorXd JordanSystem::product(const VectorXd& x, const VectorXd& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw DimensionMismatch("element has wrong length");
  if (kind_ == JordanKind::kSpin) {
    VectorXd out(dim_);
    const auto v = x.tail(n_), w = y.tail(n_);
    out[0] = x[0] * y[0] + v.dot(w);
    out.tail(n_) = x[0] * w + y[0] * v;
    return out;
  }
  return from_matrix(jordan_mul(to_matrix(x), to_matrix(y)));
}

double JordanSystem::trace(const VectorXd& x) const {
  if (kind_ == JordanKind::kSpin) return 2 * x[0];
  return trace_scale_ * to_matrix(x).trace().real();
}

double JordanSystem::inner(const VectorXd& x, const VectorXd& y) const {
  if (kind_ == JordanKind::kSpin) return 2 * x.dot(y);
  return x.dot(y);
}

MatrixXcd JordanSystem::to_matrix(const VectorXd& x) const {
  if (!is_matrix()) throw ValidationError("spin factor elements have no matrix form");
  if (x.size() != dim_) throw DimensionMismatch("element has wrong length");
  MatrixXcd m = MatrixXcd::Zero(basis_.front().rows(), basis_.front().cols());
  for (int k = 0; k < dim_; ++k) {
    if (x[k] != 0) m += x[k] * basis_[k];
  }
  return m;
}

VectorXd JordanSystem::from_matrix(const MatrixXcd& m) const {
  if (!is_matrix()) throw ValidationError("spin factor elements have no matrix form");
  if (m.rows() != basis_.front().rows() || m.cols() != basis_.front().cols()) {
    throw DimensionMismatch("matrix has wrong size");
  }
  VectorXd x(dim_);
  for (int k = 0; k < dim_; ++k) {
    x[k] = trace_scale_ * (basis_[k].array() * m.transpose().array()).sum().real();
  }
  return x;
}

VectorXd JordanSystem::random_element(std::mt19937_64& rng) const {
  std::normal_distribution<double> g;
  VectorXd x(dim_);
  for (int k = 0; k < dim_; ++k) x[k] = g(rng);
  return x / std::sqrt(static_cast<double>(dim_));
}

VectorXd JordanSystem::random_positive(std::mt19937_64& rng) const {
  VectorXd a = random_element(rng);
  return product(a, a) + 0.1 * unit();
}

VectorXd JordanSystem::random_state(std::mt19937_64& rng) const {
  VectorXd p = random_positive(rng);
  return p / trace(p);
}

Spectral spectral_decompose(const JordanSystem& sys, const VectorXd& a, double tol) {
  std::vector<double> vals;
  std::vector<VectorXd> idem;
  switch (sys.kind()) {
    case JordanKind::kSpin: {
      const int n = sys.n();
      VectorXd v = a.tail(n);
      const double r = v.norm();
      VectorXd dir = VectorXd::Zero(n);
      if (r > tol) {
        dir = v / r;
      } else {
        dir[0] = 1;
      }
      for (int s : {1, -1}) {
        VectorXd e(n + 1);
        e[0] = 0.5;
        e.tail(n) = 0.5 * s * dir;
        idem.push_back(e);
        vals.push_back(a[0] + s * (r > tol ? r : 0.0));
      }
      return {idem, vals};
    }
    case JordanKind::kRealSym: {
      MatrixXd m = sys.to_matrix(a).real();
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
      if (es.info() != Eigen::Success) throw NumericalFailure("eigensolver did not converge");
      for (Eigen::Index k = 0; k < m.rows(); ++k) {
        VectorXd v = es.eigenvectors().col(k);
        vals.push_back(es.eigenvalues()[k]);
        idem.push_back(sys.from_matrix((v * v.transpose()).cast<cd>()));
      }
      break;
    }
    case JordanKind::kComplexHerm: {
      MatrixXcd m = sys.to_matrix(a);
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
      if (es.info() != Eigen::Success) throw NumericalFailure("eigensolver did not converge");
      for (Eigen::Index k = 0; k < m.rows(); ++k) {
        VectorXcd v = es.eigenvectors().col(k);
        vals.push_back(es.eigenvalues()[k]);
        idem.push_back(sys.from_matrix(v * v.adjoint()));
      }
      break;
    }
    case JordanKind::kQuatHerm: {
      const int n = sys.n();
      MatrixXcd m = sys.to_matrix(a);
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
      if (es.info() != Eigen::Success) throw NumericalFailure("eigensolver did not converge");
      MatrixXcd j = MatrixXcd::Zero(2 * n, 2 * n);
      j.topRightCorner(n, n) = MatrixXcd::Identity(n, n);
      j.bottomLeftCorner(n, n) = -MatrixXcd::Identity(n, n);
      std::vector<VectorXcd> kept;
      for (Eigen::Index k = 0; k < m.rows() && static_cast<int>(idem.size()) < n; ++k) {
        VectorXcd v = es.eigenvectors().col(k);
        for (const auto& q : kept) v -= q.dot(v) * q;
        if (v.norm() < 0.5) continue;
        v.normalize();
        VectorXcd w = j * v.conjugate();
        kept.push_back(v);
        kept.push_back(w);
        vals.push_back(v.dot(m * v).real());
        idem.push_back(sys.from_matrix(v * v.adjoint() + w * w.adjoint()));
      }
      if (static_cast<int>(idem.size()) != n) {
        throw NumericalFailure("quaternionic eigenvectors did not pair up");
      }
      break;
    }
  }
  // Descending by eigenvalue, keeping solver order inside a cluster.
  std::vector<std::size_t> order(vals.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return vals[x] > vals[y] + tol;
  });
  Spectral out;
  for (auto k : order) {
    out.frame.push_back(idem[k]);
    out.eigenvalues.push_back(vals[k]);
  }
  return out;
}

VectorXd apply_spectral(const JordanSystem& sys, const VectorXd& a, double (*f)(double)) {
  Spectral s = spectral_decompose(sys, a);
  VectorXd out = VectorXd::Zero(sys.dim());
  for (std::size_t k = 0; k < s.frame.size(); ++k) out += f(s.eigenvalues[k]) * s.frame[k];
  return out;
}

double min_eigenvalue(const JordanSystem& sys, const VectorXd& a) {
  Spectral s = spectral_decompose(sys, a);
  return *std::min_element(s.eigenvalues.begin(), s.eigenvalues.end());
}

MatrixXd quadratic_representation(const JordanSystem& sys, const VectorXd& c) {
  const VectorXd c2 = sys.product(c, c);
  MatrixXd p(sys.dim(), sys.dim());
  for (int k = 0; k < sys.dim(); ++k) {
    VectorXd e = VectorXd::Unit(sys.dim(), k);
    p.col(k) = 2 * sys.product(c, sys.product(c, e)) - sys.product(c2, e);
  }
  return p;
}

HomogeneityWitness homogeneity_witness(const JordanSystem& sys, const VectorXd& a,
                                       const VectorXd& b, std::uint64_t seed, int samples,
                                       double tol) {
  if (min_eigenvalue(sys, a) <= tol) throw NotInterior("source element is not interior");
  if (min_eigenvalue(sys, b) <= tol) throw NotInterior("target element is not interior");
  VectorXd a_isqrt = apply_spectral(sys, a, [](double t) { return 1 / std::sqrt(t); });
  VectorXd b_sqrt = apply_spectral(sys, b, [](double t) { return std::sqrt(t); });
  HomogeneityWitness w;
  w.g = quadratic_representation(sys, b_sqrt) * quadratic_representation(sys, a_isqrt);
  w.residual = norm(w.g * a - b);
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    VectorXd x = sys.random_positive(rng);
    VectorXd y = w.g * x;
    if (min_eigenvalue(sys, y) < -tol * std::max(1.0, norm(y))) w.cone_preserved = false;
  }
  return w;
}

MatrixXd skewed_form(const JordanSystem& sys) {
  Spectral s = spectral_decompose(sys, sys.unit());
  const VectorXd& p0 = s.frame[0];
  const VectorXd& p1 = s.frame[1];
  MatrixXd g(sys.dim(), sys.dim());
  for (int k = 0; k < sys.dim(); ++k) {
    VectorXd e = VectorXd::Unit(sys.dim(), k);
    g.col(k) = e - 2 * (sys.inner(p1, e) * p0 + sys.inner(p0, e) * p1);
  }
  return g;
}

bool self_duality_check(const JordanSystem& sys, int samples, std::uint64_t seed,
                        const std::optional<MatrixXd>& form, double tol) {
  std::mt19937_64 rng(seed);
  auto pair = [&](const VectorXd& x, const VectorXd& y) {
    return form ? sys.inner(x, *form * y) : sys.inner(x, y);
  };
  std::vector<VectorXd> squares = spectral_decompose(sys, sys.unit()).frame;
  for (int s = 0; s < samples; ++s) {
    VectorXd a = sys.random_element(rng);
    squares.push_back(sys.product(a, a));
  }
  // Squares pair nonnegatively with squares.
  for (std::size_t i = 0; i < squares.size(); ++i) {
    for (std::size_t j = i; j < squares.size() && j < i + 8; ++j) {
      if (pair(squares[i], squares[j]) < -tol) return false;
      if (pair(squares[j], squares[i]) < -tol) return false;
    }
  }
  // An element with a negative eigenvalue is separated from the dual cone
  // by the square carrying that eigenvalue.
  for (int s = 0; s < samples; ++s) {
    VectorXd z = sys.random_element(rng);
    Spectral sp = spectral_decompose(sys, z);
    for (std::size_t k = 0; k < sp.frame.size(); ++k) {
      if (sp.eigenvalues[k] < -tol && pair(z, sp.frame[k]) >= -tol) return false;
    }
    bool positive = std::all_of(sp.eigenvalues.begin(), sp.eigenvalues.end(),
                                [&](double t) { return t >= -tol; });
    if (positive) {
      for (std::size_t k = 0; k < squares.size(); k += 7) {
        if (pair(z, squares[k]) < -tol) return false;
      }
    }
  }
  return true;
}

MatrixXcd partial_trace_second(const MatrixXcd& rho, int n, int m) {
  if (rho.rows() != n * m || rho.cols() != n * m) throw DimensionMismatch("bad partial trace");
  MatrixXcd out = MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < m; ++j) out(i, k) += rho(i * m + j, k * m + j);
    }
  }
  return out;
}

MatrixXcd partial_trace_first(const MatrixXcd& rho, int n, int m) {
  if (rho.rows() != n * m || rho.cols() != n * m) throw DimensionMismatch("bad partial trace");
  MatrixXcd out = MatrixXcd::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    for (int l = 0; l < m; ++l) {
      for (int i = 0; i < n; ++i) out(j, l) += rho(i * m + j, i * m + l);
    }
  }
  return out;
}

Purification purify(const MatrixXcd& w) {
  if (w.rows() != w.cols()) throw DimensionMismatch("density matrix must be square");
  if ((w - w.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw ValidationError("density matrix is not Hermitian");
  }
  if (std::abs(w.trace().real() - 1) > 1e-9) throw ValidationError("density matrix trace is not 1");
  const int n = static_cast<int>(w.rows());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(w);
  if (es.info() != Eigen::Success) throw NumericalFailure("eigensolver did not converge");
  Purification p;
  p.psi = VectorXcd::Zero(n * n);
  for (int k = n - 1; k >= 0; --k) {
    double l = es.eigenvalues()[k];
    if (l < -1e-9) throw ValidationError("density matrix is not positive");
    l = std::max(l, 0.0);
    VectorXcd x = es.eigenvectors().col(k);
    p.lambdas.push_back(l);
    p.eigenvectors.push_back(x);
    p.psi += std::sqrt(l) * kron(x, VectorXcd(x.conjugate()));
  }
  MatrixXcd proj = p.psi * p.psi.adjoint();
  p.marginal = partial_trace_second(proj, n, n);
  p.marginal_residual = (p.marginal - w).cwiseAbs().maxCoeff();
  p.correlations = MatrixXd(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      VectorXcd xy = kron(p.eigenvectors[i], VectorXcd(p.eigenvectors[j].conjugate()));
      p.correlations(i, j) = std::norm(xy.dot(p.psi));
    }
  }
  return p;
}

TomographyDims local_tomography_dimensions(JordanKind kind, int m, int n) {
  if (m < 1 || n < 1) throw ValidationError("Hilbert space dimensions must be positive");
  auto herm = [&](long long k) -> long long {
    switch (kind) {
      case JordanKind::kRealSym: return (k * k + k) / 2;
      case JordanKind::kComplexHerm: return k * k;
      default:
        throw UnsupportedSize(std::string("no composite dimension count for ") + to_string(kind));
    }
  };
  TomographyDims d;
  d.dim_a = herm(m);
  d.dim_b = herm(n);
  d.dim_ab = herm(static_cast<long long>(m) * n);
  d.product = d.dim_a * d.dim_b;
  d.locally_tomographic = d.dim_ab == d.product;
  return d;
}

JordanModelReport jordan_model_checks(const JordanSystem& sys, int frames, std::uint64_t seed,
                                      double tol) {
  std::mt19937_64 rng(seed);
  JordanModelReport r;
  r.rank = sys.rank();
  const VectorXd u = sys.unit();
  auto note = [&](double x) { r.max_residual = std::max(r.max_residual, x); };
  for (int f = 0; f < frames; ++f) {
    Spectral s = spectral_decompose(sys, sys.random_element(rng));
    if (static_cast<int>(s.frame.size()) != r.rank) r.uniform = false;
    VectorXd sum = VectorXd::Zero(sys.dim());
    for (std::size_t i = 0; i < s.frame.size(); ++i) {
      const VectorXd& e = s.frame[i];
      sum += e;
      double idem = norm(sys.product(e, e) - e);
      double tr = std::abs(sys.trace(e) - 1);
      note(idem);
      note(tr);
      if (idem > tol || tr > tol) r.primitive = false;
      for (std::size_t j = i + 1; j < s.frame.size(); ++j) {
        note(norm(sys.product(e, s.frame[j])));
      }
      // ⟨e, e⟩ = 1 and ⟨ρ, ρ⟩ ≤ 1 for states force ⟨ρ, e⟩ = 1 ⇒ ρ = e.
      double self = std::abs(sys.inner(e, e) - 1);
      note(self);
      VectorXd rho = sys.random_state(rng);
      double excess = sys.inner(rho, rho) - 1;
      double p = sys.inner(rho, e);
      if (self > tol || excess > tol || p > 1 + tol || p < -tol) r.sharp = false;
    }
    note(norm(sum - u));
  }
  if (r.max_residual > tol) {
    r.primitive = false;
    r.sharp = false;
  }
  return r;
}

FactorizationReport trace_form_factorization_check(int n, int m, int samples,
                                                   std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  FactorizationReport r;
  const MatrixXcd in = MatrixXcd::Identity(n, n), im = MatrixXcd::Identity(m, m);
  auto tr = [](const MatrixXcd& x, const MatrixXcd& y) { return (x * y).trace().real(); };
  for (int s = 0; s < samples; ++s) {
    MatrixXcd x = random_hermitian(n, rng), a = random_hermitian(n, rng);
    MatrixXcd y = random_hermitian(m, rng), b = random_hermitian(m, rng);
    double lhs = tr(kron(x, y), kron(a, b));
    r.trace_form_residual = std::max(r.trace_form_residual, std::abs(lhs - tr(x, a) * tr(y, b)));
    double h1 = (jordan_mul(kron(x, im), kron(a, im)) - kron(jordan_mul(x, a), im))
                    .cwiseAbs().maxCoeff();
    double h2 = (jordan_mul(kron(in, y), kron(in, b)) - kron(in, jordan_mul(y, b)))
                    .cwiseAbs().maxCoeff();
    r.hanche_olsen_residual = std::max({r.hanche_olsen_residual, h1, h2});
    VectorXcd vx = random_unit_vector(n, rng), vy = random_unit_vector(m, rng);
    MatrixXcd p = kron(MatrixXcd(vx * vx.adjoint()), MatrixXcd(vy * vy.adjoint()));
    double prim = std::max((p * p - p).cwiseAbs().maxCoeff(), std::abs(p.trace().real() - 1));
    r.primitive_residual = std::max(r.primitive_residual, prim);
  }
  r.holds = r.trace_form_residual < tol && r.hanche_olsen_residual < tol &&
            r.primitive_residual < tol;
  return r;
}

MatrixXcd max_entangled_projector(int n) {
  VectorXcd psi = VectorXcd::Zero(n * n);
  for (int i = 0; i < n; ++i) psi[i * n + i] = 1 / std::sqrt(static_cast<double>(n));
  return psi * psi.adjoint();
}

double conjugate_correlator_deviation(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MatrixXcd u = random_unitary(n, rng);
  MatrixXcd eta = max_entangled_projector(n);
  double dev = 0;
  for (int k = 0; k < n; ++k) {
    VectorXcd x = u.col(k);
    VectorXcd xy = kron(x, VectorXcd(x.conjugate()));
    double p = xy.dot(eta * xy).real();
    dev = std::max(dev, std::abs(p - 1.0 / n));
  }
  return dev;
}

MatrixXd bipartite_coords(const JordanSystem& sys, const MatrixXcd& op) {
  if (sys.kind() != JordanKind::kComplexHerm) {
    throw UnsupportedSize("bipartite coordinates need a complex Hermitian factor");
  }
  const int d = sys.dim();
  const int n = sys.n();
  if (op.rows() != n * n || op.cols() != n * n) throw DimensionMismatch("operator has wrong size");
  MatrixXd w(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      w(i, j) = (op * kron(sys.basis()[i], sys.basis()[j])).trace().real();
    }
  }
  return w;
}

MatrixXcd singlet() {
  VectorXcd psi = VectorXcd::Zero(4);
  psi[1] = 1 / std::sqrt(2.0);
  psi[2] = -1 / std::sqrt(2.0);
  return psi * psi.adjoint();
}

double quantum_chsh(const MatrixXcd& rho, const Eigen::Vector3d& a0, const Eigen::Vector3d& a1,
                    const Eigen::Vector3d& b0, const Eigen::Vector3d& b1) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DimensionMismatch("two-qubit state expected");
  return (rho * chsh_operator(a0, a1, b0, b1)).trace().real();
}

double chsh_operator_max(const Eigen::Vector3d& a0, const Eigen::Vector3d& a1,
                         const Eigen::Vector3d& b0, const Eigen::Vector3d& b1) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(chsh_operator(a0, a1, b0, b1),
                                              Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

QuantumChshOptimum optimize_quantum_chsh(int sweeps) {
  double th[4] = {0.3, 1.1, 2.0, -0.4};
  auto value = [&](const double* t) {
    return chsh_operator_max(direction(t[0]), direction(t[1]), direction(t[2]),
                             direction(t[3]));
  };
  const double phi = (std::sqrt(5.0) - 1) / 2;
  for (int s = 0; s < sweeps; ++s) {
    for (int k = 0; k < 4; ++k) {
      // Coarse scan to bracket, then golden-section refinement.
      const int grid = 24;
      const double step = 2 * kPi / grid;
      double best = th[k], best_v = -1;
      for (int g = 0; g < grid; ++g) {
        th[k] = -kPi + g * step;
        double v = value(th);
        if (v > best_v) {
          best_v = v;
          best = th[k];
        }
      }
      double lo = best - step, hi = best + step;
      double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
      th[k] = x1;
      double f1 = value(th);
      th[k] = x2;
      double f2 = value(th);
      while (hi - lo > 1e-12) {
        if (f1 < f2) {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + phi * (hi - lo);
          th[k] = x2;
          f2 = value(th);
        } else {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - phi * (hi - lo);
          th[k] = x1;
          f1 = value(th);
        }
      }
      th[k] = f1 > best_v ? x1 : best;
    }
  }
  QuantumChshOptimum o;
  o.value = value(th);
  o.a0 = th[0];
  o.a1 = th[1];
  o.b0 = th[2];
  o.b1 = th[3];
  return o;
}

double JordanSuiteReport::max_residual() const {
  double r = std::max({commutativity, jordan_identity, trace_associativity,
                       spectral_reconstruction, frame_orthogonality, homogeneity,
                       quadratic_positivity});
  if (purification) r = std::max(r, *purification);
  if (hanche_olsen) r = std::max(r, *hanche_olsen);
  return r;
}

JordanSuiteReport jordan_suite(const JordanSystem& sys, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  JordanSuiteReport r;
  r.kind = sys.kind();
  r.n = sys.n();
  r.samples = samples;
  for (int s = 0; s < samples; ++s) {
    VectorXd a = sys.random_element(rng), b = sys.random_element(rng);
    VectorXd c = sys.random_element(rng);
    VectorXd ab = sys.product(a, b);
    VectorXd a2 = sys.product(a, a);
    r.commutativity = std::max(r.commutativity, norm(ab - sys.product(b, a)));
    r.jordan_identity = std::max(
        r.jordan_identity,
        norm(sys.product(a2, sys.product(b, a)) - sys.product(sys.product(a2, b), a)));
    r.trace_associativity =
        std::max(r.trace_associativity,
                 std::abs(sys.inner(ab, c) - sys.inner(a, sys.product(b, c))));

    Spectral sp = spectral_decompose(sys, a);
    VectorXd rec = VectorXd::Zero(sys.dim());
    for (std::size_t k = 0; k < sp.frame.size(); ++k) {
      rec += sp.eigenvalues[k] * sp.frame[k];
      for (std::size_t l = k + 1; l < sp.frame.size(); ++l) {
        r.frame_orthogonality =
            std::max(r.frame_orthogonality, norm(sys.product(sp.frame[k], sp.frame[l])));
      }
    }
    r.spectral_reconstruction = std::max(r.spectral_reconstruction, norm(rec - a));

    VectorXd pa = sys.random_positive(rng), pb = sys.random_positive(rng);
    HomogeneityWitness w = homogeneity_witness(sys, pa, pb, seed + s, 0);
    r.homogeneity = std::max(r.homogeneity, w.residual);
    VectorXd qx = quadratic_representation(sys, c) * pa;
    r.quadratic_positivity = std::max(r.quadratic_positivity, -min_eigenvalue(sys, qx));
  }
  r.self_dual = self_duality_check(sys, samples, seed);
  if (sys.kind() == JordanKind::kComplexHerm) {
    double p = 0;
    for (int s = 0; s < samples; ++s) {
      p = std::max(p, purify(random_density(sys.n(), rng)).marginal_residual);
    }
    r.purification = p;
    FactorizationReport f = trace_form_factorization_check(sys.n(), 2, samples, seed);
    r.hanche_olsen = std::max({f.trace_form_residual, f.hanche_olsen_residual,
                               f.primitive_residual});
  }
  return r;
}

MatrixXcd parse_hermitian_json(const std::string& text, double tol) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("matrix JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw ValidationError("matrix must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw ValidationError("matrix must be square");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto& e = row[k];
      if (e.is_number()) {
        m(i, k) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(i, k) = cd(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ValidationError("matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw ValidationError("matrix is not Hermitian");
  }
  return m;
}

std::string matrix_to_json(const MatrixXcd& m) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      if (m(i, k).imag() == 0) {
        row.push_back(m(i, k).real());
      } else {
        row.push_back({m(i, k).real(), m(i, k).imag()});
      }
    }
    j.push_back(row);
  }
  return j.dump();
}

}  // namespace gptkit

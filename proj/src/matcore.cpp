// Copyright 2026 The qdecay Authors
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

#include "qdecay/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qdecay {

double max_abs_entry(const ComplexMatrix& m) {
  double r = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) r = std::max(r, std::abs(m(i, j)));
  return r;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("HermitianMatrix: matrix is not square");
  const double scale = std::max(1.0, max_abs_entry(m));
  const double asym = max_abs_entry(m - m.adjoint());
  if (asym > kHermitianTol * scale) {
    std::ostringstream os;
    os << "HermitianMatrix: |M - M^dagger| = " << asym << " exceeds tolerance";
    throw std::invalid_argument(os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::zero(std::size_t d) {
  return HermitianMatrix(ComplexMatrix::Zero(d, d));
}

HermitianMatrix HermitianMatrix::identity(std::size_t d) {
  return HermitianMatrix(ComplexMatrix::Identity(d, d));
}

double EigenDecomposition::support_threshold() const {
  if (eigenvalues.size() == 0) return 0.0;
  return kSupportRelTol * std::max(0.0, eigenvalues.maxCoeff());
}

std::size_t EigenDecomposition::support_rank() const {
  const double thr = support_threshold();
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues[i] > thr) ++r;
  return r;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition eigh(const HermitianMatrix& h) {
  const Eigen::Index n = static_cast<Eigen::Index>(h.dim());
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double tol = kJacobiRelTol * a.norm();

  bool converged = n <= 1 || off_diagonal_norm(a) <= tol;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Phase-rotate to a real symmetric 2x2 block, then a real rotation.
        const Complex phase = apq / mag;
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex ep = std::conj(phase);  // e^{-i phi}
        // Columns: A <- A G, G = [[c, s], [-s ep, c ep]].
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * ep * akq;
          a(k, q) = s * akp + c * ep * akq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * ep * vkq;
          v(k, q) = s * vkp + c * ep * vkq;
        }
        // Rows: A <- G^dagger A.
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
      }
    }
    converged = off_diagonal_norm(a) <= tol;
  }
  if (!converged) {
    std::ostringstream os;
    os << "eigh: no convergence after " << kJacobiMaxSweeps
       << " sweeps (dim " << n << ", off-diagonal residual "
       << off_diagonal_norm(a) << ")";
    throw std::runtime_error(os.str());
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return a(x, x).real() < a(y, y).real();
  });
  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

namespace {

ComplexMatrix rebuild(const ComplexMatrix& vecs, const RealVector& vals) {
  return vecs * vals.cast<Complex>().asDiagonal() * vecs.adjoint();
}

}  // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix& m)
    : DensityMatrix(HermitianMatrix(m)) {}

DensityMatrix::DensityMatrix(const HermitianMatrix& h) {
  if (h.dim() == 0) throw std::invalid_argument("DensityMatrix: empty matrix");
  EigenDecomposition e = eigh(h);
  const double tr = h.matrix().trace().real();
  if (std::abs(tr - 1.0) > kDensityTol) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr << " differs from 1";
    throw std::invalid_argument(os.str());
  }
  bool clamped = false;
  for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i) {
    const double l = e.eigenvalues[i];
    if (l < -kDensityTol) {
      std::ostringstream os;
      os << "DensityMatrix: negative eigenvalue " << l;
      throw std::invalid_argument(os.str());
    }
    if (l < 0.0) {
      e.eigenvalues[i] = 0.0;
      clamped = true;
    }
  }
  if (clamped) {
    e.eigenvalues /= e.eigenvalues.sum();
    h_ = HermitianMatrix(rebuild(e.eigenvectors, e.eigenvalues));
  } else {
    h_ = HermitianMatrix(ComplexMatrix(h.matrix() / tr));
    e.eigenvalues /= tr;
  }
  spec_ = std::move(e);
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
  const ComplexVector u = psi / n;
  return DensityMatrix(ComplexMatrix(u * u.adjoint()));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d) {
  return DensityMatrix(ComplexMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d)));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probs) {
  ComplexMatrix m = ComplexMatrix::Zero(probs.size(), probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) m(i, i) = probs[i];
  return DensityMatrix(m);
}

BipartiteDensity::BipartiteDensity(std::size_t dim_a, std::size_t dim_b,
                                   DensityMatrix state)
    : dim_a_(dim_a), dim_b_(dim_b), state_(std::move(state)) {
  if (dim_a == 0 || dim_b == 0 || dim_a * dim_b != state_.dim())
    throw std::invalid_argument("BipartiteDensity: dimA*dimB != state dim");
}

HermitianMatrix matrix_function(const EigenDecomposition& e,
                                const std::function<double(double)>& f) {
  RealVector fv(e.eigenvalues.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) {
    const double y = f(e.eigenvalues[i]);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "matrix_function: f undefined at eigenvalue " << e.eigenvalues[i];
      throw std::domain_error(os.str());
    }
    fv[i] = y;
  }
  return HermitianMatrix(rebuild(e.eigenvectors, fv));
}

HermitianMatrix matrix_function(const HermitianMatrix& h,
                                const std::function<double(double)>& f) {
  return matrix_function(eigh(h), f);
}

HermitianMatrix support_function(const EigenDecomposition& e,
                                 const std::function<double(double)>& f) {
  const double thr = e.support_threshold();
  return matrix_function(e, [&](double x) { return x > thr ? f(x) : 0.0; });
}

ComplexMatrix support_projector(const EigenDecomposition& e) {
  const double thr = e.support_threshold();
  const Eigen::Index n = e.eigenvalues.size();
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (e.eigenvalues[i] > thr)
      p += e.eigenvectors.col(i) * e.eigenvectors.col(i).adjoint();
  return p;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor(a.matrix(), b.matrix()));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a,
                            std::size_t dim_b, Subsystem keep) {
  const auto da = static_cast<Eigen::Index>(dim_a);
  const auto db = static_cast<Eigen::Index>(dim_b);
  if (m.rows() != da * db || m.cols() != da * db)
    throw std::invalid_argument("partial_trace: dimension mismatch");
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index j = 0; j < da; ++j)
        out(i, j) = m.block(i * db, j * db, db, db).trace();
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index i = 0; i < da; ++i) out += m.block(i * db, i * db, db, db);
  return out;
}

DensityMatrix partial_trace(const BipartiteDensity& rho, Subsystem keep) {
  return DensityMatrix(
      partial_trace(rho.state().matrix(), rho.dim_a(), rho.dim_b(), keep));
}

double trace_norm(const HermitianMatrix& m) {
  return eigh(m).eigenvalues.cwiseAbs().sum();
}

double operator_norm(const HermitianMatrix& m) {
  if (m.dim() == 0) return 0.0;
  return eigh(m).eigenvalues.cwiseAbs().maxCoeff();
}

double min_eigenvalue(const HermitianMatrix& m) {
  return eigh(m).eigenvalues[0];
}

bool commutes(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  return max_abs_entry(a * b - b * a) <= tol;
}

ExtendedReal loewner_min_coefficient(const HermitianMatrix& rho,
                                     const HermitianMatrix& sigma,
                                     SupportMode mode) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("loewner_min_coefficient: dimension mismatch");
  const EigenDecomposition es = eigh(sigma);
  const double thr = es.support_threshold();
  std::vector<Eigen::Index> supp;
  for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i)
    if (es.eigenvalues[i] > thr) supp.push_back(i);
  const auto n = static_cast<Eigen::Index>(rho.dim());
  const auto r = static_cast<Eigen::Index>(supp.size());
  ComplexMatrix vs(n, r);
  for (Eigen::Index k = 0; k < r; ++k) vs.col(k) = es.eigenvectors.col(supp[k]);

  if (mode == SupportMode::kStrict && r < n) {
    const ComplexMatrix q = ComplexMatrix::Identity(n, n) - vs * vs.adjoint();
    const double scale = std::max(1.0, max_abs_entry(rho.matrix()));
    if (max_abs_entry(q * rho.matrix() * q) > kDensityTol * scale)
      return ExtendedReal::infinite();
  }
  if (r == 0) return ExtendedReal::of(0.0);
  // Whitened compression S^{-1/2} V^dagger rho V S^{-1/2}.
  ComplexMatrix w = vs.adjoint() * rho.matrix() * vs;
  for (Eigen::Index i = 0; i < r; ++i) {
    const double si = 1.0 / std::sqrt(es.eigenvalues[supp[i]]);
    w.row(i) *= si;
    w.col(i) *= si;
  }
  const EigenDecomposition ew = eigh(HermitianMatrix(ComplexMatrix(0.5 * (w + w.adjoint()))));
  return ExtendedReal::of(std::max(0.0, ew.eigenvalues[r - 1]));
}

ExtendedReal loewner_min_coefficient(const DensityMatrix& rho,
                                     const DensityMatrix& sigma,
                                     SupportMode mode) {
  return loewner_min_coefficient(rho.hermitian(), sigma.hermitian(), mode);
}

double commuting_order_floor(const DensityMatrix& rho,
                             const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("commuting_order_floor: dimension mismatch");
  if (!commutes(rho.matrix(), sigma.matrix(), kDensityTol))
    throw std::invalid_argument("commuting_order_floor: [rho, sigma] != 0");
  const ComplexMatrix p = support_projector(sigma.spectrum());
  const ComplexMatrix diff = rho.matrix() - sigma.matrix();
  const double eps =
      operator_norm(HermitianMatrix(ComplexMatrix(p * diff * p)));
  const ComplexMatrix floor = diff + eps * p;
  if (min_eigenvalue(HermitianMatrix(floor)) < -1e-12)
    throw std::logic_error("commuting_order_floor: floor does not hold");
  return eps;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix ket_bra(std::size_t d, std::size_t i, std::size_t j) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

}  // namespace qdecay

#include "asoc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace asoc {

namespace {

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

bool all_finite(const Matrix& m) { return m.allFinite(); }

// Cholesky that also rejects non-positive or non-finite pivots, which Eigen's
// LLT reports only for the strictly negative case.
bool try_cholesky(const Matrix& m, Eigen::LLT<Matrix>& llt) {
  llt.compute(m);
  if (llt.info() != Eigen::Success) return false;
  const Matrix l = llt.matrixL();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const double d = l(i, i);
    if (!std::isfinite(d) || d <= 0.0) return false;
  }
  return l.allFinite();
}

}  // namespace

Matrix PairGaussianModel::joint_covariance() const {
  const auto n = static_cast<Eigen::Index>(dimension());
  Matrix joint(2 * n, 2 * n);
  joint.topLeftCorner(n, n) = sigma11;
  joint.topRightCorner(n, n) = sigma12;
  joint.bottomLeftCorner(n, n) = sigma12.transpose();
  joint.bottomRightCorner(n, n) = sigma22;
  return joint;
}

PairGaussianModel fit_pair_moments(std::span<const Vector> sorted_points) {
  const std::size_t count = sorted_points.size();
  if (count < 2) throw std::invalid_argument("fit_pair_moments: need at least 2 points to form pairs");
  const Eigen::Index n = sorted_points.front().size();
  if (n == 0) throw std::invalid_argument("fit_pair_moments: zero-dimensional points");
  for (const auto& p : sorted_points) {
    if (p.size() != n) throw std::invalid_argument("fit_pair_moments: points differ in dimension");
    if (!p.allFinite()) throw std::invalid_argument("fit_pair_moments: non-finite coordinate");
  }

  const double pairs = 0.5 * static_cast<double>(count) * static_cast<double>(count - 1);

  // Shift by the plain pool mean; covariances are shift invariant and the
  // smaller magnitudes keep the accumulations accurate on wide domains.
  Vector center = Vector::Zero(n);
  for (const auto& p : sorted_points) center += p;
  center /= static_cast<double>(count);

  std::vector<Vector> d(count);
  for (std::size_t i = 0; i < count; ++i) d[i] = sorted_points[i] - center;

  Vector m1 = Vector::Zero(n);
  Vector m2 = Vector::Zero(n);
  for (std::size_t i = 0; i < count; ++i) {
    m1 += static_cast<double>(count - 1 - i) * d[i];
    m2 += static_cast<double>(i) * d[i];
  }
  m1 /= pairs;
  m2 /= pairs;

  Matrix s11 = Matrix::Zero(n, n);
  Matrix s22 = Matrix::Zero(n, n);
  Matrix s12 = Matrix::Zero(n, n);
  Vector prefix = Vector::Zero(n);  // sum over i < j of (d_i - m1)
  for (std::size_t j = 0; j < count; ++j) {
    const Vector a = d[j] - m1;
    const Vector b = d[j] - m2;
    s11.noalias() += static_cast<double>(count - 1 - j) * a * a.transpose();
    s22.noalias() += static_cast<double>(j) * b * b.transpose();
    s12.noalias() += prefix * b.transpose();
    prefix += a;
  }

  PairGaussianModel model;
  model.mu1 = m1 + center;
  model.mu2 = m2 + center;
  model.sigma11 = symmetrized(s11 / pairs);
  model.sigma22 = symmetrized(s22 / pairs);
  model.sigma12 = s12 / pairs;
  model.pair_count = static_cast<std::size_t>(pairs);
  return model;
}

ConditionalGaussian condition_on_best(const PairGaussianModel& model, const Vector& best,
                                      double regularization) {
  const auto n = static_cast<Eigen::Index>(model.dimension());
  if (best.size() != n) throw std::invalid_argument("condition_on_best: dimension mismatch");
  if (!(regularization >= 0.0)) throw std::invalid_argument("condition_on_best: negative regularization");
  if (!best.allFinite()) throw std::invalid_argument("condition_on_best: non-finite conditioning point");

  const double trace = model.sigma22.trace();
  const double scale = trace > 0.0 ? trace / static_cast<double>(n) : 1e-12;
  double eps = regularization * scale;

  Eigen::LLT<Matrix> llt;
  const Matrix identity = Matrix::Identity(n, n);
  if (!try_cholesky(model.sigma22 + eps * identity, llt)) {
    eps *= 10.0;
    if (!try_cholesky(model.sigma22 + eps * identity, llt)) {
      throw ConditioningError("condition_on_best: conditioning block is not positive definite (eps = " +
                              std::to_string(eps) + ")");
    }
  }

  // gain = S12 (S22 + eps I)^-1, obtained from the symmetric solve of its transpose.
  const Matrix gain = llt.solve(model.sigma12.transpose()).transpose();

  ConditionalGaussian out;
  out.mu_hat = model.mu1 + gain * (best - model.mu2);
  const Matrix schur = symmetrized(model.sigma11 - gain * model.sigma12.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> eig(schur);
  if (eig.info() != Eigen::Success) throw ConditioningError("condition_on_best: eigendecomposition failed");
  const Vector clamped = eig.eigenvalues().cwiseMax(0.0);
  out.sigma_hat = symmetrized(eig.eigenvectors() * clamped.asDiagonal() * eig.eigenvectors().transpose());

  const double largest = clamped.maxCoeff();
  out.degenerate = largest < 1e-14 * std::max(1.0, out.mu_hat.squaredNorm());
  out.factor = out.degenerate ? Matrix::Zero(n, n) : psd_factorize(out.sigma_hat);
  return out;
}

ConditionalGaussian add_covariance_floor(ConditionalGaussian dist, double floor) {
  if (!(floor >= 0.0)) throw std::invalid_argument("add_covariance_floor: negative floor");
  if (floor == 0.0) return dist;
  const auto n = static_cast<Eigen::Index>(dist.dimension());
  dist.sigma_hat += floor * Matrix::Identity(n, n);
  dist.factor = psd_factorize(dist.sigma_hat);
  dist.degenerate = false;
  return dist;
}

std::vector<Vector> sample_mvn(const ConditionalGaussian& dist, std::size_t count, Rng& rng) {
  if (count == 0) throw std::invalid_argument("sample_mvn: count must be positive");
  if (dist.degenerate) throw std::invalid_argument("sample_mvn: distribution is degenerate");
  const auto n = static_cast<Eigen::Index>(dist.dimension());
  std::vector<Vector> out;
  out.reserve(count);
  Vector z(n);
  for (std::size_t s = 0; s < count; ++s) {
    for (Eigen::Index k = 0; k < n; ++k) z(k) = rng.normal();
    out.emplace_back(dist.mu_hat + dist.factor.triangularView<Eigen::Lower>() * z);
  }
  return out;
}

bool is_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

Matrix clamp_to_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrized(m));
  const Vector clamped = eig.eigenvalues().cwiseMax(0.0);
  return symmetrized(eig.eigenvectors() * clamped.asDiagonal() * eig.eigenvectors().transpose());
}

Matrix psd_factorize(const Matrix& m) {
  if (!all_finite(m)) throw std::invalid_argument("psd_factorize: non-finite entries");
  if (!is_symmetric(m)) throw std::invalid_argument("psd_factorize: matrix is not symmetric");
  const Matrix sym = symmetrized(m);
  const Eigen::Index n = sym.rows();

  Eigen::LLT<Matrix> llt;
  if (try_cholesky(sym, llt)) return llt.matrixL();

  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success) throw std::invalid_argument("psd_factorize: eigendecomposition failed");
  const Vector root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  // B = Q sqrt(L) gives B B' = m+. With B' = Q2 R, R' is lower triangular and
  // R' R = B B'.
  const Matrix b = eig.eigenvectors() * root.asDiagonal();
  Eigen::HouseholderQR<Matrix> qr(b.transpose());
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Flip rows so the diagonal is non-negative; R'R is unchanged.
  for (Eigen::Index i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) r.row(i) *= -1.0;
  }
  return r.transpose();
}

}  // namespace asoc

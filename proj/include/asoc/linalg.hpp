#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "asoc/rng.hpp"

namespace asoc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Raised when the conditioning block cannot be inverted even after the
/// regularization retry.
class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Joint Gaussian over the ordered-pair class: every pair [x_i, x_j] of a
/// sorted pool with i < j, so the first block holds the better point.
///
/// sigma12 is the general (non-symmetric) cross block; sigma21 = sigma12'.
struct PairGaussianModel {
  Vector mu1;
  Vector mu2;
  Matrix sigma11;
  Matrix sigma12;
  Matrix sigma22;
  std::size_t pair_count = 0;

  std::size_t dimension() const { return static_cast<std::size_t>(mu1.size()); }

  /// The assembled 2n x 2n covariance [[S11, S12], [S12', S22]].
  Matrix joint_covariance() const;
};

/// Candidate-generating distribution N(mu_hat, sigma_hat).
struct ConditionalGaussian {
  Vector mu_hat;
  Matrix sigma_hat;  // symmetric PSD (clamped)
  Matrix factor;     // lower triangular, factor * factor' == sigma_hat
  bool degenerate = false;

  std::size_t dimension() const { return static_cast<std::size_t>(mu_hat.size()); }
};

/// Population-normalized moments of the ordered-pair class of a pool that is
/// already sorted ascending by objective value. Uses the pair-weight closed
/// form: the i-th point (0-based) is the first element of N-1-i pairs and the
/// second element of i pairs, and the cross block is accumulated with prefix
/// sums, so the cost is O(N n^2) instead of O(N^2 n^2).
PairGaussianModel fit_pair_moments(std::span<const Vector> sorted_points);

/// Gaussian of the first pair element given that the second equals `best`:
///
///   mu_hat    = mu1 + S12 (S22 + eps I)^-1 (best - mu2)
///   sigma_hat = S11 - S12 (S22 + eps I)^-1 S21
///
/// with eps = regularization * trace(S22)/n (or * 1e-12 when the trace is
/// zero). One retry with 10*eps is attempted before ConditioningError.
ConditionalGaussian condition_on_best(const PairGaussianModel& model, const Vector& best,
                                      double regularization);

/// Returns `dist` with floor * I added to its covariance; never degenerate
/// for floor > 0.
ConditionalGaussian add_covariance_floor(ConditionalGaussian dist, double floor);

/// Draws `count` vectors mu_hat + L z, z ~ N(0, I), consuming n normals per
/// draw from `rng` in coordinate order.
std::vector<Vector> sample_mvn(const ConditionalGaussian& dist, std::size_t count, Rng& rng);

/// Lower-triangular L with L L' ~= m. Cholesky first; if that fails the
/// matrix is eigendecomposed, negative eigenvalues are clamped to zero and the
/// square-root factor is brought back to triangular form through a QR step.
Matrix psd_factorize(const Matrix& m);

/// m with negative eigenvalues set to zero (symmetrized first).
Matrix clamp_to_psd(const Matrix& m);

/// max |m - m'| <= tol * max(1, max|m|).
bool is_symmetric(const Matrix& m, double tol = 1e-12);

}  // namespace asoc

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "gh/rng.hpp"

namespace gh {

inline constexpr double kFrameTolerance = 1e-10;
inline constexpr double kClampTolerance = 1e-12;

/// A point of Gr_k(R^n) represented by an orthonormal n x k frame.
class Subspace {
 public:
  /// Throws std::invalid_argument unless 1 <= k <= n-1 and the columns are
  /// orthonormal to kFrameTolerance.
  explicit Subspace(Eigen::MatrixXd frame);

  /// span(e_1, ..., e_k).
  static Subspace canonical(int n, int k);
  /// Orthonormalizes the columns of an arbitrary full-rank n x k matrix.
  static Subspace from_spanning(const Eigen::MatrixXd& columns);

  int n() const { return static_cast<int>(frame_.rows()); }
  int k() const { return static_cast<int>(frame_.cols()); }
  int kappa() const { return std::min(k(), n() - k()); }
  const Eigen::MatrixXd& frame() const { return frame_; }

  Subspace complement() const;
  /// Q E for an orthogonal Q.
  Subspace transformed(const Eigen::MatrixXd& q) const;
  Eigen::MatrixXd projector() const { return frame_ * frame_.transpose(); }

 private:
  Eigen::MatrixXd frame_;
};

/// The kappa = min(k, n-k) nontrivial squared cosines y_j = cos^2 theta_j,
/// clamped to [0,1] and sorted non-increasingly.
struct PrincipalCosines {
  std::vector<double> y;
};

/// Orthonormalized standard Gaussian n x k matrix; O(n)-invariant in law.
Subspace haar_sample(int n, int k, RngStream& rng);
/// An n x k matrix of independent standard normals (the raw draw behind haar_sample).
Eigen::MatrixXd gaussian_matrix(int rows, int cols, RngStream& rng);

/// Squared singular values of E^T E', keeping the kappa smallest (the
/// remaining k - kappa are identically 1).
PrincipalCosines principal_cosines(const Subspace& e, const Subspace& f);

/// |cos(E, E')| = prod_j cos theta_j = |det(E^T E')|.
double abs_cosine(const Subspace& e, const Subspace& f);

/// j-th elementary symmetric function of principal_cosines(E, E0), 1 <= j <= kappa.
double sigma_of_subspace(const Subspace& e, const Subspace& e0, int j);

/// Applies g_eps = P_{E0} + eps P_F to E and re-orthonormalizes. F must be
/// E0's orthogonal complement. Throws DegenerateSubspaceError if g_eps E
/// collapses (E meets F when eps = 0).
Subspace rescaling_flow(const Subspace& e0, const Subspace& f, double eps, const Subspace& e);
Subspace rescaling_flow(const Subspace& e0, double eps, const Subspace& e);

/// eta_{g_eps}(E) = 1 / Jac(g_eps : E -> g_eps E).
double jacobian_factor(const Subspace& e0, double eps, const Subspace& e);

/// Graph chart over E0: the (n-k) x k matrix T with E = {u + T u : u in E0}
/// in the bases (E0 frame, complement frame). Throws DegenerateSubspaceError
/// when E is not transversal to E0's complement.
Eigen::MatrixXd graph_chart(const Subspace& e0, const Subspace& e);

/// Haar-distributed orthogonal n x n matrix (QR of a Gaussian with the sign fix).
Eigen::MatrixXd haar_orthogonal(int n, RngStream& rng);

}  // namespace gh

namespace gh {

/// Squared singular values of a k x k cross-product E0^T U of orthonormal
/// frames, keeping the `kappa` smallest, clamped to [0,1], non-increasing.
/// Low-level entry point shared by principal_cosines and the sampling kernels.
void squared_cosines(const Eigen::MatrixXd& cross, int kappa, double* out);

}  // namespace gh

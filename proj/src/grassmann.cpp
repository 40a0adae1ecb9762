#include "gh/grassmann.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "gh/errors.hpp"

namespace gh {

namespace {

constexpr double kTransversality = 1e-8;

Eigen::MatrixXd thin_q(const Eigen::MatrixXd& a) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ() * Eigen::MatrixXd::Identity(a.rows(), a.cols());
}

}  // namespace

Subspace::Subspace(Eigen::MatrixXd frame) : frame_(std::move(frame)) {
  const auto n = frame_.rows();
  const auto k = frame_.cols();
  if (k < 1 || k > n - 1) throw std::invalid_argument("subspace dimension must satisfy 1 <= k <= n-1");
  const Eigen::MatrixXd gram = frame_.transpose() * frame_ - Eigen::MatrixXd::Identity(k, k);
  if (gram.cwiseAbs().maxCoeff() > kFrameTolerance)
    throw std::invalid_argument("frame columns are not orthonormal");
}

Subspace Subspace::canonical(int n, int k) {
  return Subspace(Eigen::MatrixXd::Identity(n, k));
}

Subspace Subspace::from_spanning(const Eigen::MatrixXd& columns) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(columns);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) <= kTransversality * std::max(1.0, s(0)))
    throw DegenerateSubspaceError("spanning set is numerically rank deficient");
  return Subspace(thin_q(columns));
}

Subspace Subspace::complement() const {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(frame_);
  const Eigen::MatrixXd q = qr.householderQ();
  return Subspace(q.rightCols(n() - k()));
}

Subspace Subspace::transformed(const Eigen::MatrixXd& q) const {
  return Subspace(thin_q(q * frame_));
}

Eigen::MatrixXd gaussian_matrix(int rows, int cols, RngStream& rng) {
  Eigen::MatrixXd g(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.normal();
  return g;
}

Subspace haar_sample(int n, int k, RngStream& rng) {
  if (k < 1 || k > n - 1) throw std::invalid_argument("haar_sample needs 1 <= k <= n-1");
  return Subspace(thin_q(gaussian_matrix(n, k, rng)));
}

Eigen::MatrixXd haar_orthogonal(int n, RngStream& rng) {
  const Eigen::MatrixXd g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

PrincipalCosines principal_cosines(const Subspace& e, const Subspace& f) {
  if (e.n() != f.n()) throw std::invalid_argument("subspaces live in different ambient spaces");
  if (e.k() != f.k()) throw std::invalid_argument("subspaces have different dimensions");
  const Eigen::MatrixXd cross = e.frame().transpose() * f.frame();
  PrincipalCosines out;
  out.y.resize(static_cast<std::size_t>(e.kappa()));
  squared_cosines(cross, e.kappa(), out.y.data());
  return out;
}

void squared_cosines(const Eigen::MatrixXd& cross, int kappa, double* out) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross);
  const auto& s = svd.singularValues();  // non-increasing
  const auto k = static_cast<int>(s.size());
  for (int j = 0; j < kappa; ++j) {
    const double c = std::clamp(s(k - kappa + j), 0.0, 1.0);
    out[j] = c * c;
  }
}

double abs_cosine(const Subspace& e, const Subspace& f) {
  double prod = 1.0;
  for (double y : principal_cosines(e, f).y) prod *= std::sqrt(y);
  return prod;
}

double sigma_of_subspace(const Subspace& e, const Subspace& e0, int j) {
  const auto y = principal_cosines(e, e0).y;
  if (j < 1 || j > static_cast<int>(y.size())) throw std::invalid_argument("sigma index out of range");
  // e_j via the standard DP over prefixes.
  std::vector<double> es(y.size() + 1, 0.0);
  es[0] = 1.0;
  for (double v : y)
    for (std::size_t r = es.size() - 1; r >= 1; --r) es[r] += v * es[r - 1];
  return es[static_cast<std::size_t>(j)];
}

namespace {

void check_complement(const Subspace& e0, const Subspace& f) {
  if (f.n() != e0.n() || f.k() != e0.n() - e0.k())
    throw std::invalid_argument("F must have dimension n - k");
  const Eigen::MatrixXd cross = e0.frame().transpose() * f.frame();
  if (cross.cwiseAbs().maxCoeff() > kFrameTolerance)
    throw std::invalid_argument("F must be the orthogonal complement of E0");
}

Eigen::MatrixXd flowed_frame(const Subspace& e0, const Subspace& f, double eps, const Subspace& e) {
  if (e.n() != e0.n() || e.k() != e0.k()) throw std::invalid_argument("E and E0 must match in n and k");
  const Eigen::MatrixXd& u = e.frame();
  return e0.frame() * (e0.frame().transpose() * u) + eps * (f.frame() * (f.frame().transpose() * u));
}

double smallest_singular_value(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  return s(s.size() - 1);
}

}  // namespace

Subspace rescaling_flow(const Subspace& e0, const Subspace& f, double eps, const Subspace& e) {
  check_complement(e0, f);
  const Eigen::MatrixXd w = flowed_frame(e0, f, eps, e);
  if (smallest_singular_value(w) <= kTransversality)
    throw DegenerateSubspaceError("g_eps E collapses: E meets the complement of E0");
  return Subspace(thin_q(w));
}

Subspace rescaling_flow(const Subspace& e0, double eps, const Subspace& e) {
  return rescaling_flow(e0, e0.complement(), eps, e);
}

double jacobian_factor(const Subspace& e0, double eps, const Subspace& e) {
  const Subspace f = e0.complement();
  const Eigen::MatrixXd w = flowed_frame(e0, f, eps, e);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(w);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) <= kTransversality)
    throw DegenerateSubspaceError("g_eps is singular on E: E meets the complement of E0");
  double jac = 1.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) jac *= s(i);
  return 1.0 / jac;
}

Eigen::MatrixXd graph_chart(const Subspace& e0, const Subspace& e) {
  const Subspace f = e0.complement();
  const Eigen::MatrixXd a = e0.frame().transpose() * e.frame();
  const Eigen::MatrixXd b = f.frame().transpose() * e.frame();
  if (smallest_singular_value(a) <= kTransversality)
    throw DegenerateSubspaceError("E is not transversal to the complement of E0");
  return b * a.inverse();
}

}  // namespace gh

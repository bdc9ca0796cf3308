#include "kspave/frames.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kspave/error.hpp"

namespace kspave {
namespace {

constexpr double kRankTol = 1e-9;

Matrix orthonormal_range(const Matrix& p) {
  const EigenDecomposition eig = hermitian_eig(p, kParsevalTol);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues(k) > 0.5) keep.push_back(k);
  }
  Matrix basis(p.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors.col(keep[c]);
  }
  return basis;
}

FrameBounds bounds_of(const Matrix& s) {
  if (s.size() == 0) return {};
  const RealVector ev = hermitian_eigenvalues(s, kParsevalTol);
  return {std::max(ev(0), 0.0), std::max(ev(ev.size() - 1), 0.0)};
}

}  // namespace

Frame::Frame(Matrix synthesis) : synthesis_(std::move(synthesis)) {
  if (synthesis_.cols() < 1) throw Error(ErrorCode::InvalidArgument, "a frame needs at least one vector");
  require_finite(synthesis_, "frame vectors");
  frame_operator_ = synthesis_ * synthesis_.adjoint();
  frame_operator_ = (frame_operator_ + frame_operator_.adjoint()) / 2.0;
  gram_ = synthesis_.adjoint() * synthesis_;
  gram_ = (gram_ + gram_.adjoint()) / 2.0;
}

Frame Frame::from_vectors(const std::vector<Vector>& vectors) {
  if (vectors.empty()) throw Error(ErrorCode::InvalidArgument, "a frame needs at least one vector");
  const Eigen::Index d = vectors.front().size();
  Matrix t(d, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != d) throw Error(ErrorCode::DimensionMismatch, "frame vectors differ in length");
    t.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  return Frame(std::move(t));
}

const Matrix& frame_operator(const Frame& f) { return f.frame_operator(); }
const Matrix& gram(const Frame& f) { return f.gram(); }

FrameBounds frame_bounds(const Frame& f) { return bounds_of(f.frame_operator()); }

FrameBounds frame_bounds_on_range(const Frame& f, const Matrix& p) {
  if (p.rows() != static_cast<Eigen::Index>(f.dim()) || p.cols() != p.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "projection does not act on the frame's space");
  }
  const Matrix basis = orthonormal_range(p);
  if (basis.cols() == 0) return {};
  return bounds_of(basis.adjoint() * f.frame_operator() * basis);
}

bool is_parseval(const Frame& f, double tol) {
  const Matrix identity = Matrix::Identity(f.frame_operator().rows(), f.frame_operator().cols());
  return op_norm(f.frame_operator() - identity) <= tol;
}

Frame canonical_parseval(const Frame& f, double tol) {
  const EigenDecomposition eig = hermitian_eig(f.frame_operator(), kParsevalTol);
  if (eig.eigenvalues.size() == 0 || eig.eigenvalues(0) <= tol) {
    throw Error(ErrorCode::NotAFrame, "lower frame bound " +
                                          std::to_string(eig.eigenvalues.size() ? eig.eigenvalues(0) : 0.0));
  }
  const RealVector inv_roots = eig.eigenvalues.cwiseSqrt().cwiseInverse();
  const Matrix s_inv_half =
      eig.eigenvectors * inv_roots.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
  return Frame(s_inv_half * f.synthesis());
}

Matrix naimark_dilate(const Frame& f, double tol) {
  if (!is_parseval(f, tol)) {
    const Matrix identity = Matrix::Identity(f.frame_operator().rows(), f.frame_operator().cols());
    throw Error(ErrorCode::NotParseval,
                "||S - I|| = " + std::to_string(op_norm(f.frame_operator() - identity)));
  }
  return f.gram();
}

Frame project_frame(const Frame& f, const Matrix& p, double tol) {
  if (p.rows() != static_cast<Eigen::Index>(f.dim()) || p.cols() != p.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "projection does not act on the frame's space");
  }
  if (!is_projection(p, tol)) throw Error(ErrorCode::NotAProjection, "P^2 = P = P* fails");
  return Frame(p * f.synthesis());
}

Matrix synthesis_kernel(const Frame& f) {
  const Matrix& t = f.synthesis();
  const Eigen::Index m = t.cols();
  // Pad to a square matrix so the full set of right singular vectors exists.
  Matrix padded = Matrix::Zero(std::max(t.rows(), m), m);
  padded.topRows(t.rows()) = t;
  Eigen::JacobiSVD<Matrix> svd(padded, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > kRankTol * scale) ++rank;
  }
  return svd.matrixV().rightCols(m - rank);
}

bool frames_isomorphic(const Frame& f, const Frame& g, double tol) {
  if (f.size() != g.size()) {
    throw Error(ErrorCode::DimensionMismatch, "frames have different index sets");
  }
  const Matrix kf = synthesis_kernel(f);
  const Matrix kg = synthesis_kernel(g);
  if (kf.cols() != kg.cols()) return false;
  if (kf.cols() == 0) return true;
  // ||(I - K_g K_g*) K_f|| and the symmetric term bound the subspace distance.
  const Matrix f_outside = kf - kg * (kg.adjoint() * kf);
  const Matrix g_outside = kg - kf * (kf.adjoint() * kg);
  return op_norm(f_outside) <= tol && op_norm(g_outside) <= tol;
}

double total_energy(const Frame& f) { return f.synthesis().squaredNorm(); }

}  // namespace kspave

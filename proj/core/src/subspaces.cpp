#include "kspave/subspaces.hpp"

#include <cmath>
#include <string>

#include "kspave/error.hpp"
#include "kspave/sequences.hpp"

namespace kspave {

SubspaceModel::SubspaceModel(std::size_t ambient_dim, const Matrix& spanning) : ambient_dim_(ambient_dim) {
  if (static_cast<std::size_t>(spanning.rows()) != ambient_dim) {
    throw Error(ErrorCode::DimensionMismatch, "basis rows " + std::to_string(spanning.rows()) +
                                                  " differ from ambient dimension " + std::to_string(ambient_dim));
  }
  if (ambient_dim == 0) throw Error(ErrorCode::InvalidArgument, "ambient dimension must be positive");
  require_finite(spanning, "subspace basis");
  if (spanning.cols() > spanning.rows()) {
    throw Error(ErrorCode::DependentBasis, "more basis vectors than the ambient dimension");
  }
  basis_ = spanning;
  for (Eigen::Index j = 0; j < basis_.cols(); ++j) {
    // Two passes of modified Gram-Schmidt keep orthogonality near machine precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < j; ++k) {
        const Complex c = basis_.col(k).dot(basis_.col(j));
        basis_.col(j) -= c * basis_.col(k);
      }
    }
    const double norm = basis_.col(j).norm();
    if (norm <= kBasisTol) {
      throw Error(ErrorCode::DependentBasis, "basis column " + std::to_string(j) + " is dependent on earlier columns");
    }
    basis_.col(j) /= norm;
  }
  projector_ = basis_ * basis_.adjoint();
  projector_ = (projector_ + projector_.adjoint()) / 2.0;
}

RealVector SubspaceModel::coordinate_norms() const {
  // ||P e_i||^2 = P_ii = ||row i of the basis||^2.
  return basis_.rowwise().norm();
}

LargeReport is_A_large(const SubspaceModel& h, double a) {
  if (!(a > 0.0 && a <= 1.0)) throw Error(ErrorCode::InvalidArgument, "A must lie in (0,1]");
  const RealVector norms = h.coordinate_norms();
  LargeReport out;
  out.min_norm = norms.size() > 0 ? norms.minCoeff() : 0.0;
  out.large = out.min_norm >= a - kLargeTol;
  return out;
}

double block_surjectivity(const SubspaceModel& h, const IndexSet& block) {
  if (block.size() > h.dim()) return 0.0;
  Matrix rows(static_cast<Eigen::Index>(block.size()), h.basis().cols());
  for (std::size_t k = 0; k < block.size(); ++k) {
    rows.row(static_cast<Eigen::Index>(k)) = h.basis().row(static_cast<Eigen::Index>(block[k]));
  }
  const Eigen::JacobiSVD<Matrix> svd(rows);
  const RealVector s = svd.singularValues();
  return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

bool verify_decomposition(const SubspaceModel& h, const Partition& blocks) {
  validate_partition(blocks, h.ambient_dim());
  for (const auto& block : blocks) {
    if (block.empty()) continue;
    if (!(block_surjectivity(h, block) > kSurjectivityTol)) return false;
  }
  return true;
}

Frame decomposition_frame(const SubspaceModel& h) {
  const RealVector norms = h.coordinate_norms();
  for (Eigen::Index i = 0; i < norms.size(); ++i) {
    if (norms(i) <= kBasisTol) {
      throw Error(ErrorCode::NotLarge, "coordinate " + std::to_string(i) + " has ||P e_i|| = " +
                                           std::to_string(norms(i)));
    }
  }
  Matrix vectors = h.basis().adjoint();
  for (Eigen::Index i = 0; i < vectors.cols(); ++i) vectors.col(i) /= norms(i);
  return Frame(vectors);
}

PartitionCertificate verify_decomposition_certificate(const SubspaceModel& h, const Partition& blocks, double epsilon,
                                                      double tol) {
  PartitionCertificate cert = verify_riesz(decomposition_frame(h), blocks, epsilon, tol);
  cert.subject_hash = subject_digest("subspace", h.basis());
  return cert;
}

Decomposition decompose(const SubspaceModel& h, double epsilon, const SearchBudget& budget) {
  const Frame frame = decomposition_frame(h);
  Decomposition out;
  out.certificate = feichtinger_partition(frame, epsilon, budget);
  out.certificate.subject_hash = subject_digest("subspace", h.basis());
  out.blocks = out.certificate.partition;
  out.reported_r = decomposition_number_formula(h.coordinate_norms().minCoeff(), epsilon);
  out.certificate.reported_r = out.reported_r;
  return out;
}

double decomposition_number_formula(double a, double epsilon) {
  const double a2 = a * a;
  return std::pow(6.0 * (a2 + 1.0) / (epsilon * a2), 4.0);
}

}  // namespace kspave

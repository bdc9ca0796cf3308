#include "kspave/paving.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kspave/error.hpp"

namespace kspave {
namespace {

constexpr double kSelfAdjointTol = 1e-10;
constexpr double kNormSlack = 1e-10;
constexpr double kProjectionTol = 1e-8;
constexpr double kIdentityResolutionTol = 1e-8;
constexpr double kUnitNormTol = 1e-8;
constexpr double kTightTol = 1e-6;
constexpr double kZeroDiagTol = 1e-12;

IndexSet iota_set(std::size_t n) {
  IndexSet all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return all;
}

void require_epsilon(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must be finite and non-negative");
  }
}

void require_zero_diagonal(const Matrix& t) {
  if (t.rows() > 0 && t.diagonal().cwiseAbs().maxCoeff() > kZeroDiagTol) {
    throw Error(ErrorCode::NonZeroDiagonal, "subtract the diagonal first (normalize_zero_diag)");
  }
}

bool colorings_within(std::size_t r, std::size_t m, std::uint64_t limit) {
  double count = 1.0;
  for (std::size_t i = 0; i < m; ++i) count *= static_cast<double>(r);
  return count <= static_cast<double>(limit);
}

// Exhaustive min-max for small r^m (seeded by local search for pruning),
// local search aimed at `bound` otherwise.
SearchOutcome split_search(const BlockObjective& obj, std::size_t r, double bound, const SearchBudget& budget) {
  const SearchOutcome heuristic = local_search(obj, r, bound, kCertificateTol, budget);
  if (colorings_within(r, obj.size, kAutoExhaustiveColorings)) {
    SearchOutcome exact = exhaustive_min_max(obj, r, heuristic.max_norm);
    exact.success = exact.max_norm <= bound + kCertificateTol;
    return exact;
  }
  return heuristic;
}

Matrix range_basis(const Matrix& q) {
  const EigenDecomposition eig = hermitian_eig(q, kProjectionTol);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues(k) > 0.5) ++rank;
  }
  // Eigenvalues ascend, so the range is spanned by the last `rank` vectors.
  return eig.eigenvectors.rightCols(rank);
}

void require_projection(const Matrix& q) {
  require_square(q, "projection");
  require_finite(q, "projection");
  if (!is_projection(q, kProjectionTol)) throw Error(ErrorCode::NotAProjection, "Q^2 = Q = Q* fails at 1e-8");
}

PartitionCertificate stamp(PartitionCertificate cert, const SearchBudget& budget) {
  cert.seed = budget.seed;
  return cert;
}

}  // namespace

PartitionCertificate verify_paving(const Matrix& t, const Partition& p, double epsilon, double tol) {
  require_square(t, "paving subject");
  require_epsilon(epsilon);
  validate_partition(p, static_cast<std::size_t>(t.rows()));
  const BlockObjective obj = submatrix_objective(t);
  PartitionCertificate cert;
  cert.subject_hash = subject_digest("matrix", t);
  cert.kind = CertificateKind::paving;
  cert.bound_rule = BoundRule::relative;
  cert.partition = canonicalize(p);
  cert.epsilon = epsilon;
  cert.bound = epsilon * op_norm(t);
  cert.block_norms = block_norms(obj, cert.partition);
  cert.tolerance = tol;
  cert.verdict = judge(cert.block_norms, cert.bound, tol);
  return cert;
}

PartitionCertificate verify_paving_absolute(const Matrix& m, const Partition& p, double bound, double epsilon,
                                            double tol) {
  require_square(m, "paving subject");
  validate_partition(p, static_cast<std::size_t>(m.rows()));
  const BlockObjective obj = submatrix_objective(m);
  PartitionCertificate cert;
  cert.subject_hash = subject_digest("matrix", m);
  cert.kind = CertificateKind::paving;
  cert.bound_rule = BoundRule::absolute;
  cert.partition = canonicalize(p);
  cert.epsilon = epsilon;
  cert.bound = bound;
  cert.block_norms = block_norms(obj, cert.partition);
  cert.tolerance = tol;
  cert.verdict = judge(cert.block_norms, cert.bound, tol);
  return cert;
}

PartitionCertificate verify_outer_sum(const Matrix& vectors, const Partition& p, double bound, double tol) {
  validate_partition(p, static_cast<std::size_t>(vectors.cols()));
  const BlockObjective obj = outer_sum_objective(vectors);
  PartitionCertificate cert;
  cert.subject_hash = subject_digest("vectors", vectors);
  cert.kind = CertificateKind::outer_sum;
  cert.bound_rule = BoundRule::absolute;
  cert.partition = canonicalize(p);
  cert.bound = bound;
  cert.block_norms = block_norms(obj, cert.partition);
  cert.tolerance = tol;
  cert.verdict = judge(cert.block_norms, cert.bound, tol);
  return cert;
}

std::optional<PartitionCertificate> exhaustive_min_r(const Matrix& t, double epsilon, std::size_t max_r) {
  require_square(t, "paving subject");
  require_epsilon(epsilon);
  const BlockObjective obj = submatrix_objective(t);
  const auto p = exhaustive_min_blocks(obj, epsilon * op_norm(t), kCertificateTol, max_r);
  if (!p) return std::nullopt;
  return verify_paving(t, *p, epsilon);
}

PartitionCertificate heuristic_paving(const Matrix& t, std::size_t r, double epsilon, const SearchBudget& budget) {
  require_square(t, "paving subject");
  require_epsilon(epsilon);
  const BlockObjective obj = submatrix_objective(t);
  const SearchOutcome out = local_search(obj, r, epsilon * op_norm(t), kCertificateTol, budget);
  return stamp(verify_paving(t, out.partition, epsilon), budget);
}

PartitionCertificate pave_min_r(const Matrix& t, double epsilon, const SearchBudget& budget) {
  require_square(t, "paving subject");
  require_epsilon(epsilon);
  const auto n = static_cast<std::size_t>(t.rows());
  if (n == 0) return verify_paving(t, {}, epsilon);
  const BlockObjective obj = submatrix_objective(t);
  const SearchOutcome out = min_blocks_search(obj, epsilon * op_norm(t), kCertificateTol, budget, n);
  return stamp(verify_paving(t, out.partition, epsilon), budget);
}

double mss_bound(std::size_t r, double delta) {
  const double root = 1.0 / std::sqrt(static_cast<double>(r)) + std::sqrt(delta);
  return root * root;
}

PartitionCertificate mss_partition(const Frame& u, std::size_t r, const SearchBudget& budget) {
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  const Matrix identity = Matrix::Identity(static_cast<Eigen::Index>(u.dim()), static_cast<Eigen::Index>(u.dim()));
  const double defect = op_norm(u.frame_operator() - identity);
  if (defect > kIdentityResolutionTol) {
    throw Error(ErrorCode::NotIdentityResolution, "||sum u_i u_i* - I|| = " + std::to_string(defect));
  }
  const double delta = u.synthesis().colwise().squaredNorm().maxCoeff();
  const double bound = mss_bound(r, delta);
  const SearchOutcome out = split_search(outer_sum_objective(u.synthesis()), r, bound, budget);
  return stamp(verify_outer_sum(u.synthesis(), out.partition, bound), budget);
}

PartitionCertificate weaver_partition(const Frame& u, double eta, double theta, const SearchBudget& budget) {
  const RealVector norms = u.synthesis().colwise().norm();
  for (Eigen::Index i = 0; i < norms.size(); ++i) {
    if (std::abs(norms(i) - 1.0) > kUnitNormTol) {
      throw Error(ErrorCode::NotUnitNorm, "vector " + std::to_string(i) + " has norm " + std::to_string(norms(i)));
    }
  }
  const Matrix target =
      eta * Matrix::Identity(static_cast<Eigen::Index>(u.dim()), static_cast<Eigen::Index>(u.dim()));
  const double defect = op_norm(u.frame_operator() - target);
  if (defect > kTightTol) {
    throw Error(ErrorCode::NotEtaTight, "||S - eta I|| = " + std::to_string(defect));
  }
  const double bound = eta - theta;
  const SearchOutcome out = split_search(outer_sum_objective(u.synthesis()), 2, bound, budget);
  PartitionCertificate cert = verify_outer_sum(u.synthesis(), out.partition, bound);
  cert.epsilon = theta;
  return stamp(std::move(cert), budget);
}

PartitionCertificate pave_projection_absolute(const Matrix& q, std::size_t r, double bound,
                                              const SearchBudget& budget) {
  require_projection(q);
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  const auto m = static_cast<std::size_t>(q.rows());
  const Matrix v = range_basis(q);
  Partition p;
  if (v.cols() == 0 || m == 0) {
    // Q = 0: every block of every partition has norm zero.
    if (m > 0) p.push_back(iota_set(m));
  } else {
    const Matrix u = v.adjoint();
    p = split_search(outer_sum_objective(u), r, bound, budget).partition;
  }
  return stamp(verify_paving_absolute(q, p, bound, 0.0), budget);
}

PartitionCertificate projection_paving(const Matrix& q, std::size_t r, const SearchBudget& budget) {
  require_projection(q);
  const double delta = delta_diag(q, DiagMode::max);
  return pave_projection_absolute(q, r, mss_bound(r, delta), budget);
}

PartitionCertificate two_paving_projection(const Matrix& q, double epsilon, const SearchBudget& budget) {
  require_projection(q);
  require_epsilon(epsilon);
  const double delta = delta_diag(q, DiagMode::max);
  const double needed = mss_bound(2, delta);
  if (needed > 1.0 - epsilon) {
    throw Error(ErrorCode::HypothesisFails, "(1/sqrt2 + sqrt(delta))^2 = " + std::to_string(needed) +
                                                " exceeds 1 - eps = " + std::to_string(1.0 - epsilon));
  }
  PartitionCertificate cert = pave_projection_absolute(q, 2, 1.0 - epsilon, budget);
  cert.epsilon = epsilon;
  return cert;
}

Matrix cekp_involution(const Matrix& t) {
  require_square(t, "lift input");
  require_finite(t, "lift input");
  const double defect = hermitian_defect(t);
  if (defect > kSelfAdjointTol) throw Error(ErrorCode::NotSelfAdjoint, "||T - T*|| = " + std::to_string(defect));
  const double norm = op_norm(t);
  if (norm > 1.0 + kNormSlack) throw Error(ErrorCode::NormExceedsOne, "||T|| = " + std::to_string(norm));

  const Eigen::Index n = t.rows();
  const Matrix h = (t + t.adjoint()) / 2.0;
  const Matrix identity = Matrix::Identity(n, n);
  const Matrix root = psd_sqrt(identity - h * h, kDefaultPsdTol);
  Matrix a(2 * n, 2 * n);
  a.topLeftCorner(n, n) = h;
  a.topRightCorner(n, n) = root;
  a.bottomLeftCorner(n, n) = root;
  a.bottomRightCorner(n, n) = -h;
  return a;
}

Matrix cekp_lift(const Matrix& t, LiftSign sign) {
  const Matrix a = cekp_involution(t);
  const Matrix identity = Matrix::Identity(a.rows(), a.cols());
  return sign == LiftSign::plus ? Matrix((identity + a) / 2.0) : Matrix((identity - a) / 2.0);
}

PartitionCertificate pave_selfadjoint_via_projection(const Matrix& t, double epsilon, const SearchBudget& budget) {
  require_square(t, "paving subject");
  require_epsilon(epsilon);
  const double defect = hermitian_defect(t);
  if (defect > kSelfAdjointTol) throw Error(ErrorCode::NotSelfAdjoint, "||T - T*|| = " + std::to_string(defect));
  require_zero_diagonal(t);

  const auto n = static_cast<std::size_t>(t.rows());
  const double norm = op_norm(t);
  if (n == 0 || norm == 0.0) {
    PartitionCertificate cert = verify_paving(t, n ? Partition{iota_set(n)} : Partition{}, epsilon);
    cert.scale = norm;
    return stamp(std::move(cert), budget);
  }

  const Matrix scaled = t / norm;
  const double level = (1.0 + epsilon) / 2.0;
  const Matrix plus = cekp_lift(scaled, LiftSign::plus);
  const Matrix minus = cekp_lift(scaled, LiftSign::minus);
  const SearchOutcome pave_plus = min_blocks_search(submatrix_objective(plus), level, kCertificateTol, budget, 2 * n);
  const SearchOutcome pave_minus =
      min_blocks_search(submatrix_objective(minus), level, kCertificateTol, budget, 2 * n);

  Partition restricted;
  for (IndexSet block : common_refinement(pave_plus.partition, pave_minus.partition)) {
    std::erase_if(block, [n](std::size_t i) { return i >= n; });
    if (!block.empty()) restricted.push_back(std::move(block));
  }
  PartitionCertificate cert = verify_paving(t, canonicalize(std::move(restricted)), epsilon);
  cert.scale = norm;
  cert.reported_r = paving_number_formula(epsilon, Field::real);
  return stamp(std::move(cert), budget);
}

PartitionCertificate pave_complex(const Matrix& t, double epsilon, const SearchBudget& budget) {
  require_square(t, "paving subject");
  require_epsilon(epsilon);
  require_zero_diagonal(t);
  const auto n = static_cast<std::size_t>(t.rows());
  const Matrix re_part = (t + t.adjoint()) / 2.0;
  const Matrix im_part = (t - t.adjoint()) / Complex(0.0, 2.0);
  const double norm_re = op_norm(re_part);
  const double norm_im = op_norm(im_part);

  auto pave_part = [&](const Matrix& part, double eps_part) {
    return pave_min_r(part, eps_part, budget).partition;
  };

  Partition p;
  if (n == 0) {
  } else if (norm_re == 0.0 && norm_im == 0.0) {
    p.push_back(iota_set(n));
  } else if (norm_im == 0.0) {
    p = pave_part(re_part, epsilon);
  } else if (norm_re == 0.0) {
    p = pave_part(im_part, epsilon);
  } else {
    p = common_refinement(pave_part(re_part, epsilon / 2.0), pave_part(im_part, epsilon / 2.0));
  }
  PartitionCertificate cert = verify_paving(t, p, epsilon);
  cert.scale = op_norm(t);
  cert.reported_r = paving_number_formula(epsilon, field_of(t));
  return stamp(std::move(cert), budget);
}

std::pair<Matrix, Matrix> normalize_zero_diag(const Matrix& t) {
  require_square(t, "normalize_zero_diag input");
  Matrix diag = Matrix::Zero(t.rows(), t.cols());
  diag.diagonal() = t.diagonal();
  Matrix off = t;
  off.diagonal().setZero();
  return {off, diag};
}

double paving_number_formula(double epsilon, Field field) {
  return std::pow(6.0 / epsilon, field == Field::real ? 4.0 : 8.0);
}

}  // namespace kspave

#include "kspave/generators.hpp"

#include <cmath>
#include <random>
#include <string>

#include "kspave/error.hpp"

namespace kspave::gen {
namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  Complex draw(Field field) {
    const double re = normal_(rng_);
    if (field == Field::real) return {re, 0.0};
    return Complex(re, normal_(rng_)) / std::sqrt(2.0);
  }

  Matrix matrix(std::size_t rows, std::size_t cols, Field field) {
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = draw(field);
    }
    return m;
  }

  // Orthonormal columns from a QR of a Gaussian matrix.
  Matrix orthonormal(std::size_t n, std::size_t k, Field field) {
    const Matrix g = matrix(n, k, field);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
    return q;
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

void require_positive(std::size_t v, const char* what) {
  if (v == 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive");
}

}  // namespace

Matrix hermitian(std::size_t n, std::uint64_t seed, Field field, bool zero_diag) {
  require_positive(n, "n");
  Sampler s(seed);
  Matrix g = s.matrix(n, n, field);
  Matrix h = (g + g.adjoint()) / 2.0;
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = zero_diag ? Complex(0.0, 0.0) : Complex(h(i, i).real(), 0.0);
  return h;
}

Matrix selfadjoint_contraction(std::size_t n, std::uint64_t seed, double norm, bool zero_diag, Field field) {
  Matrix h = hermitian(n, seed, field, zero_diag);
  const double current = op_norm(h);
  if (current == 0.0) return h;
  return h * (norm / current);
}

Frame parseval(std::size_t d, std::size_t m, std::uint64_t seed, Field field) {
  require_positive(d, "d");
  if (m < d) throw Error(ErrorCode::InvalidArgument, "a Parseval frame needs m >= d");
  Sampler s(seed);
  const Matrix u = s.orthonormal(m, m, field);
  return Frame(u.topRows(static_cast<Eigen::Index>(d)));
}

Frame gaussian_frame(std::size_t d, std::size_t m, std::uint64_t seed, Field field) {
  require_positive(d, "d");
  require_positive(m, "m");
  Sampler s(seed);
  return Frame(s.matrix(d, m, field));
}

Frame unit_bessel(std::size_t d, std::size_t m, std::uint64_t seed, Field field) {
  require_positive(d, "d");
  require_positive(m, "m");
  Sampler s(seed);
  Matrix t = s.matrix(d, m, field);
  for (Eigen::Index i = 0; i < t.cols(); ++i) t.col(i).normalize();
  return Frame(t);
}

Frame repeated_basis(std::size_t d, std::size_t eta) {
  require_positive(d, "d");
  require_positive(eta, "eta");
  const auto dd = static_cast<Eigen::Index>(d);
  Matrix t(dd, dd * static_cast<Eigen::Index>(eta));
  for (std::size_t k = 0; k < eta; ++k) t.middleCols(static_cast<Eigen::Index>(k) * dd, dd) = Matrix::Identity(dd, dd);
  return Frame(t);
}

Frame eta_tight(std::size_t d, std::size_t eta, std::uint64_t seed) {
  require_positive(d, "d");
  require_positive(eta, "eta");
  Sampler s(seed);
  const auto dd = static_cast<Eigen::Index>(d);
  Matrix t(dd, dd * static_cast<Eigen::Index>(eta));
  for (std::size_t k = 0; k < eta; ++k) {
    t.middleCols(static_cast<Eigen::Index>(k) * dd, dd) = s.orthonormal(d, d, Field::real);
  }
  t += 0.1 * s.matrix(d, d * eta, Field::real);
  const double target = static_cast<double>(eta);
  const Matrix identity = Matrix::Identity(dd, dd);
  for (std::size_t sweep = 0; sweep < kTightSweeps; ++sweep) {
    for (Eigen::Index i = 0; i < t.cols(); ++i) t.col(i).normalize();
    Matrix frame_op = t * t.adjoint();
    frame_op = (frame_op + frame_op.adjoint()) / 2.0;
    if (op_norm(frame_op - target * identity) <= kTightTol) return Frame(t);
    // Map to the nearest tight frame: sqrt(eta) S^{-1/2} T.
    const EigenDecomposition eig = hermitian_eig(frame_op);
    RealVector inv_sqrt = eig.eigenvalues;
    for (Eigen::Index k = 0; k < inv_sqrt.size(); ++k) {
      if (!(inv_sqrt(k) > 0.0)) {
        throw Error(ErrorCode::GenerationFailed, "frame operator became singular during tightening");
      }
      inv_sqrt(k) = std::sqrt(target / inv_sqrt(k));
    }
    const Matrix scale =
        eig.eigenvectors * inv_sqrt.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
    t = scale * t;
  }
  throw Error(ErrorCode::GenerationFailed,
              "eta-tight generation did not converge in " + std::to_string(kTightSweeps) + " sweeps");
}

Matrix projection(std::size_t n, std::size_t k, std::uint64_t seed, Field field) {
  require_positive(n, "n");
  if (k > n) throw Error(ErrorCode::InvalidArgument, "rank exceeds dimension");
  if (k == 0) return Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Sampler s(seed);
  const Matrix v = s.orthonormal(n, k, field);
  Matrix p = v * v.adjoint();
  return (p + p.adjoint()) / 2.0;
}

SubspaceModel large_subspace(std::size_t n, std::size_t k, double a, std::uint64_t seed) {
  require_positive(n, "n");
  require_positive(k, "k");
  if (k > n) throw Error(ErrorCode::InvalidArgument, "subspace dimension exceeds ambient dimension");
  Sampler s(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    SubspaceModel h(n, s.orthonormal(n, k, Field::real));
    if (h.coordinate_norms().minCoeff() >= a) return h;
  }
  throw Error(ErrorCode::GenerationFailed, "no subspace with min ||P e_i|| >= " + std::to_string(a) + " found");
}

}  // namespace kspave::gen

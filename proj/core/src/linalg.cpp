#include "kspave/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kspave/error.hpp"

namespace kspave {
namespace {

bool exactly_hermitian(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = j; i < m.rows(); ++i) {
      if (m(i, j) != std::conj(m(j, i))) return false;
    }
  }
  return true;
}

double max_abs_eigenvalue(const Matrix& h) {
  if (h.size() == 0) return 0.0;
  RealVector ev;
  if (field_of(h) == Field::real) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real(), Eigen::EigenvaluesOnly);
    ev = solver.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    ev = solver.eigenvalues();
  }
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

}  // namespace

Field field_of(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (m(i, j).imag() != 0.0) return Field::complex;
    }
  }
  return Field::real;
}

bool is_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

void require_finite(const Matrix& m, const char* what) {
  if (!is_finite(m)) throw Error(ErrorCode::NotFinite, std::string(what) + " has non-finite entries");
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NonSquare, std::string(what) + " is " + std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()));
  }
}

double hermitian_defect(const Matrix& m) {
  require_square(m, "matrix");
  // i(M - M*) is exactly Hermitian in floating point, so op_norm takes the
  // eigenvalue route.
  const Matrix d = Complex(0.0, 1.0) * (m - m.adjoint());
  return op_norm(d);
}

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && hermitian_defect(m) <= tol;
}

EigenDecomposition hermitian_eig(const Matrix& m, double tol) {
  require_square(m, "hermitian_eig input");
  require_finite(m, "hermitian_eig input");
  const double defect = hermitian_defect(m);
  if (defect > tol) {
    throw Error(ErrorCode::NotHermitian, "||M - M*|| = " + std::to_string(defect));
  }
  const Matrix h = (m + m.adjoint()) / 2.0;
  EigenDecomposition out;
  if (h.size() == 0) return out;
  if (field_of(h) == Field::real) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real());
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
  }
  return out;
}

RealVector hermitian_eigenvalues(const Matrix& m, double tol) {
  require_square(m, "hermitian_eigenvalues input");
  const double defect = hermitian_defect(m);
  if (defect > tol) {
    throw Error(ErrorCode::NotHermitian, "||M - M*|| = " + std::to_string(defect));
  }
  const Matrix h = (m + m.adjoint()) / 2.0;
  if (h.size() == 0) return {};
  if (field_of(h) == Field::real) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (exactly_hermitian(m)) return max_abs_eigenvalue(m);
  if (field_of(m) == Field::real) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.real());
    return svd.singularValues()(0);
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Matrix psd_sqrt(const Matrix& m, double tol) {
  const EigenDecomposition eig = hermitian_eig(m, std::max(tol, kDefaultHermitianTol));
  if (eig.eigenvalues.size() == 0) return Matrix(0, 0);
  const double lowest = eig.eigenvalues(0);
  if (lowest < -tol) {
    throw Error(ErrorCode::NotPSD, "minimum eigenvalue " + std::to_string(lowest));
  }
  RealVector roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  const Matrix& v = eig.eigenvectors;
  Matrix r = v * roots.cast<Complex>().asDiagonal() * v.adjoint();
  // Symmetrize so the result is exactly Hermitian.
  return (r + r.adjoint()) / 2.0;
}

Matrix coordinate_projection(std::span<const std::size_t> subset, std::size_t n) {
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i : subset) {
    if (i >= n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "index " + std::to_string(i) + " outside [0," + std::to_string(n) + ")");
    }
    p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return p;
}

double delta_diag(const Matrix& t, DiagMode mode) {
  require_square(t, "delta_diag input");
  if (t.rows() == 0) return 0.0;
  const RealVector mags = t.diagonal().cwiseAbs();
  return mode == DiagMode::min ? mags.minCoeff() : mags.maxCoeff();
}

Matrix principal_submatrix(const Matrix& m, std::span<const std::size_t> idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Matrix out(k, k);
  for (Eigen::Index b = 0; b < k; ++b) {
    for (Eigen::Index a = 0; a < k; ++a) {
      out(a, b) = m(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(a)]),
                    static_cast<Eigen::Index>(idx[static_cast<std::size_t>(b)]));
    }
  }
  return out;
}

bool is_projection(const Matrix& p, double tol) {
  if (p.rows() != p.cols()) return false;
  return op_norm(p * p - p) <= tol && hermitian_defect(p) <= tol;
}

}  // namespace kspave

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace kspave {

using Complex = std::complex<double>;

/// Dense complex matrix; every operator in the toolkit is carried as one.
/// Real matrices are the ones whose imaginary parts are identically zero.
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

using IndexSet = std::vector<std::size_t>;

enum class Field { real, complex };

Field field_of(const Matrix& m);
bool is_finite(const Matrix& m);

/// Throws NotFinite if any entry is NaN or infinite.
void require_finite(const Matrix& m, const char* what);
void require_square(const Matrix& m, const char* what);

struct EigenDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // unitary, columns
};

inline constexpr double kDefaultHermitianTol = 1e-10;
inline constexpr double kDefaultPsdTol = 1e-9;

/// Hermitian eigendecomposition. The input is symmetrized as (M + M*)/2
/// before solving, so results are reproducible bit-for-bit for a given M.
EigenDecomposition hermitian_eig(const Matrix& m, double tol = kDefaultHermitianTol);

/// Eigenvalues only, ascending.
RealVector hermitian_eigenvalues(const Matrix& m, double tol = kDefaultHermitianTol);

/// Largest singular value. Hermitian inputs take the eigenvalue route.
double op_norm(const Matrix& m);

/// ||M - M*||.
double hermitian_defect(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol);

/// Principal square root of a PSD matrix. Eigenvalues in [-tol, 0) are
/// clamped to zero; anything below -tol is rejected with NotPSD.
Matrix psd_sqrt(const Matrix& m, double tol = kDefaultPsdTol);

/// Diagonal 0/1 matrix selecting the coordinates in `subset`.
Matrix coordinate_projection(std::span<const std::size_t> subset, std::size_t n);

enum class DiagMode { min, max };

/// min_i |t_ii| or max_i |t_ii|. The paving bounds all use max mode.
double delta_diag(const Matrix& t, DiagMode mode);

/// Rows and columns of `m` restricted to `idx` (in that order).
Matrix principal_submatrix(const Matrix& m, std::span<const std::size_t> idx);

/// True when ||P^2 - P|| and ||P - P*|| are both within tol.
bool is_projection(const Matrix& p, double tol);

}  // namespace kspave

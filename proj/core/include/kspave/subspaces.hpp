#pragma once

#include <cstddef>
#include <vector>

#include "kspave/certificate.hpp"
#include "kspave/frames.hpp"
#include "kspave/linalg.hpp"
#include "kspave/search.hpp"

namespace kspave {

inline constexpr double kBasisTol = 1e-8;
inline constexpr double kSurjectivityTol = 1e-8;
inline constexpr double kLargeTol = 1e-12;

/// Subspace H of C^n given by a spanning set; columns are orthonormalized
/// (modified Gram-Schmidt) on construction. Throws DependentBasis when a
/// column is within kBasisTol of the span of the previous ones.
class SubspaceModel {
 public:
  SubspaceModel(std::size_t ambient_dim, const Matrix& spanning);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return static_cast<std::size_t>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }
  const Matrix& projector() const { return projector_; }

  /// ||P e_i|| for every coordinate i.
  RealVector coordinate_norms() const;

 private:
  std::size_t ambient_dim_;
  Matrix basis_;
  Matrix projector_;
};

struct LargeReport {
  bool large = false;
  double min_norm = 0.0;
};

/// min_i ||P e_i|| and whether it is >= A - kLargeTol. Requires 0 < A <= 1.
LargeReport is_A_large(const SubspaceModel& h, double a);

/// Unit-norm frame {V* e_i / ||V* e_i||} in C^{dim H}; its Gram matrix is
/// the projector with rows and columns normalized. Throws NotLarge if some
/// ||P e_i|| <= kBasisTol.
Frame decomposition_frame(const SubspaceModel& h);

/// Riesz certificate of a coordinate partition, hashed against the subspace.
PartitionCertificate verify_decomposition_certificate(const SubspaceModel& h, const Partition& blocks, double epsilon,
                                                      double tol = kCertificateTol);

struct Decomposition {
  Partition blocks;
  /// Riesz certificate of the normalized frame {P e_i / ||P e_i||}.
  PartitionCertificate certificate;
  /// (6(A^2+1)/(eps A^2))^4 with A = min ||P e_i||.
  double reported_r = 0.0;
};

/// Partitions coordinates so each block's coordinate projection maps H onto
/// l2(block). Throws NotLarge if some ||P e_i|| <= kBasisTol.
Decomposition decompose(const SubspaceModel& h, double epsilon, const SearchBudget& budget);

/// True iff for every block S the rows of the basis indexed by S have
/// smallest singular value > kSurjectivityTol. Throws BadPartition.
bool verify_decomposition(const SubspaceModel& h, const Partition& blocks);

/// Smallest singular value of the |S| x dim(H) block of the basis (0 if |S| > dim H).
double block_surjectivity(const SubspaceModel& h, const IndexSet& block);

double decomposition_number_formula(double a, double epsilon);

}  // namespace kspave

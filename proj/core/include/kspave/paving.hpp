#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "kspave/certificate.hpp"
#include "kspave/frames.hpp"
#include "kspave/linalg.hpp"
#include "kspave/search.hpp"

namespace kspave {

/// Recomputes ||P_j T P_j|| for every block and judges against eps*||T||.
/// Throws BadPartition if the blocks overlap or miss an index.
PartitionCertificate verify_paving(const Matrix& t, const Partition& p, double epsilon,
                                   double tol = kCertificateTol);

/// As verify_paving, but against a fixed bound rather than eps*||M||.
PartitionCertificate verify_paving_absolute(const Matrix& m, const Partition& p, double bound, double epsilon,
                                            double tol = kCertificateTol);

/// Recomputes ||sum_{i in S_j} u_i u_i*|| for the columns of `vectors`.
PartitionCertificate verify_outer_sum(const Matrix& vectors, const Partition& p, double bound,
                                      double tol = kCertificateTol);

/// Fewest blocks (<= max_r) paving T at eps; ties go to the lexicographically
/// smallest canonical partition. nullopt means infeasible. n <= 14.
std::optional<PartitionCertificate> exhaustive_min_r(const Matrix& t, double epsilon, std::size_t max_r);

/// Local search for an r-block paving at eps. An invalid certificate is a
/// search failure and carries the best block norms found.
PartitionCertificate heuristic_paving(const Matrix& t, std::size_t r, double epsilon, const SearchBudget& budget);

/// Smallest r found: exhaustive for n <= 14, otherwise heuristic with r = 1, 2, ...
PartitionCertificate pave_min_r(const Matrix& t, double epsilon, const SearchBudget& budget);

/// (1/sqrt(r) + sqrt(delta))^2.
double mss_bound(std::size_t r, double delta);

/// Partition of a resolution of the identity sum u_i u_i* = I into r blocks,
/// each with ||sum u_i u_i*|| <= (1/sqrt(r) + sqrt(delta))^2, delta = max ||u_i||^2.
/// Exhaustive (min-max) when r^m <= kAutoExhaustiveColorings, heuristic otherwise.
PartitionCertificate mss_partition(const Frame& u, std::size_t r, const SearchBudget& budget);

inline constexpr std::uint64_t kAutoExhaustiveColorings = std::uint64_t{1} << 16;

/// Two-block split of a unit-norm eta-tight system with each block's frame
/// operator norm <= eta - theta.
PartitionCertificate weaver_partition(const Frame& u, double eta, double theta, const SearchBudget& budget);

/// Diagonal paving of an orthogonal projection through the vectors
/// u_i = V* e_i (V an orthonormal basis of range Q), so Q_ij = u_i* u_j.
/// Bound (1/sqrt(r) + sqrt(delta))^2 with delta the largest diagonal entry.
PartitionCertificate projection_paving(const Matrix& q, std::size_t r, const SearchBudget& budget);

/// P, I - P split with ||PQP||, ||(I-P)Q(I-P)|| <= 1 - eps. Throws
/// HypothesisFails unless (1/sqrt2 + sqrt(delta))^2 <= 1 - eps.
PartitionCertificate two_paving_projection(const Matrix& q, double epsilon, const SearchBudget& budget);

/// r-block diagonal paving of a projection at an absolute bound, without
/// the delta hypothesis. Used by two_paving_projection after its check.
PartitionCertificate pave_projection_absolute(const Matrix& q, std::size_t r, double bound,
                                              const SearchBudget& budget);

enum class LiftSign { plus, minus };

/// A = [[T, sqrt(I - T^2)], [sqrt(I - T^2), -T]], an involution (A^2 = I).
Matrix cekp_involution(const Matrix& t);

/// (I +- A)/2, an orthogonal projection of size 2n.
Matrix cekp_lift(const Matrix& t, LiftSign sign);

/// Paves a zero-diagonal self-adjoint T by paving both lifted projections at
/// (1+eps)/2, refining the two partitions and restricting to the first n
/// coordinates. The result is always re-verified directly on T.
PartitionCertificate pave_selfadjoint_via_projection(const Matrix& t, double epsilon, const SearchBudget& budget);

/// Splits T = A + iB into self-adjoint parts, paves each at eps/2 of its
/// own norm, refines, and verifies the refinement on T at eps.
PartitionCertificate pave_complex(const Matrix& t, double epsilon, const SearchBudget& budget);

/// (T - D, D) with D the diagonal part of T.
std::pair<Matrix, Matrix> normalize_zero_diag(const Matrix& t);

/// Universal paving number for zero-diagonal self-adjoint matrices:
/// (6/eps)^4 real, (6/eps)^8 complex. Reporting only.
double paving_number_formula(double epsilon, Field field);

}  // namespace kspave

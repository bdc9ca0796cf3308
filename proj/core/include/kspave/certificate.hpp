#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kspave/linalg.hpp"

namespace kspave {

using Partition = std::vector<IndexSet>;

enum class Verdict { valid, invalid };

/// How block norms are computed from the certified subject.
enum class CertificateKind {
  paving,     // ||P_j M P_j|| for a square matrix M
  outer_sum,  // ||sum_{i in S_j} u_i u_i*|| for a vector system
  riesz,      // ||P_j (I - G) P_j|| for the Gram matrix of a unit-norm system
  band,       // ||P_j (I - G/|E|) P_j|| for a Fourier-frame Gram matrix
};

/// Whether `bound` is epsilon * ||subject|| or a fixed number.
enum class BoundRule { relative, absolute };

struct ClassBounds {
  double lower = 0.0;
  double upper = 0.0;
};

inline constexpr double kCertificateTol = 1e-9;

/// A partition of [m] together with the block norms it achieves and the
/// bound each block must meet. Valid iff every block norm <= bound + tolerance.
///
/// Riesz and band certificates also carry per-class eigenvalue ranges of the
/// relevant Gram compression. Indices are 0-based.
struct PartitionCertificate {
  std::string subject_hash;
  CertificateKind kind = CertificateKind::paving;
  BoundRule bound_rule = BoundRule::relative;
  Partition partition;
  double epsilon = 0.0;
  double bound = 0.0;
  std::vector<double> block_norms;
  double tolerance = kCertificateTol;
  Verdict verdict = Verdict::invalid;
  double scale = 1.0;
  std::uint64_t seed = 0;
  std::vector<ClassBounds> class_bounds;
  std::optional<std::size_t> freq_window;
  /// Universal-constant partition size from the theory, for reporting only.
  std::optional<double> reported_r;

  std::size_t r() const { return partition.size(); }
  bool valid() const { return verdict == Verdict::valid; }
  double max_block_norm() const;
};

/// Riesz certificates are partition certificates of kind `riesz`: block
/// norms are ||(I - G)_S|| against bound epsilon, and class_bounds hold the
/// extreme Gram eigenvalues of each class.
using RieszCertificate = PartitionCertificate;

/// Sort each block, drop empty blocks, order blocks by smallest element.
Partition canonicalize(Partition p);

/// Throws BadPartition unless the blocks are disjoint and cover [n].
void validate_partition(const Partition& p, std::size_t n);

/// Lexicographic order on canonical partitions (block lists compared as
/// sequences of sorted index lists).
bool canonical_less(const Partition& a, const Partition& b);

/// Verdict from block norms, bound and tolerance.
Verdict judge(const std::vector<double>& norms, double bound, double tol);

/// 64-bit FNV-1a digest (hex) over a type tag, dimensions and raw entries.
std::string subject_digest(std::string_view tag, const Matrix& m);

std::string_view to_string(CertificateKind kind);
std::string_view to_string(Verdict v);
std::string_view to_string(BoundRule rule);

}  // namespace kspave

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "kspave/certificate.hpp"
#include "kspave/linalg.hpp"

namespace kspave {

/// Limits for the randomized searches.
///
/// Each restart evaluates at most min(10*m*r, max_partitions) candidate
/// partitions. Restarts run in fixed waves of `kWaveSize`; the search stops
/// after the first wave containing a success. Workers only change who runs a
/// restart, never its result, so the outcome is independent of parallelism.
struct SearchBudget {
  std::size_t max_partitions = std::size_t{1} << 20;
  std::size_t restarts = 64;
  std::uint64_t seed = 0;
  std::size_t parallelism = 1;

  static constexpr std::size_t kWaveSize = 8;
  static constexpr std::size_t kMovesPerIndexBlock = 10;

  void validate() const;
  std::size_t moves_per_restart(std::size_t m, std::size_t r) const;
};

/// A monotone block cost: adding an index to a block never lowers its norm.
/// Principal-submatrix norms of PSD matrices and outer-sum norms qualify;
/// so do op norms of principal submatrices of any matrix.
struct BlockObjective {
  std::size_t size = 0;
  std::function<double(std::span<const std::size_t>)> norm;
};

/// ||M_S|| over principal submatrices of a square matrix.
BlockObjective submatrix_objective(const Matrix& m);

/// ||sum_{i in S} u_i u_i*|| for the columns u_i of `vectors`.
BlockObjective outer_sum_objective(const Matrix& vectors);

struct SearchOutcome {
  Partition partition;  // canonical
  std::vector<double> block_norms;
  double max_norm = 0.0;
  bool success = false;
};

/// Subset-DP exhaustive search for the fewest blocks with every block norm
/// <= bound + tol. Among partitions with that many blocks, returns the
/// lexicographically smallest canonical one. nullopt when more than max_r
/// blocks would be needed. Throws TooLarge above kMaxExhaustiveSize.
std::optional<Partition> exhaustive_min_blocks(const BlockObjective& obj, double bound, double tol,
                                               std::size_t max_r);

inline constexpr std::size_t kMaxExhaustiveSize = 14;
inline constexpr std::uint64_t kMaxColorings = std::uint64_t{1} << 24;

/// Branch-and-bound over r-colorings minimizing the largest block norm.
/// Ties go to the canonically smallest partition. `upper_hint`, if given,
/// must be >= the optimum; it only speeds up pruning.
SearchOutcome exhaustive_min_max(const BlockObjective& obj, std::size_t r,
                                 std::optional<double> upper_hint = std::nullopt);

/// Randomized restarts with single-index moves and swaps, minimizing the
/// sorted vector of block norms (largest first). Succeeds when the largest
/// block norm is <= bound + tol.
SearchOutcome local_search(const BlockObjective& obj, std::size_t r, double bound, double tol,
                           const SearchBudget& budget);

/// Fewest blocks meeting the bound: exhaustive when size <= 14, otherwise
/// local search for r = 1, 2, ... up to max_r. On failure returns the best
/// outcome found at max_r.
SearchOutcome min_blocks_search(const BlockObjective& obj, double bound, double tol,
                                const SearchBudget& budget, std::size_t max_r);

/// Block norms of a partition under an objective.
std::vector<double> block_norms(const BlockObjective& obj, const Partition& p);

/// Common refinement of two partitions of the same index set.
Partition common_refinement(const Partition& a, const Partition& b);

}  // namespace kspave

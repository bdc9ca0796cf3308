#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kspave/certificate.hpp"
#include "kspave/frames.hpp"
#include "kspave/linalg.hpp"
#include "kspave/search.hpp"

namespace kspave {

/// Extreme eigenvalues of the Gram matrix of the columns of `vectors`:
/// the optimal lower and upper Riesz bounds.
FrameBounds riesz_bounds(const Matrix& vectors);

/// Recomputes class bounds and ||(I - G)_S|| for a unit-norm system and
/// judges every class against [1 - eps, 1 + eps].
RieszCertificate verify_riesz(const Frame& f, const Partition& classes, double epsilon,
                              double tol = kCertificateTol);

/// Partition of a unit-norm system into eps-Riesz classes, found by paving
/// I - G at absolute level eps with the fewest blocks (exhaustive for
/// m <= 14). reported_r is (6(B+1)/eps)^4 real / ^8 complex with B = ||G||.
RieszCertificate feichtinger_partition(const Frame& f, double epsilon, const SearchBudget& budget);

struct SubsetSearchResult {
  IndexSet subset;
  double achieved_lower_bound = 0.0;
  /// |sigma| * ||T||^2 / n, the empirical restricted-invertibility constant.
  double ratio = 0.0;
};

inline constexpr std::size_t kMaxSubsetSearchSize = 18;

/// Largest column subset of T whose Gram matrix has smallest eigenvalue >= A.
/// Among maximum subsets the lexicographically smallest is returned.
/// Columns must have unit norm; n <= 18.
SubsetSearchResult bt_subset_search(const Matrix& t, double a);

/// feichtinger_partition applied to the columns of T. reported_r uses
/// B = ||T||.
RieszCertificate bt_partition(const Matrix& t, double epsilon, const SearchBudget& budget);

/// ||a||_2 + sup |a_i|.
double renorm(std::span<const double> coefficients);

/// Renormed length of sum a_i f_i with f_i = (e_{2i} + e_{2i+1})/(sqrt2 + 1)
/// and a_i = 1/sqrt(n) over n indices: (sqrt2 + 1/sqrt(n))/(sqrt2 + 1).
double renorm_value(std::size_t n);

/// Limit of renorm_value as n grows: sqrt2/(sqrt2 + 1).
double renorm_limit();

/// Splits a unit-norm Bessel system into non-spanning sets: every spanning
/// eps-Riesz class loses its first vector to a singleton set.
/// Throws InvalidArgument in dimension 1, where singletons already span.
std::vector<IndexSet> sundberg_split(const Frame& f, double epsilon, const SearchBudget& budget);

/// Riesz-class partition size from the theory: (6(B+1)/eps)^4 real, ^8 complex.
double riesz_number_formula(double bessel_bound, double epsilon, Field field);

}  // namespace kspave

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "kspave/certificate.hpp"
#include "kspave/linalg.hpp"
#include "kspave/search.hpp"

namespace kspave {

/// A finite union of disjoint subintervals of [0,1], normalized on
/// construction: sorted, with overlapping or touching pieces merged.
class IntervalSet {
 public:
  using Interval = std::pair<double, double>;

  explicit IntervalSet(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const { return intervals_; }
  double measure() const { return measure_; }
  bool single_interval() const { return intervals_.size() == 1; }

 private:
  std::vector<Interval> intervals_;
  double measure_ = 0.0;
};

/// Frequencies -N..N, in increasing order; position p holds frequency p - N.
class FreqWindow {
 public:
  explicit FreqWindow(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t size() const { return 2 * n_ + 1; }
  std::int64_t frequency(std::size_t position) const {
    return static_cast<std::int64_t>(position) - static_cast<std::int64_t>(n_);
  }
  std::vector<std::int64_t> frequencies() const;

 private:
  std::size_t n_;
};

/// Fourier coefficient of the indicator of E: integral over E of e^{-2 pi i k t} dt.
/// Closed form per interval; phases are reduced mod 1 before scaling by 2 pi.
Complex chi_hat(const IntervalSet& e, std::int64_t k);

/// Gram matrix of the Fourier frame {e^{2 pi i n t} chi_E} over the window:
/// entry (p, q) = <f_{n_p}, f_{n_q}> = chi_hat(E, n_q - n_p). Toeplitz by
/// construction, with constant diagonal |E|.
Matrix fourier_gram(const IntervalSet& e, const FreqWindow& w);

/// Recomputes per-class Gram compressions for a Fourier-frame partition and
/// judges each against [(1-eps)|E|, (1+eps)|E|].
PartitionCertificate verify_band(const IntervalSet& e, const FreqWindow& w, const Partition& classes, double epsilon,
                                 double tol = kCertificateTol);

/// Residue classes mod r of the window frequencies, as window positions.
Partition residue_partition(const FreqWindow& w, std::size_t r);

inline constexpr double kBandTol = 1e-12;

/// Checks the arithmetic-progression partition {n r + j} of the window for a
/// single interval E = [a,b].
PartitionCertificate ap_partition_check(const IntervalSet& e, std::size_t r, double epsilon, const FreqWindow& w,
                                        double tol = kBandTol);

/// Fewest classes with every class compression inside the band, searching
/// paving of I - G/|E| (exhaustive for windows of <= 14 frequencies).
/// reported_r is (6(|E|+1)/(eps |E|))^8.
PartitionCertificate general_set_partition(const IntervalSet& e, double epsilon, const FreqWindow& w,
                                           const SearchBudget& budget);

double fourier_partition_formula(double measure, double epsilon);

struct SyndeticReport {
  /// Smallest p such that every run of p consecutive window integers meets S.
  std::size_t gap_length = 0;
  /// {0, ..., p-1}: shifts whose translates of S cover the window up to max S.
  std::vector<std::int64_t> witness_shifts;
  std::size_t window = 0;
  /// p <= r when an r was supplied.
  std::optional<bool> within_r;
};

/// Gap analysis of an integer set restricted to the window. Throws EmptySet
/// when no element of S falls in the window.
SyndeticReport syndetic_analyze(const std::vector<std::int64_t>& s, const FreqWindow& w,
                                std::optional<std::size_t> r = std::nullopt);

/// Frequencies of a block of window positions.
std::vector<std::int64_t> block_frequencies(const FreqWindow& w, const IndexSet& positions);

}  // namespace kspave

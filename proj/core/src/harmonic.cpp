#include "kspave/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "kspave/error.hpp"
#include "kspave/paving.hpp"

namespace kspave {
namespace {

// e^{-2 pi i x}, with x reduced to [-1/2, 1/2] first.
Complex unit_phase(double x) {
  const double reduced = x - std::round(x);
  const double angle = -2.0 * std::numbers::pi * reduced;
  return {std::cos(angle), std::sin(angle)};
}

std::string window_tag(const FreqWindow& w) { return "fourier:" + std::to_string(w.n()); }

Matrix interval_matrix(const IntervalSet& e) {
  Matrix m(static_cast<Eigen::Index>(e.intervals().size()), 2);
  for (std::size_t k = 0; k < e.intervals().size(); ++k) {
    m(static_cast<Eigen::Index>(k), 0) = e.intervals()[k].first;
    m(static_cast<Eigen::Index>(k), 1) = e.intervals()[k].second;
  }
  return m;
}

}  // namespace

IntervalSet::IntervalSet(std::vector<Interval> intervals) {
  for (const auto& [a, b] : intervals) {
    if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b > 1.0 || !(a < b)) {
      throw Error(ErrorCode::InvalidArgument,
                  "interval [" + std::to_string(a) + "," + std::to_string(b) + "] must satisfy 0 <= a < b <= 1");
    }
  }
  if (intervals.empty()) throw Error(ErrorCode::EmptySet, "interval set has no intervals");
  std::sort(intervals.begin(), intervals.end());
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.first <= intervals_.back().second) {
      intervals_.back().second = std::max(intervals_.back().second, iv.second);
    } else {
      intervals_.push_back(iv);
    }
  }
  for (const auto& [a, b] : intervals_) measure_ += b - a;
}

FreqWindow::FreqWindow(std::size_t n) : n_(n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "frequency window N must be at least 1");
}

std::vector<std::int64_t> FreqWindow::frequencies() const {
  std::vector<std::int64_t> out(size());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = frequency(p);
  return out;
}

Complex chi_hat(const IntervalSet& e, std::int64_t k) {
  if (k == 0) return {e.measure(), 0.0};
  const double kk = static_cast<double>(k);
  const Complex denom(0.0, -2.0 * std::numbers::pi * kk);
  Complex sum(0.0, 0.0);
  for (const auto& [a, b] : e.intervals()) sum += (unit_phase(kk * b) - unit_phase(kk * a)) / denom;
  return sum;
}

Matrix fourier_gram(const IntervalSet& e, const FreqWindow& w) {
  const auto size = static_cast<Eigen::Index>(w.size());
  const auto n = static_cast<std::int64_t>(w.n());
  // Lags run from -2N to 2N.
  std::vector<Complex> lag(static_cast<std::size_t>(4 * n + 1));
  for (std::int64_t d = -2 * n; d <= 2 * n; ++d) lag[static_cast<std::size_t>(d + 2 * n)] = chi_hat(e, d);
  Matrix g(size, size);
  for (Eigen::Index p = 0; p < size; ++p) {
    for (Eigen::Index q = 0; q < size; ++q) g(p, q) = lag[static_cast<std::size_t>(q - p + 2 * n)];
  }
  return g;
}

PartitionCertificate verify_band(const IntervalSet& e, const FreqWindow& w, const Partition& classes, double epsilon,
                                 double tol) {
  const Matrix g = fourier_gram(e, w);
  const double measure = e.measure();
  const Matrix defect = Matrix::Identity(g.rows(), g.cols()) - g / measure;
  PartitionCertificate cert = verify_paving_absolute(defect, classes, epsilon, epsilon, tol);
  cert.kind = CertificateKind::band;
  cert.subject_hash = subject_digest(window_tag(w), interval_matrix(e));
  cert.freq_window = w.n();
  cert.scale = measure;
  cert.class_bounds.clear();
  const double lo = (1.0 - epsilon) * measure;
  const double hi = (1.0 + epsilon) * measure;
  bool inside = true;
  for (const auto& block : cert.partition) {
    const RealVector ev = hermitian_eigenvalues(principal_submatrix(g, block));
    const ClassBounds b{ev(0), ev(ev.size() - 1)};
    inside = inside && b.lower >= lo - tol && b.upper <= hi + tol;
    cert.class_bounds.push_back(b);
  }
  cert.verdict = inside ? Verdict::valid : Verdict::invalid;
  return cert;
}

Partition residue_partition(const FreqWindow& w, std::size_t r) {
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  Partition p(r);
  const auto rr = static_cast<std::int64_t>(r);
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    const std::int64_t residue = ((w.frequency(pos) % rr) + rr) % rr;
    p[static_cast<std::size_t>(residue)].push_back(pos);
  }
  return canonicalize(std::move(p));
}

PartitionCertificate ap_partition_check(const IntervalSet& e, std::size_t r, double epsilon, const FreqWindow& w,
                                        double tol) {
  if (!e.single_interval()) throw Error(ErrorCode::NotSingleInterval, "arithmetic-progression check needs E = [a,b]");
  return verify_band(e, w, residue_partition(w, r), epsilon, tol);
}

PartitionCertificate general_set_partition(const IntervalSet& e, double epsilon, const FreqWindow& w,
                                           const SearchBudget& budget) {
  if (!(e.measure() > 0.0)) throw Error(ErrorCode::InvalidArgument, "E must have positive measure");
  const Matrix g = fourier_gram(e, w);
  const Matrix defect = Matrix::Identity(g.rows(), g.cols()) - g / e.measure();
  const SearchOutcome out = min_blocks_search(submatrix_objective(defect), epsilon, kCertificateTol, budget, w.size());
  PartitionCertificate cert = verify_band(e, w, out.partition, epsilon);
  cert.seed = budget.seed;
  cert.reported_r = fourier_partition_formula(e.measure(), epsilon);
  return cert;
}

double fourier_partition_formula(double measure, double epsilon) {
  return std::pow(6.0 * (measure + 1.0) / (epsilon * measure), 8.0);
}

SyndeticReport syndetic_analyze(const std::vector<std::int64_t>& s, const FreqWindow& w,
                                std::optional<std::size_t> r) {
  const auto lo = -static_cast<std::int64_t>(w.n());
  const auto hi = static_cast<std::int64_t>(w.n());
  std::set<std::int64_t> inside;
  for (std::int64_t x : s) {
    if (x >= lo && x <= hi) inside.insert(x);
  }
  if (inside.empty()) throw Error(ErrorCode::EmptySet, "set has no elements inside the window");

  // Longest run of window integers missing from S, plus one.
  std::int64_t longest_hole = *inside.begin() - lo;
  longest_hole = std::max(longest_hole, hi - *inside.rbegin());
  std::int64_t prev = *inside.begin();
  for (auto it = std::next(inside.begin()); it != inside.end(); ++it) {
    longest_hole = std::max(longest_hole, *it - prev - 1);
    prev = *it;
  }
  SyndeticReport report;
  report.gap_length = static_cast<std::size_t>(longest_hole + 1);
  report.window = w.n();
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(report.gap_length); ++k) report.witness_shifts.push_back(k);
  if (r) report.within_r = report.gap_length <= *r;
  return report;
}

std::vector<std::int64_t> block_frequencies(const FreqWindow& w, const IndexSet& positions) {
  std::vector<std::int64_t> out;
  out.reserve(positions.size());
  for (std::size_t p : positions) out.push_back(w.frequency(p));
  return out;
}

}  // namespace kspave

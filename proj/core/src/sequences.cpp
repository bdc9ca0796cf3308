#include "kspave/sequences.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "kspave/error.hpp"
#include "kspave/paving.hpp"

namespace kspave {
namespace {

constexpr double kUnitNormTol = 1e-8;
constexpr double kSpanTol = 1e-9;

void require_unit_columns(const Matrix& vectors) {
  const RealVector norms = vectors.colwise().norm();
  for (Eigen::Index i = 0; i < norms.size(); ++i) {
    if (std::abs(norms(i) - 1.0) > kUnitNormTol) {
      throw Error(ErrorCode::NotUnitNorm, "vector " + std::to_string(i) + " has norm " + std::to_string(norms(i)));
    }
  }
}

Matrix columns(const Matrix& m, std::span<const std::size_t> idx) {
  Matrix out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = m.col(static_cast<Eigen::Index>(idx[k]));
  }
  return out;
}

Matrix defect_from_identity(const Matrix& g) { return Matrix::Identity(g.rows(), g.cols()) - g; }

}  // namespace

FrameBounds riesz_bounds(const Matrix& vectors) {
  if (vectors.cols() < 1) throw Error(ErrorCode::InvalidArgument, "need at least one vector");
  Matrix g = vectors.adjoint() * vectors;
  g = (g + g.adjoint()) / 2.0;
  const RealVector ev = hermitian_eigenvalues(g);
  return {std::max(ev(0), 0.0), std::max(ev(ev.size() - 1), 0.0)};
}

RieszCertificate verify_riesz(const Frame& f, const Partition& classes, double epsilon, double tol) {
  require_unit_columns(f.synthesis());
  const Matrix defect = defect_from_identity(f.gram());
  RieszCertificate cert = verify_paving_absolute(defect, classes, epsilon, epsilon, tol);
  cert.kind = CertificateKind::riesz;
  cert.subject_hash = subject_digest("vectors", f.synthesis());
  cert.class_bounds.clear();
  for (const auto& block : cert.partition) {
    const FrameBounds b = riesz_bounds(columns(f.synthesis(), block));
    cert.class_bounds.push_back({b.lower, b.upper});
  }
  const bool inside = std::all_of(cert.class_bounds.begin(), cert.class_bounds.end(), [&](const ClassBounds& b) {
    return b.lower >= 1.0 - epsilon - tol && b.upper <= 1.0 + epsilon + tol;
  });
  cert.verdict = inside ? Verdict::valid : Verdict::invalid;
  return cert;
}

RieszCertificate feichtinger_partition(const Frame& f, double epsilon, const SearchBudget& budget) {
  require_unit_columns(f.synthesis());
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0,1)");
  const Matrix defect = defect_from_identity(f.gram());
  const SearchOutcome out =
      min_blocks_search(submatrix_objective(defect), epsilon, kCertificateTol, budget, f.size());
  RieszCertificate cert = verify_riesz(f, out.partition, epsilon);
  cert.seed = budget.seed;
  cert.reported_r = riesz_number_formula(op_norm(f.gram()), epsilon, f.field());
  return cert;
}

SubsetSearchResult bt_subset_search(const Matrix& t, double a) {
  require_unit_columns(t);
  const auto n = static_cast<std::size_t>(t.cols());
  if (n > kMaxSubsetSearchSize) {
    throw Error(ErrorCode::TooLarge, "subset search limited to n <= " + std::to_string(kMaxSubsetSearchSize));
  }
  Matrix g = t.adjoint() * t;
  g = (g + g.adjoint()) / 2.0;

  auto lowest = [&](const IndexSet& s) { return hermitian_eigenvalues(principal_submatrix(g, s))(0); };

  // Depth-first over subsets in lexicographic order. The smallest Gram
  // eigenvalue can only drop as columns are added, so infeasible prefixes
  // are cut; the first subset found at each new size is the lex-smallest.
  IndexSet best;
  double best_bound = 0.0;
  IndexSet current;
  auto dfs = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t j = start; j < n; ++j) {
      if (current.size() + 1 + (n - j - 1) <= best.size()) return;
      current.push_back(j);
      const double low = lowest(current);
      if (low >= a) {
        if (current.size() > best.size()) {
          best = current;
          best_bound = low;
        }
        self(self, j + 1);
      }
      current.pop_back();
    }
  };
  dfs(dfs, 0);

  SubsetSearchResult out;
  out.subset = best;
  out.achieved_lower_bound = best.empty() ? 0.0 : best_bound;
  const double norm = op_norm(t);
  out.ratio = n ? static_cast<double>(best.size()) * norm * norm / static_cast<double>(n) : 0.0;
  return out;
}

RieszCertificate bt_partition(const Matrix& t, double epsilon, const SearchBudget& budget) {
  const Frame columns_frame(t);
  RieszCertificate cert = feichtinger_partition(columns_frame, epsilon, budget);
  cert.reported_r = riesz_number_formula(op_norm(t), epsilon, field_of(t));
  return cert;
}

double renorm(std::span<const double> coefficients) {
  double sum_sq = 0.0;
  double sup = 0.0;
  for (double c : coefficients) {
    sum_sq += c * c;
    sup = std::max(sup, std::abs(c));
  }
  return std::sqrt(sum_sq) + sup;
}

double renorm_value(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
  const double root2 = std::sqrt(2.0);
  return (root2 + 1.0 / std::sqrt(static_cast<double>(n))) / (root2 + 1.0);
}

double renorm_limit() {
  const double root2 = std::sqrt(2.0);
  return root2 / (root2 + 1.0);
}

std::vector<IndexSet> sundberg_split(const Frame& f, double epsilon, const SearchBudget& budget) {
  if (f.dim() < 2) throw Error(ErrorCode::InvalidArgument, "non-spanning sets need dimension >= 2");
  const RieszCertificate cert = feichtinger_partition(f, epsilon, budget);
  if (!cert.valid()) throw Error(ErrorCode::InvalidArgument, "no eps-Riesz partition found");

  auto spans = [&](const IndexSet& s) {
    return frame_bounds(Frame(columns(f.synthesis(), s))).lower > kSpanTol;
  };
  std::vector<IndexSet> out;
  for (const IndexSet& cls : cert.partition) {
    if (!spans(cls)) {
      out.push_back(cls);
      continue;
    }
    out.push_back({cls.front()});
    out.emplace_back(cls.begin() + 1, cls.end());
  }
  for (const IndexSet& s : out) {
    if (spans(s)) throw Error(ErrorCode::InvalidArgument, "internal: a returned set spans");
  }
  std::sort(out.begin(), out.end());
  return out;
}

double riesz_number_formula(double bessel_bound, double epsilon, Field field) {
  return std::pow(6.0 * (bessel_bound + 1.0) / epsilon, field == Field::real ? 4.0 : 8.0);
}

}  // namespace kspave

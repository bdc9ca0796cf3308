#pragma once

#include <cstddef>
#include <vector>

#include "kspave/linalg.hpp"

namespace kspave {

/// An ordered list of m vectors in C^d, stored as the d x m synthesis
/// matrix T (column i is f_i). The frame operator S = T T* and the Gram
/// matrix G = T* T are computed once on construction.
///
/// Zero vectors are allowed; they arise from projecting a frame.
class Frame {
 public:
  explicit Frame(Matrix synthesis);
  static Frame from_vectors(const std::vector<Vector>& vectors);

  std::size_t dim() const { return static_cast<std::size_t>(synthesis_.rows()); }
  std::size_t size() const { return static_cast<std::size_t>(synthesis_.cols()); }

  Vector vector(std::size_t i) const { return synthesis_.col(static_cast<Eigen::Index>(i)); }
  const Matrix& synthesis() const { return synthesis_; }
  const Matrix& frame_operator() const { return frame_operator_; }
  /// G(i,j) = f_i* f_j, so column i of G is the analysis image T* f_i.
  const Matrix& gram() const { return gram_; }

  Field field() const { return field_of(synthesis_); }

 private:
  Matrix synthesis_;
  Matrix frame_operator_;
  Matrix gram_;
};

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

inline constexpr double kParsevalTol = 1e-8;
inline constexpr double kFrameTol = 1e-9;
inline constexpr double kSubspaceDistanceTol = 1e-8;

const Matrix& frame_operator(const Frame& f);
const Matrix& gram(const Frame& f);

/// Extreme eigenvalues of the frame operator, clamped below at zero.
FrameBounds frame_bounds(const Frame& f);

/// Frame bounds of the frame operator compressed to range(p).
/// A zero projection gives the vacuous bounds (0, 0).
FrameBounds frame_bounds_on_range(const Frame& f, const Matrix& p);

bool is_parseval(const Frame& f, double tol = kParsevalTol);

/// {S^{-1/2} f_i}. Throws NotAFrame when the lower frame bound is <= tol.
Frame canonical_parseval(const Frame& f, double tol = kFrameTol);

/// Gram projection of a Parseval frame: P(e_i) = T* f_i.
Matrix naimark_dilate(const Frame& f, double tol = kParsevalTol);

/// {P f_i}. P must be an orthogonal projection on C^d.
Frame project_frame(const Frame& f, const Matrix& p, double tol = kParsevalTol);

/// Orthonormal basis (columns) of ker T, where T is the synthesis map.
Matrix synthesis_kernel(const Frame& f);

/// True iff the synthesis kernels coincide, checked by mutual containment
/// of orthonormal kernel bases.
bool frames_isomorphic(const Frame& f, const Frame& g, double tol = kSubspaceDistanceTol);

/// Sum of squared vector norms; equals trace(S).
double total_energy(const Frame& f);

}  // namespace kspave

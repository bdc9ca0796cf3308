#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kspave/error.hpp"
#include "kspave/frames.hpp"
#include "kspave/generators.hpp"
#include "oracles.hpp"

using namespace kspave;

namespace {

Matrix columns(std::initializer_list<std::initializer_list<double>> vecs, Eigen::Index dim) {
  Matrix t(dim, static_cast<Eigen::Index>(vecs.size()));
  Eigen::Index c = 0;
  for (const auto& v : vecs) {
    Eigen::Index r = 0;
    for (double x : v) t(r++, c) = x;
    ++c;
  }
  return t;
}

Frame mercedes_benz() {
  Matrix t(2, 3);
  for (int k = 0; k < 3; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 3.0;
    t(0, k) = std::sqrt(2.0 / 3.0) * std::cos(a);
    t(1, k) = std::sqrt(2.0 / 3.0) * std::sin(a);
  }
  return Frame(t);
}

Matrix outer_sum(const Frame& f) {
  Matrix s = Matrix::Zero(static_cast<Eigen::Index>(f.dim()), static_cast<Eigen::Index>(f.dim()));
  for (std::size_t i = 0; i < f.size(); ++i) s += f.vector(i) * f.vector(i).adjoint();
  return s;
}

}  // namespace

TEST(FrameOperator, Examples) {
  EXPECT_LE((frame_operator(Frame(Matrix::Identity(4, 4))) - Matrix::Identity(4, 4)).norm(), 1e-15);
  const Frame dup(columns({{1, 0}, {1, 0}, {0, 1}}, 2));
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 2.0;
  expected(1, 1) = 1.0;
  EXPECT_LE((frame_operator(dup) - expected).norm(), 1e-15);
  EXPECT_LE((frame_operator(mercedes_benz()) - Matrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(FrameOperator, MatchesOuterProductSum) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Frame f = gen::gaussian_frame(1 + seed % 4, 1 + seed % 9, seed, seed % 2 ? Field::complex : Field::real);
    EXPECT_LE((frame_operator(f) - outer_sum(f)).norm(), 1e-12);
  }
}

TEST(Gram, Examples) {
  EXPECT_LE((gram(Frame(Matrix::Identity(3, 3))) - Matrix::Identity(3, 3)).norm(), 1e-15);
  const Matrix g = gram(Frame(columns({{1}, {1}}, 1)));
  EXPECT_LE((g - Matrix::Ones(2, 2)).norm(), 1e-15);
  const Matrix mb = gram(mercedes_benz());
  for (Eigen::Index i = 0; i < 3; ++i) EXPECT_NEAR(mb(i, i).real(), 2.0 / 3.0, 1e-15);
  EXPECT_LE(op_norm(mb * mb - mb), 1e-10);
}

TEST(Gram, EntriesAreInnerProducts) {
  const Frame f = gen::gaussian_frame(3, 5, 7, Field::complex);
  const Matrix g = gram(f);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      // <f_j, f_i> with the inner product linear in the first slot.
      const Complex ip = f.vector(i).dot(f.vector(j));
      EXPECT_NEAR(std::abs(g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - ip), 0.0, 1e-13);
    }
  }
}

TEST(FrameBounds, Examples) {
  const FrameBounds onb = frame_bounds(Frame(Matrix::Identity(3, 3)));
  EXPECT_DOUBLE_EQ(onb.lower, 1.0);
  EXPECT_DOUBLE_EQ(onb.upper, 1.0);
  const FrameBounds dup = frame_bounds(Frame(columns({{1, 0}, {1, 0}, {0, 1}}, 2)));
  EXPECT_NEAR(dup.lower, 1.0, 1e-14);
  EXPECT_NEAR(dup.upper, 2.0, 1e-14);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FrameBounds p = frame_bounds(gen::parseval(3, 7, seed));
    EXPECT_NEAR(p.lower, 1.0, 1e-9);
    EXPECT_NEAR(p.upper, 1.0, 1e-9);
  }
}

TEST(FrameBounds, QuadraticFormSandwich) {
  // A||x||^2 <= sum |<x, f_i>|^2 <= B||x||^2 on random probes.
  const Frame f = gen::gaussian_frame(3, 6, 11, Field::complex);
  const FrameBounds b = frame_bounds(f);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Vector x = gen::gaussian_frame(3, 1, 100 + seed, Field::complex).vector(0);
    const double energy = (f.synthesis().adjoint() * x).squaredNorm();
    EXPECT_GE(energy, b.lower * x.squaredNorm() - 1e-10);
    EXPECT_LE(energy, b.upper * x.squaredNorm() + 1e-10);
  }
}

TEST(CanonicalParseval, Examples) {
  const Frame p = gen::parseval(3, 5, 4);
  EXPECT_LE((canonical_parseval(p).synthesis() - p.synthesis()).norm(), 1e-10);

  const Frame dup(columns({{1, 0}, {1, 0}, {0, 1}}, 2));
  const Matrix expected = columns({{1 / std::sqrt(2.0), 0}, {1 / std::sqrt(2.0), 0}, {0, 1}}, 2);
  EXPECT_LE((canonical_parseval(dup).synthesis() - expected).norm(), 1e-14);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Frame f = gen::gaussian_frame(3, 6, seed, Field::complex);
    const Frame c = canonical_parseval(f);
    EXPECT_TRUE(is_parseval(c, 1e-9));
    EXPECT_LE((canonical_parseval(c).synthesis() - c.synthesis()).norm(), 1e-9);
  }
}

TEST(CanonicalParseval, RejectsNonSpanning) {
  try {
    canonical_parseval(Frame(columns({{1, 0}, {1, 0}}, 2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAFrame);
  }
}

TEST(Naimark, Examples) {
  EXPECT_LE((naimark_dilate(Frame(Matrix::Identity(3, 3))) - Matrix::Identity(3, 3)).norm(), 1e-15);
  const Matrix p = naimark_dilate(mercedes_benz());
  EXPECT_EQ(p.rows(), 3);
  EXPECT_NEAR(p.trace().real(), 2.0, 1e-12);
  EXPECT_LE(op_norm(p * p - p), 1e-10);
  for (Eigen::Index i = 0; i < 3; ++i) EXPECT_NEAR(p(i, i).real(), 2.0 / 3.0, 1e-14);
  Matrix one(1, 1);
  one(0, 0) = 1.0;
  EXPECT_EQ(naimark_dilate(Frame(one)), one);
}

TEST(Naimark, ColumnsAreAnalysisImages) {
  const Frame f = gen::parseval(2, 5, 3, Field::complex);
  const Matrix p = naimark_dilate(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Vector analysis = f.synthesis().adjoint() * f.vector(i);
    EXPECT_LE((p.col(static_cast<Eigen::Index>(i)) - analysis).norm(), 1e-12);
  }
  EXPECT_NEAR(p.trace().real(), 2.0, 1e-8);
}

TEST(Naimark, RejectsNonParseval) {
  try {
    naimark_dilate(Frame(columns({{1, 0}, {1, 0}, {0, 1}}, 2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotParseval);
  }
}

TEST(ProjectFrame, Examples) {
  const Frame onb(Matrix::Identity(3, 3));
  EXPECT_EQ(project_frame(onb, Matrix::Identity(3, 3)).synthesis(), onb.synthesis());
  EXPECT_EQ(project_frame(onb, Matrix::Zero(3, 3)).synthesis(), Matrix(Matrix::Zero(3, 3)));

  Matrix p = Matrix::Zero(3, 3);
  p(0, 0) = p(1, 1) = 1.0;
  const Frame q = project_frame(onb, p);
  EXPECT_EQ(q.synthesis(), columns({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}, 3));
  const FrameBounds b = frame_bounds_on_range(q, p);
  EXPECT_NEAR(b.lower, 1.0, 1e-14);
  EXPECT_NEAR(b.upper, 1.0, 1e-14);
  try {
    project_frame(onb, Matrix::Ones(3, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAProjection);
  }
}

TEST(ProjectFrame, BoundsOnRangeStayWithinInputBounds) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Frame f = gen::gaussian_frame(4, 7, seed);
    const Matrix p = gen::projection(4, 2, seed + 50);
    const FrameBounds in = frame_bounds(f);
    const FrameBounds out = frame_bounds_on_range(project_frame(f, p), p);
    EXPECT_GE(out.lower, in.lower - 1e-9);
    EXPECT_LE(out.upper, in.upper + 1e-9);
  }
}

TEST(ProjectFrame, CompressedBasisIsParsevalOnRange) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix p = gen::projection(5, 3, seed, Field::complex);
    const Frame q = project_frame(Frame(Matrix::Identity(5, 5)), p);
    EXPECT_LE(op_norm(frame_operator(q) - p), 1e-9);
  }
}

TEST(FramesIsomorphic, Examples) {
  const Frame f = gen::gaussian_frame(2, 4, 1);
  EXPECT_TRUE(frames_isomorphic(f, f));
  EXPECT_TRUE(frames_isomorphic(Frame(columns({{1, 0}, {0, 1}}, 2)), Frame(columns({{2, 0}, {1, 1}}, 2))));
  EXPECT_FALSE(frames_isomorphic(Frame(columns({{1, 0}, {1, 0}}, 2)), Frame(columns({{1, 0}, {0, 1}}, 2))));
}

TEST(FramesIsomorphic, InvertibleImagesAndDifferentKernels) {
  const Frame f = gen::gaussian_frame(3, 6, 2, Field::complex);
  const Matrix l = gen::gaussian_frame(3, 3, 9, Field::complex).synthesis();
  EXPECT_TRUE(frames_isomorphic(f, Frame(l * f.synthesis())));
  EXPECT_FALSE(frames_isomorphic(f, gen::gaussian_frame(3, 6, 3, Field::complex)));
  try {
    frames_isomorphic(f, gen::gaussian_frame(3, 5, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(FrameIdentities, TraceAndSpectra) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Frame f = gen::gaussian_frame(1 + seed % 5, 1 + seed % 8, seed, seed % 3 ? Field::real : Field::complex);
    EXPECT_NEAR(total_energy(f), frame_operator(f).trace().real(), 1e-10);
    auto s = oracle::jacobi_eigenvalues(frame_operator(f));
    auto g = oracle::jacobi_eigenvalues(gram(f));
    std::erase_if(s, [](double v) { return std::abs(v) < 1e-9; });
    std::erase_if(g, [](double v) { return std::abs(v) < 1e-9; });
    ASSERT_EQ(s.size(), g.size());
    for (std::size_t k = 0; k < s.size(); ++k) EXPECT_NEAR(s[k], g[k], 1e-9);
  }
}

TEST(FrameConstruction, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(Frame(Matrix(2, 0)), Error);
  Matrix bad = Matrix::Identity(2, 2);
  bad(1, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(Frame{bad}, Error);
}

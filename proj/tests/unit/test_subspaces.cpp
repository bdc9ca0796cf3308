#include <gtest/gtest.h>

#include <cmath>

#include "kspave/error.hpp"
#include "kspave/generators.hpp"
#include "kspave/subspaces.hpp"
#include "oracles.hpp"

using namespace kspave;

namespace {

SubspaceModel span_of(std::initializer_list<std::initializer_list<double>> vecs, std::size_t n) {
  Matrix b(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(vecs.size()));
  Eigen::Index c = 0;
  for (const auto& v : vecs) {
    Eigen::Index r = 0;
    for (double x : v) b(r++, c) = x;
    ++c;
  }
  return SubspaceModel(n, b);
}

const SearchBudget kBudget{};

}  // namespace

TEST(SubspaceModel, OrthonormalizesAndCachesProjector) {
  const SubspaceModel h = span_of({{1, 1, 0}, {1, 0, 1}}, 3);
  EXPECT_LE((h.basis().adjoint() * h.basis() - Matrix::Identity(2, 2)).norm(), 1e-14);
  const Matrix& p = h.projector();
  EXPECT_LE(op_norm(p * p - p), 1e-9);
  EXPECT_LE(op_norm(p - p.adjoint()), 1e-9);
  EXPECT_NEAR(p.trace().real(), 2.0, 1e-12);
  try {
    span_of({{1, 1, 0}, {2, 2, 0}}, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DependentBasis);
  }
}

TEST(IsLarge, Examples) {
  const SubspaceModel full(3, Matrix::Identity(3, 3));
  const auto f = is_A_large(full, 1.0);
  EXPECT_TRUE(f.large);
  EXPECT_NEAR(f.min_norm, 1.0, 1e-15);

  const auto line = is_A_large(span_of({{1, 0}}, 2), 0.1);
  EXPECT_FALSE(line.large);
  EXPECT_EQ(line.min_norm, 0.0);

  const auto diag = is_A_large(span_of({{1, 1}}, 2), 0.7);
  EXPECT_TRUE(diag.large);
  EXPECT_NEAR(diag.min_norm, 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_FALSE(is_A_large(span_of({{1, 1}}, 2), 0.75).large);
  EXPECT_THROW(is_A_large(full, 0.0), Error);
}

TEST(IsLarge, MaximizerAttainsProjectionNorm) {
  // f_i = P e_i / ||P e_i|| lies in H, has unit norm and |f_i(i)| = ||P e_i||.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SubspaceModel h = gen::large_subspace(6, 3, 0.2, seed);
    const Matrix& p = h.projector();
    const RealVector norms = h.coordinate_norms();
    for (Eigen::Index i = 0; i < 6; ++i) {
      const Vector f = p.col(i) / p.col(i).norm();
      EXPECT_NEAR(f.norm(), 1.0, 1e-12);
      EXPECT_LE((p * f - f).norm(), 1e-10);
      EXPECT_NEAR(std::abs(f(i)), norms(i), 1e-10);
    }
    EXPECT_EQ(is_A_large(h, norms.minCoeff()).large, true);
  }
}

TEST(Decompose, Examples) {
  const auto full = decompose(SubspaceModel(4, Matrix::Identity(4, 4)), 0.5, kBudget);
  EXPECT_EQ(full.blocks, (Partition{{0, 1, 2, 3}}));

  const SubspaceModel diag = span_of({{1, 1}}, 2);
  const auto d = decompose(diag, 0.5, kBudget);
  EXPECT_EQ(d.blocks, (Partition{{0}, {1}}));
  EXPECT_TRUE(verify_decomposition(diag, d.blocks));
  EXPECT_NEAR(d.reported_r, std::pow(6.0 * 1.5 / (0.5 * 0.5), 4.0), 1e-6);
}

TEST(Decompose, RejectsSmallCoordinates) {
  try {
    decompose(span_of({{1, 0}}, 2), 0.5, kBudget);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotLarge);
  }
}

TEST(Decompose, RandomLargeSubspacesPassSurjectivity) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 3 + seed % 8;
    const std::size_t k = 1 + seed % n;
    const SubspaceModel h = gen::large_subspace(n, k, 0.3, seed);
    const auto d = decompose(h, 0.5, kBudget);
    EXPECT_TRUE(d.certificate.valid());
    EXPECT_TRUE(verify_decomposition(h, d.blocks));
    for (const auto& block : d.blocks) {
      // Surjectivity oracle: the block rows of the basis have full row rank.
      const Matrix rows = oracle::principal(h.projector(), block);
      EXPECT_GT(oracle::jacobi_eigenvalues(rows).front(), 1e-8);
      EXPECT_LE(block.size(), k);
    }
  }
}

TEST(VerifyDecomposition, Examples) {
  const SubspaceModel full(3, Matrix::Identity(3, 3));
  EXPECT_TRUE(verify_decomposition(full, {{0, 1, 2}}));
  EXPECT_TRUE(verify_decomposition(full, {{0}, {1, 2}}));
  EXPECT_FALSE(verify_decomposition(span_of({{1, 0}}, 2), {{0, 1}}));
  EXPECT_THROW(verify_decomposition(full, {{0, 1}}), Error);
}

TEST(VerifyDecomposition, SingletonsSurjectiveIffNonzeroProjection) {
  const SubspaceModel h = span_of({{1, 0, 1}}, 3);
  EXPECT_GT(block_surjectivity(h, {0}), 0.0);
  EXPECT_EQ(block_surjectivity(h, {1}), 0.0);
  EXPECT_GT(block_surjectivity(h, {2}), 0.0);
  EXPECT_FALSE(verify_decomposition(h, {{0}, {1}, {2}}));
  EXPECT_FALSE(verify_decomposition(h, {{0, 2}, {1}}));
}

#include <gtest/gtest.h>

#include "kspave/error.hpp"
#include "kspave/frames.hpp"
#include "kspave/generators.hpp"
#include "oracles.hpp"

using namespace kspave;

TEST(Generators, HermitianAndZeroDiagonal) {
  const Matrix h = gen::hermitian(6, 1, Field::complex, true);
  EXPECT_EQ(h, h.adjoint());
  for (Eigen::Index i = 0; i < 6; ++i) EXPECT_EQ(h(i, i), Complex(0, 0));
  EXPECT_EQ(field_of(h), Field::complex);
  EXPECT_EQ(field_of(gen::hermitian(6, 1)), Field::real);
}

TEST(Generators, ContractionHasRequestedNorm) {
  const Matrix t = gen::selfadjoint_contraction(7, 3, 0.8, true);
  EXPECT_NEAR(oracle::op_norm(t), 0.8, 1e-10);
}

TEST(Generators, ParsevalFrames) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Frame f = gen::parseval(3, 7, seed, seed % 2 ? Field::complex : Field::real);
    const Matrix s = f.synthesis() * f.synthesis().adjoint();
    EXPECT_LE((s - Matrix::Identity(3, 3)).norm(), 1e-12);
    EXPECT_TRUE(is_parseval(f));
  }
}

TEST(Generators, EtaTightFramesAreTightAndUnitNorm) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Frame f = gen::eta_tight(3, 4, seed);
    EXPECT_EQ(f.size(), 12u);
    const Matrix s = f.synthesis() * f.synthesis().adjoint();
    EXPECT_LE(oracle::op_norm(s - 4.0 * Matrix::Identity(3, 3)), 1e-10);
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(f.vector(i).norm(), 1.0, 1e-12);
  }
}

TEST(Generators, ProjectionsAreIdempotent) {
  const Matrix p = gen::projection(8, 3, 9, Field::complex);
  EXPECT_LE(oracle::op_norm(p * p - p), 1e-12);
  EXPECT_LE(oracle::op_norm(p - p.adjoint()), 1e-12);
  EXPECT_NEAR(p.trace().real(), 3.0, 1e-12);
}

TEST(Generators, LargeSubspaceMeetsThreshold) {
  const SubspaceModel h = gen::large_subspace(8, 4, 0.4, 2);
  EXPECT_GE(h.coordinate_norms().minCoeff(), 0.4);
  EXPECT_THROW(gen::large_subspace(8, 1, 0.9, 2), Error);
}

TEST(Generators, DeterministicForFixedSeed) {
  EXPECT_EQ(gen::hermitian(5, 42), gen::hermitian(5, 42));
  EXPECT_NE(gen::hermitian(5, 42), gen::hermitian(5, 43));
  EXPECT_EQ(gen::eta_tight(2, 3, 7).synthesis(), gen::eta_tight(2, 3, 7).synthesis());
  EXPECT_EQ(gen::unit_bessel(3, 5, 1).synthesis(), gen::unit_bessel(3, 5, 1).synthesis());
}

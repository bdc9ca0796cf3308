#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kspave/error.hpp"
#include "kspave/frames.hpp"
#include "kspave/generators.hpp"
#include "kspave/paving.hpp"
#include "oracles.hpp"

using namespace kspave;

namespace {

Matrix swap2() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

Matrix j_minus_i(Eigen::Index n) {
  Matrix m = Matrix::Ones(n, n);
  m.diagonal().setZero();
  return m;
}

Matrix flat_rank_one(Eigen::Index n) {
  const Vector u = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  return u * u.adjoint();
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

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

const SearchBudget kBudget{};

}  // namespace

TEST(VerifyPaving, Examples) {
  const auto a = verify_paving(swap2(), {{0}, {1}}, 0.1);
  EXPECT_TRUE(a.valid());
  EXPECT_EQ(a.block_norms, (std::vector<double>{0.0, 0.0}));

  for (const Partition& p : {Partition{{0, 1, 2}}, Partition{{0}, {1}, {2}}, Partition{{0, 2}, {1}}}) {
    const auto c = verify_paving(Matrix::Identity(3, 3), p, 0.9);
    EXPECT_FALSE(c.valid());
  }

  const auto j = verify_paving(j_minus_i(3), {{0, 1}, {2}}, 0.6);
  EXPECT_TRUE(j.valid());
  EXPECT_NEAR(j.block_norms[0], 1.0, 1e-14);
  EXPECT_NEAR(j.bound, 1.2, 1e-14);
}

TEST(VerifyPaving, RejectsBadPartitions) {
  EXPECT_EQ(code_of([] { verify_paving(swap2(), {{0, 1}, {1}}, 0.5); }), ErrorCode::BadPartition);
  EXPECT_EQ(code_of([] { verify_paving(swap2(), {{0}}, 0.5); }), ErrorCode::BadPartition);
}

TEST(VerifyPaving, ValidIffAllNormsWithinBound) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix t = gen::hermitian(5, seed, Field::complex, true);
    const Partition p{{0, 3}, {1, 4}, {2}};
    const auto c = verify_paving(t, p, 0.4);
    bool all = true;
    for (std::size_t k = 0; k < p.size(); ++k) {
      EXPECT_NEAR(c.block_norms[k], oracle::submatrix_norm(t)(p[k]), 1e-10);
      all = all && c.block_norms[k] <= c.bound + c.tolerance;
    }
    EXPECT_EQ(c.valid(), all);
  }
}

TEST(ExhaustiveMinR, Examples) {
  const auto s = exhaustive_min_r(swap2(), 0.5, 2);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->partition, (Partition{{0}, {1}}));

  const auto z = exhaustive_min_r(Matrix::Zero(4, 4), 0.1, 4);
  ASSERT_TRUE(z);
  EXPECT_EQ(z->r(), 1u);

  const auto j4 = exhaustive_min_r(j_minus_i(3), 0.4, 3);
  ASSERT_TRUE(j4);
  EXPECT_EQ(j4->r(), 3u);
  const auto j6 = exhaustive_min_r(j_minus_i(3), 0.6, 3);
  ASSERT_TRUE(j6);
  EXPECT_EQ(j6->r(), 2u);
  EXPECT_EQ(j6->partition, (Partition{{0}, {1, 2}}));
}

TEST(ExhaustiveMinR, IdentityIsInfeasibleAndGuardHolds) {
  for (Eigen::Index n = 1; n <= 6; ++n) EXPECT_FALSE(exhaustive_min_r(Matrix::Identity(n, n), 0.9, 10));
  EXPECT_EQ(code_of([] { exhaustive_min_r(Matrix::Zero(15, 15), 0.5, 15); }), ErrorCode::TooLarge);
}

TEST(ExhaustiveMinR, MatchesBruteForceAndCoverOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 3 + seed % 5;
    const Matrix t = gen::hermitian(n, 300 + seed, seed % 2 ? Field::complex : Field::real, true);
    const double eps = 0.35 + 0.05 * static_cast<double>(seed % 4);
    const auto lib = exhaustive_min_r(t, eps, n);
    const double bound = eps * oracle::op_norm(t);
    const auto ref = oracle::brute_min_blocks(n, oracle::submatrix_norm(t), bound, kCertificateTol);
    ASSERT_TRUE(lib && ref);
    EXPECT_EQ(lib->partition, *ref);
  }
}

TEST(HeuristicPaving, SucceedsWheneverExhaustiveDoes) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 3 + seed % 8;
    const Matrix t = gen::hermitian(n, 500 + seed, Field::real, true);
    const auto exact = exhaustive_min_r(t, 0.5, n);
    ASSERT_TRUE(exact);
    SearchBudget b;
    b.seed = seed;
    const auto h = heuristic_paving(t, exact->r(), 0.5, b);
    EXPECT_TRUE(h.valid()) << "seed " << seed;
    // Never fewer blocks than the exhaustive optimum.
    if (h.valid()) {
      EXPECT_GE(h.r(), exact->r());
    }
  }
}

TEST(HeuristicPaving, IdentityFailsWithBestNorm) {
  const auto c = heuristic_paving(Matrix::Identity(5, 5), 3, 0.5, kBudget);
  EXPECT_FALSE(c.valid());
  EXPECT_NEAR(c.max_block_norm(), 1.0, 1e-15);
}

TEST(HeuristicPaving, LargeZeroDiagonalAtFormulaR) {
  const Matrix t = gen::hermitian(40, 17, Field::real, true);
  const auto r = static_cast<std::size_t>(paving_number_formula(0.5, Field::real));
  EXPECT_EQ(r, 20736u);
  const auto c = heuristic_paving(t, r, 0.5, kBudget);
  EXPECT_TRUE(c.valid());
  const auto again = verify_paving(t, c.partition, 0.5);
  EXPECT_EQ(again.block_norms, c.block_norms);
}

TEST(PaveMinR, ReturnsBestEffortOnFailure) {
  const auto c = pave_min_r(Matrix::Identity(3, 3), 0.5, kBudget);
  EXPECT_FALSE(c.valid());
  EXPECT_NEAR(c.max_block_norm(), 1.0, 1e-15);
}

TEST(Mss, DuplicatedBasisSplits) {
  Matrix u(3, 6);
  u << Matrix::Identity(3, 3), Matrix::Identity(3, 3);
  u /= std::sqrt(2.0);
  const auto c = mss_partition(Frame(u), 2, kBudget);
  EXPECT_TRUE(c.valid());
  EXPECT_NEAR(c.bound, 2.0, 1e-14);
  EXPECT_NEAR(c.max_block_norm(), 0.5, 1e-14);
}

TEST(Mss, SingleBasis) {
  const auto c = mss_partition(Frame(Matrix::Identity(3, 3)), 2, kBudget);
  EXPECT_NEAR(c.bound, std::pow(1.0 / std::sqrt(2.0) + 1.0, 2), 1e-14);
  EXPECT_NEAR(c.bound, 2.914213562373095, 1e-12);
  EXPECT_TRUE(c.valid());
  EXPECT_NEAR(c.max_block_norm(), 1.0, 1e-14);
}

TEST(Mss, RandomParsevalMeetsBoundAndOptimum) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t d = 2 + seed % 3;
    const std::size_t m = d + 3 + seed % 4;
    const Frame f = gen::parseval(d, m, seed);
    const auto c = mss_partition(f, 2, kBudget);
    EXPECT_TRUE(c.valid());
    const double delta = f.synthesis().colwise().squaredNorm().maxCoeff();
    EXPECT_NEAR(c.bound, std::pow(1.0 / std::sqrt(2.0) + std::sqrt(delta), 2), 1e-12);
    const double best = oracle::brute_min_max(m, 2, oracle::outer_sum_norm(f.synthesis()));
    EXPECT_NEAR(c.max_block_norm(), best, 1e-9);
    // The block operators add back to the identity.
    Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (const auto& block : c.partition) {
      for (std::size_t i : block) sum += f.vector(i) * f.vector(i).adjoint();
    }
    EXPECT_LE(op_norm(sum - Matrix::Identity(sum.rows(), sum.cols())), 1e-8);
    EXPECT_LE(c.max_block_norm(), 1.0 + 1e-12);
  }
}

TEST(Mss, RejectsNonResolution) {
  EXPECT_EQ(code_of([] { mss_partition(Frame(2.0 * Matrix::Identity(2, 2)), 2, kBudget); }),
            ErrorCode::NotIdentityResolution);
}

TEST(Weaver, RepeatedBasis) {
  const auto c = weaver_partition(gen::repeated_basis(2, 18), 18, 2, kBudget);
  EXPECT_TRUE(c.valid());
  EXPECT_EQ(c.bound, 16.0);
  EXPECT_EQ(c.r(), 2u);
  EXPECT_NEAR(c.block_norms[0], 9.0, 1e-12);
  EXPECT_NEAR(c.block_norms[1], 9.0, 1e-12);
}

TEST(Weaver, EtaTwoSplitsPairs) {
  const auto c = weaver_partition(gen::repeated_basis(2, 2), 2, 1, kBudget);
  EXPECT_TRUE(c.valid());
  EXPECT_NEAR(c.block_norms[0], 1.0, 1e-14);
  EXPECT_NEAR(c.block_norms[1], 1.0, 1e-14);
}

TEST(Weaver, GeneratedTightFrames) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Frame f = gen::eta_tight(2, 18, seed);
    SearchBudget b;
    b.seed = seed;
    const auto c = weaver_partition(f, 18, 2, b);
    EXPECT_TRUE(c.valid());
    EXPECT_TRUE(verify_outer_sum(f.synthesis(), c.partition, 16.0).valid());
  }
}

TEST(Weaver, Errors) {
  EXPECT_EQ(code_of([] { weaver_partition(gen::repeated_basis(2, 3), 2, 1, kBudget); }), ErrorCode::NotEtaTight);
  EXPECT_EQ(code_of([] { weaver_partition(Frame(2.0 * Matrix::Identity(2, 2)), 4, 1, kBudget); }),
            ErrorCode::NotUnitNorm);
}

TEST(ProjectionPaving, Examples) {
  const auto id = projection_paving(Matrix::Identity(4, 4), 2, kBudget);
  EXPECT_TRUE(id.valid());
  EXPECT_NEAR(id.max_block_norm(), 1.0, 1e-14);

  Matrix d = Matrix::Zero(5, 5);
  d(0, 0) = d(2, 2) = d(3, 3) = 1.0;
  const auto dc = projection_paving(d, 3, kBudget);
  EXPECT_TRUE(dc.valid());
  EXPECT_LE(dc.max_block_norm(), 1.0 + 1e-14);

  const Matrix mb = naimark_dilate(mercedes_benz());
  const auto c = projection_paving(mb, 2, kBudget);
  EXPECT_TRUE(c.valid());
  EXPECT_NEAR(c.bound, std::pow(1.0 / std::sqrt(2.0) + std::sqrt(2.0 / 3.0), 2), 1e-12);
  EXPECT_NEAR(c.bound, 2.3213672050459184, 1e-12);
  EXPECT_NEAR(c.max_block_norm(), oracle::brute_min_max(3, 2, oracle::submatrix_norm(mb)), 1e-12);
}

TEST(ProjectionPaving, RejectsNonProjection) {
  EXPECT_EQ(code_of([] { projection_paving(Matrix::Ones(2, 2), 2, kBudget); }), ErrorCode::NotAProjection);
}

TEST(TwoPaving, SmallDiagonalProceeds) {
  const Matrix q = flat_rank_one(100);
  const auto c = two_paving_projection(q, 0.1, kBudget);
  EXPECT_TRUE(c.valid());
  EXPECT_NEAR(c.bound, 0.9, 1e-15);
  EXPECT_EQ(c.r(), 2u);
}

TEST(TwoPaving, ZeroProjection) {
  const auto c = two_paving_projection(Matrix::Zero(4, 4), 0.1, kBudget);
  EXPECT_TRUE(c.valid());
  EXPECT_EQ(c.max_block_norm(), 0.0);
}

TEST(TwoPaving, FlatRankOneInDimEightFailsHypothesis) {
  // (1/sqrt2 + sqrt(1/8))^2 = 1.125 > 0.9, so the delta hypothesis fails...
  const Matrix q = flat_rank_one(8);
  EXPECT_EQ(code_of([&] { two_paving_projection(q, 0.1, kBudget); }), ErrorCode::HypothesisFails);
  // ...yet a split with both halves at norm 1/2 exists.
  const auto c = pave_projection_absolute(q, 2, 0.9, kBudget);
  EXPECT_TRUE(c.valid());
  EXPECT_NEAR(c.block_norms[0], 0.5, 1e-14);
  EXPECT_NEAR(c.block_norms[1], 0.5, 1e-14);
}

TEST(CekpLift, Examples) {
  const Matrix zero = Matrix::Zero(1, 1);
  const Matrix a = cekp_involution(zero);
  EXPECT_LE((a - swap2()).norm(), 1e-15);
  EXPECT_LE((cekp_lift(zero, LiftSign::plus) - Matrix::Constant(2, 2, 0.5)).norm(), 1e-15);

  const Matrix p = cekp_lift(Matrix::Identity(3, 3), LiftSign::plus);
  Matrix expected = Matrix::Zero(6, 6);
  expected.topLeftCorner(3, 3) = Matrix::Identity(3, 3);
  EXPECT_LE((p - expected).norm(), 1e-12);
}

TEST(CekpLift, RandomContractionsByDirectMultiplication) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 1 + seed % 8;
    const bool zero_diag = seed % 2 == 0;
    const Matrix t = gen::selfadjoint_contraction(n, seed, 1.0 - 0.1 * static_cast<double>(seed % 3), zero_diag,
                                                  seed % 4 < 2 ? Field::real : Field::complex);
    const Matrix a = cekp_involution(t);
    const auto two_n = static_cast<Eigen::Index>(2 * n);
    EXPECT_LE(oracle::op_norm(a * a - Matrix::Identity(two_n, two_n)), 1e-9);
    for (LiftSign s : {LiftSign::plus, LiftSign::minus}) {
      const Matrix p = cekp_lift(t, s);
      EXPECT_LE(oracle::op_norm(p * p - p), 1e-9);
      EXPECT_LE(oracle::op_norm(p - p.adjoint()), 1e-12);
      if (zero_diag) {
        for (Eigen::Index i = 0; i < two_n; ++i) EXPECT_NEAR(p(i, i).real(), 0.5, 1e-10);
      }
    }
    EXPECT_LE((cekp_lift(t, LiftSign::plus) + cekp_lift(t, LiftSign::minus) - Matrix::Identity(two_n, two_n)).norm(),
              1e-12);
  }
}

TEST(CekpLift, Errors) {
  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = 1.0;
  EXPECT_EQ(code_of([&] { cekp_lift(skew, LiftSign::plus); }), ErrorCode::NotSelfAdjoint);
  EXPECT_EQ(code_of([] { cekp_lift(2.0 * Matrix::Identity(2, 2), LiftSign::plus); }), ErrorCode::NormExceedsOne);
}

TEST(ViaProjection, SwapSeparatesIndices) {
  const auto c = pave_selfadjoint_via_projection(swap2(), 0.5, kBudget);
  EXPECT_TRUE(c.valid());
  EXPECT_EQ(c.partition, (Partition{{0}, {1}}));
  EXPECT_TRUE(verify_paving(swap2(), c.partition, 0.5).valid());
}

TEST(ViaProjection, ZeroMatrixIsOneBlock) {
  const auto c = pave_selfadjoint_via_projection(Matrix::Zero(3, 3), 0.5, kBudget);
  EXPECT_TRUE(c.valid());
  EXPECT_EQ(c.r(), 1u);
}

TEST(ViaProjection, RandomZeroDiagonalWithinSquaredCount) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const std::size_t n = 2 + seed % 5;
    const Matrix t = gen::hermitian(n, 700 + seed, Field::real, true);
    const auto c = pave_selfadjoint_via_projection(t, 0.5, kBudget);
    EXPECT_TRUE(c.valid()) << "seed " << seed;
    EXPECT_TRUE(verify_paving(t, c.partition, 0.5).valid());
    EXPECT_NEAR(c.scale, op_norm(t), 1e-12);
    const Matrix scaled = t / op_norm(t);
    const double level = 0.75;
    const std::size_t r_plus =
        oracle::cover_min_blocks(2 * n, oracle::submatrix_norm(cekp_lift(scaled, LiftSign::plus)), level, 1e-9);
    const std::size_t r_minus =
        oracle::cover_min_blocks(2 * n, oracle::submatrix_norm(cekp_lift(scaled, LiftSign::minus)), level, 1e-9);
    EXPECT_LE(c.r(), r_plus * r_minus);
  }
}

TEST(ViaProjection, RequiresZeroDiagonal) {
  EXPECT_EQ(code_of([] { pave_selfadjoint_via_projection(Matrix::Identity(2, 2), 0.5, kBudget); }),
            ErrorCode::NonZeroDiagonal);
}

TEST(PaveComplex, RealInputMatchesDirectPaving) {
  const Matrix t = gen::hermitian(6, 9, Field::real, true);
  const auto c = pave_complex(t, 0.5, kBudget);
  const auto direct = pave_min_r(t, 0.5, kBudget);
  EXPECT_EQ(c.partition, direct.partition);
  EXPECT_EQ(c.block_norms, direct.block_norms);
}

TEST(PaveComplex, ImaginarySwapUsesSingletons) {
  const Matrix t = Complex(0.0, 1.0) * swap2();
  const auto c = pave_complex(t, 0.5, kBudget);
  EXPECT_TRUE(c.valid());
  EXPECT_EQ(c.partition, (Partition{{0}, {1}}));
}

TEST(PaveComplex, RandomComplexZeroDiagonal) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 2 + seed % 5;
    Matrix t = gen::hermitian(n, seed, Field::complex, true) +
               Complex(0.0, 1.0) * gen::hermitian(n, seed + 1000, Field::complex, true);
    const auto c = pave_complex(t, 0.5, kBudget);
    EXPECT_TRUE(c.valid());
    EXPECT_TRUE(verify_paving(t, c.partition, 0.5).valid());
    EXPECT_EQ(c.reported_r, paving_number_formula(0.5, Field::complex));
  }
}

TEST(NormalizeZeroDiag, Examples) {
  const Matrix d = Matrix::Identity(3, 3) * 2.0;
  auto [off, diag] = normalize_zero_diag(d);
  EXPECT_EQ(off, Matrix(Matrix::Zero(3, 3)));
  EXPECT_EQ(diag, d);
  std::tie(off, diag) = normalize_zero_diag(j_minus_i(3));
  EXPECT_EQ(off, j_minus_i(3));
  EXPECT_EQ(diag, Matrix(Matrix::Zero(3, 3)));
  std::tie(off, diag) = normalize_zero_diag(Matrix::Ones(3, 3));
  EXPECT_EQ(off, j_minus_i(3));
  EXPECT_EQ(diag, Matrix(Matrix::Identity(3, 3)));
}

TEST(PavingNumber, Formula) {
  EXPECT_DOUBLE_EQ(paving_number_formula(0.5, Field::real), 20736.0);
  EXPECT_DOUBLE_EQ(paving_number_formula(0.5, Field::complex), 20736.0 * 20736.0);
}

TEST(ExhaustiveMinR, AllOnesOffDiagonalBlockSizes) {
  // ||(J_n - I)_S|| = |S| - 1 and ||J_6 - I|| = 5: at eps = 0.3 blocks hold
  // at most 2 indices, at eps = 0.5 at most 3.
  const auto a = exhaustive_min_r(j_minus_i(6), 0.3, 6);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->r(), 3u);
  const auto b = exhaustive_min_r(j_minus_i(6), 0.5, 6);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->r(), 2u);
  EXPECT_EQ(b->partition, (Partition{{0, 1, 2}, {3, 4, 5}}));
}

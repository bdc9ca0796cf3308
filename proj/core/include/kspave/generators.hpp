#pragma once

#include <cstddef>
#include <cstdint>

#include "kspave/frames.hpp"
#include "kspave/linalg.hpp"
#include "kspave/subspaces.hpp"

namespace kspave::gen {

// Seeded random instances. The same (arguments, seed) always produce the
// same instance on a given standard library.

/// Hermitian matrix with Gaussian entries; zero diagonal if requested.
Matrix hermitian(std::size_t n, std::uint64_t seed, Field field = Field::real, bool zero_diag = false);

/// Hermitian matrix scaled to the given operator norm.
Matrix selfadjoint_contraction(std::size_t n, std::uint64_t seed, double norm = 1.0, bool zero_diag = false,
                               Field field = Field::real);

/// Random Parseval frame of m vectors in dimension d (m >= d): the first d
/// rows of a random m x m unitary, as a d x m synthesis operator.
Frame parseval(std::size_t d, std::size_t m, std::uint64_t seed, Field field = Field::real);

/// Frame of m Gaussian vectors (not normalized).
Frame gaussian_frame(std::size_t d, std::size_t m, std::uint64_t seed, Field field = Field::real);

/// Unit-norm vectors with independent random directions.
Frame unit_bessel(std::size_t d, std::size_t m, std::uint64_t seed, Field field = Field::real);

/// eta copies of the standard basis of R^d.
Frame repeated_basis(std::size_t d, std::size_t eta);

inline constexpr double kTightTol = 1e-10;
inline constexpr std::size_t kTightSweeps = 10000;

/// Unit-norm eta-tight frame of eta*d vectors in R^d: eta random orthonormal
/// bases, perturbed, then alternately tightened and renormalized until
/// ||S - eta I|| <= kTightTol. Throws GenerationFailed otherwise.
Frame eta_tight(std::size_t d, std::size_t eta, std::uint64_t seed);

/// Orthogonal projection of rank k in C^n (real entries unless field is complex).
Matrix projection(std::size_t n, std::size_t k, std::uint64_t seed, Field field = Field::real);

/// Random k-dimensional subspace of R^n redrawn until min ||P e_i|| >= a
/// (at most 1000 draws; throws GenerationFailed).
SubspaceModel large_subspace(std::size_t n, std::size_t k, double a, std::uint64_t seed);

}  // namespace kspave::gen

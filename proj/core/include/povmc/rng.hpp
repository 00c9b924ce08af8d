#pragma once

#include <cstdint>
#include <random>

#include "povmc/linalg.hpp"

namespace povmc {

/// SplitMix64 mixing step. Used to derive independent sub-stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic engine for (seed, stream). Distinct streams are decorrelated
/// by SplitMix64 so per-POVM simulations can share one user-facing seed.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Haar-ish random unit vector in C^dim (normalized complex Gaussian).
ComplexVector random_unit_vector(Eigen::Index dim, std::mt19937_64& rng);

/// Haar-distributed random unitary via QR of a complex Ginibre matrix with
/// the R-diagonal phase fix.
ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64& rng);

} // namespace povmc

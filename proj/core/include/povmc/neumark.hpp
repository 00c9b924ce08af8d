#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "povmc/povm.hpp"

namespace povmc {

/// Column index tag for the vacuum sentinel of odd-element dilations.
inline constexpr int kVacuumSentinel = -1;

inline const char* vacuum_sentinel_label() { return "vacuum-sentinel"; }

/// Orthogonal-measurement lift of a rank-1 qubit POVM onto N paths x 2
/// polarizations. Column d of `columns` is the measured state phi_d; its top
/// two coordinates (path 1) equal the weight vector of the mapped element.
/// For an odd element count the last column is exactly the last canonical
/// basis vector and maps to no element.
struct DilationResult {
    int n_paths = 0;              // N; matrix dimension is 2N
    ComplexMatrix columns;        // 2N x 2N unitary
    std::vector<int> outcome_map; // per column: element index or kVacuumSentinel
    std::vector<std::string> outcome_labels;
};

/// Builds the dilation by completing the two conjugated top rows (fixed by the
/// weight vectors; orthonormal by POVM completeness) to a full orthonormal
/// basis. Odd case: a zero-weight dummy column is pinned to the canonical
/// sentinel by a rotation acting on the ancilla rows only.
/// Throws DomainError for invalid POVMs or fewer than 2 elements.
DilationResult dilate(const Povm& p);

struct EmbeddedState {
    ComplexVector vector; // 2N, support on path 1
};

/// (alpha, beta) -> (alpha, beta, 0, ..., 0). Requires a normalized qubit state.
EmbeddedState embed_state(const ComplexVector& psi, int n_paths);

/// Max over `trials` random qubit states and all columns of
/// | |<phi_d|Phi>|^2 - <psi|E_d|psi> | (sentinel columns compared against 0).
double restriction_check(const DilationResult& d, const Povm& p, int trials, std::uint64_t seed);

} // namespace povmc

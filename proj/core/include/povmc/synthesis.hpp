#pragma once

#include <set>
#include <vector>

#include "povmc/linalg.hpp"
#include "povmc/neumark.hpp"

namespace povmc {

/// Two-path polarization-coupling unitary. Acts on paths q < p (1-based); the
/// 4x4 block is ordered (q,H), (q,V), (p,H), (p,V).
struct BlockRotation {
    int p = 0;
    int q = 0;
    ComplexMatrix block; // 4x4 unitary
};

/// Single-path polarization unitary left over after elimination.
struct LocalRotation {
    int path = 0;
    ComplexMatrix unitary; // 2x2
};

struct MzFactorization {
    int dim = 0; // 2N
    std::vector<BlockRotation> factors;      // elimination order
    std::vector<LocalRotation> local_tail;   // residual per-path rotations
};

/// Expands a BlockRotation to a dim x dim unitary (identity elsewhere).
ComplexMatrix embed_block(const BlockRotation& b, int dim);

/// Expands a LocalRotation likewise.
ComplexMatrix embed_local(const LocalRotation& l, int dim);

/// U maps measured columns to canonical axes: rows are the conjugate measured
/// states, i.e. the adjoint of the dilation's column matrix. Throws
/// DomainError if the columns are not orthonormal.
ComplexMatrix basis_mapping_unitary(const DilationResult& d);

/// Nulls the coupling of path p to path q for p = N..2, q = p-1..1 by
/// right-multiplying with two-path blocks; each factor sends the active 2x2
/// coupling into the diagonal. What remains is a per-path local tail.
/// Throws DomainError if u is not unitary or has odd dimension.
MzFactorization eliminate(const ComplexMatrix& u);

/// Rebuilds the original unitary: local tail times the adjoints of the
/// factors applied in reverse order.
ComplexMatrix reconstruct(const MzFactorization& f);

/// Drops factors that act as identity or touch only paths no photon can
/// reach. `input_paths` seeds the live set; a kept factor makes both of its
/// paths live.
MzFactorization prune_identity_blocks(const MzFactorization& f, const std::set<int>& input_paths);

} // namespace povmc

#include "povmc/synthesis.hpp"

#include <array>
#include <cmath>

#include "povmc/errors.hpp"

namespace povmc {

namespace {

std::array<int, 4> pair_coords(int q, int p) {
    return {2 * q - 2, 2 * q - 1, 2 * p - 2, 2 * p - 1};
}

void check_pair(int q, int p, int dim) {
    if (q < 1 || p <= q || 2 * p > dim) throw DimensionError("block rotation: need 1 <= q < p <= N");
}

} // namespace

ComplexMatrix embed_block(const BlockRotation& b, int dim) {
    if (b.block.rows() != 4 || b.block.cols() != 4) throw DimensionError("block rotation must be 4x4");
    check_pair(b.q, b.p, dim);
    ComplexMatrix out = ComplexMatrix::Identity(dim, dim);
    const auto idx = pair_coords(b.q, b.p);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]) = b.block(r, c);
    return out;
}

ComplexMatrix embed_local(const LocalRotation& l, int dim) {
    if (l.unitary.rows() != 2 || l.unitary.cols() != 2) throw DimensionError("local rotation must be 2x2");
    if (l.path < 1 || 2 * l.path > dim) throw DimensionError("local rotation path out of range");
    ComplexMatrix out = ComplexMatrix::Identity(dim, dim);
    out.block(2 * l.path - 2, 2 * l.path - 2, 2, 2) = l.unitary;
    return out;
}

ComplexMatrix basis_mapping_unitary(const DilationResult& d) {
    const ComplexMatrix& columns = d.columns;
    if (columns.rows() != columns.cols()) throw DimensionError("basis mapping needs a square matrix");
    const ComplexMatrix gram = columns.adjoint() * columns;
    if (max_norm(gram - ComplexMatrix::Identity(columns.rows(), columns.cols())) > 1e-12)
        throw DomainError("basis mapping: dilation columns are not orthonormal");
    return columns.adjoint();
}

MzFactorization eliminate(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) throw DimensionError("eliminate: matrix must be square");
    const int dim = static_cast<int>(u.rows());
    if (dim < 2 || dim % 2 != 0) throw DimensionError("eliminate: dimension must be even and >= 2");
    if (!is_unitary(u, 1e-10)) throw DomainError("eliminate: matrix is not unitary");

    const int n_paths = dim / 2;
    ComplexMatrix m = u;
    MzFactorization out;
    out.dim = dim;

    for (int p = n_paths; p >= 2; --p) {
        for (int q = p - 1; q >= 1; --q) {
            if (max_norm(m.block(2 * p - 2, 2 * q - 2, 2, 2)) < 1e-12) continue;

            const auto idx = pair_coords(q, p);
            ComplexMatrix r(2, 4);
            for (int c = 0; c < 4; ++c) {
                r(0, c) = m(2 * p - 2, idx[static_cast<std::size_t>(c)]);
                r(1, c) = m(2 * p - 1, idx[static_cast<std::size_t>(c)]);
            }

            // Columns orthogonal (Hermitian sense) to the conjugated rows of r
            // annihilate those rows under right multiplication; placing the
            // conjugated rows themselves last sends the coupling into the
            // diagonal block of path p.
            std::vector<ComplexVector> kept;
            for (int i = 0; i < 2; ++i) {
                ComplexVector w = r.row(i).conjugate().transpose();
                for (const auto& b : kept) w -= b.dot(w) * b;
                const double n = w.norm();
                if (n < 1e-10) continue;
                kept.push_back(w / n);
            }
            const int k = static_cast<int>(kept.size());
            const std::vector<ComplexVector> basis = complete_orthonormal(kept, 4);
            BlockRotation factor;
            factor.p = p;
            factor.q = q;
            factor.block.resize(4, 4);
            for (int j = 0; j < 4 - k; ++j) factor.block.col(j) = basis[static_cast<std::size_t>(k + j)];
            for (int j = 0; j < k; ++j) factor.block.col(4 - k + j) = basis[static_cast<std::size_t>(j)];

            m = (m * embed_block(factor, dim)).eval();
            out.factors.push_back(std::move(factor));
        }
    }

    // Lower couplings are nulled explicitly; the upper ones vanish because a
    // block-triangular unitary is block-diagonal.
    double off = 0.0;
    for (int bp = 1; bp <= n_paths; ++bp)
        for (int bq = 1; bq <= n_paths; ++bq) {
            if (bp == bq) continue;
            off = std::max(off, max_norm(m.block(2 * bp - 2, 2 * bq - 2, 2, 2)));
        }
    if (off > 1e-8) throw DegeneracyError("eliminate: residual is not path-diagonal");

    for (int path = 1; path <= n_paths; ++path) {
        ComplexMatrix d = m.block(2 * path - 2, 2 * path - 2, 2, 2);
        if (max_norm(d - ComplexMatrix::Identity(2, 2)) <= 1e-12) continue;
        out.local_tail.push_back(LocalRotation{path, std::move(d)});
    }
    return out;
}

ComplexMatrix reconstruct(const MzFactorization& f) {
    ComplexMatrix u = ComplexMatrix::Identity(f.dim, f.dim);
    for (const auto& l : f.local_tail) u = (u * embed_local(l, f.dim)).eval();
    for (auto it = f.factors.rbegin(); it != f.factors.rend(); ++it)
        u = (u * embed_block(*it, f.dim).adjoint()).eval();
    return u;
}

MzFactorization prune_identity_blocks(const MzFactorization& f, const std::set<int>& input_paths) {
    MzFactorization out;
    out.dim = f.dim;
    std::set<int> live = input_paths;
    for (const auto& factor : f.factors) {
        if (max_norm(factor.block - ComplexMatrix::Identity(4, 4)) <= 1e-10) continue;
        if (live.count(factor.p) == 0 && live.count(factor.q) == 0) continue;
        live.insert(factor.p);
        live.insert(factor.q);
        out.factors.push_back(factor);
    }
    for (const auto& l : f.local_tail) {
        if (live.count(l.path) == 0) continue;
        if (max_norm(l.unitary - ComplexMatrix::Identity(2, 2)) <= 1e-12) continue;
        out.local_tail.push_back(l);
    }
    return out;
}

} // namespace povmc

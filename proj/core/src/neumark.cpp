#include "povmc/neumark.hpp"

#include <cmath>
#include <complex>

#include "povmc/errors.hpp"
#include "povmc/linalg.hpp"
#include "povmc/rng.hpp"

namespace povmc {

namespace {

// Rotates the ancilla rows (everything below path 1) so that the zero-weight
// dummy column lands exactly on the last canonical basis vector. The top two
// rows are untouched, so measured-column restrictions are preserved.
void pin_sentinel_column(ComplexMatrix& v, int n_paths) {
    const int dim = 2 * n_paths;
    const int last = dim - 1;
    ComplexVector lower = v.block(2, last, dim - 2, 1);
    const double lower_norm = lower.norm();
    if (lower_norm < 1e-12) throw DegeneracyError("sentinel column has no ancilla support");
    lower /= lower_norm;

    const std::vector<ComplexVector> basis = complete_orthonormal({lower}, dim - 2);
    // Z has `lower` as its last column; its adjoint sends the sentinel
    // column's ancilla part to the last axis.
    ComplexMatrix z(dim - 2, dim - 2);
    for (int j = 1; j < dim - 2; ++j) z.col(j - 1) = basis[static_cast<std::size_t>(j)];
    z.col(dim - 3) = basis[0];
    ComplexMatrix w = z.adjoint();

    v.bottomRows(dim - 2) = (w * v.bottomRows(dim - 2)).eval();

    // The rotated column is e_last up to roundoff; snap it exactly so the
    // sentinel outcome has probability 0.0 for every embedded input.
    v.col(last).setZero();
    v(last, last) = Complex(1.0, 0.0);
}

} // namespace

DilationResult dilate(const Povm& p) {
    const ValidationReport report = validate(p);
    if (!report.valid) throw DomainError("dilate: input is not a valid rank-1 qubit POVM");
    const int m = static_cast<int>(p.elements.size());
    if (m < 2) throw DomainError("dilate: need at least 2 elements");

    const bool odd = (m % 2) != 0;
    const int n_paths = odd ? (m + 1) / 2 : m / 2;
    const int dim = 2 * n_paths;

    // Top rows of the target unitary are fixed: row 0 holds the first weight
    // coordinate of every element, row 1 the second. Completeness of the POVM
    // makes their conjugates an orthonormal pair.
    ComplexVector x1 = ComplexVector::Zero(dim);
    ComplexVector x2 = ComplexVector::Zero(dim);
    for (int d = 0; d < m; ++d) {
        x1(d) = std::conj(p.elements[static_cast<std::size_t>(d)].weight(0));
        x2(d) = std::conj(p.elements[static_cast<std::size_t>(d)].weight(1));
    }
    // Odd case: column m stays zero in the top rows (zero-weight dummy).

    const std::vector<ComplexVector> basis = complete_orthonormal({x1, x2}, dim);
    ComplexMatrix xmat(dim, dim);
    for (int j = 0; j < dim; ++j) xmat.col(j) = basis[static_cast<std::size_t>(j)];
    ComplexMatrix v = xmat.adjoint(); // row i = conj(x_i); columns are phi_d

    if (odd) pin_sentinel_column(v, n_paths);

    if (!is_unitary(v, 1e-10)) throw DegeneracyError("dilate: completion lost unitarity");

    DilationResult out;
    out.n_paths = n_paths;
    out.columns = std::move(v);
    out.outcome_map.resize(static_cast<std::size_t>(dim), kVacuumSentinel);
    out.outcome_labels.resize(static_cast<std::size_t>(dim), vacuum_sentinel_label());
    for (int d = 0; d < m; ++d) {
        out.outcome_map[static_cast<std::size_t>(d)] = d;
        out.outcome_labels[static_cast<std::size_t>(d)] = p.elements[static_cast<std::size_t>(d)].label;
    }
    return out;
}

EmbeddedState embed_state(const ComplexVector& psi, int n_paths) {
    if (psi.size() != 2) throw DimensionError("embed_state: state must be a qubit");
    if (n_paths < 1) throw DimensionError("embed_state: need at least one path");
    if (std::abs(psi.norm() - 1.0) > 1e-10) throw DomainError("embed_state: state must be normalized");
    EmbeddedState out;
    out.vector = ComplexVector::Zero(2 * n_paths);
    out.vector(0) = psi(0);
    out.vector(1) = psi(1);
    return out;
}

double restriction_check(const DilationResult& d, const Povm& p, int trials, std::uint64_t seed) {
    if (trials < 1) throw DomainError("restriction_check: need at least one trial");
    auto rng = make_rng(seed);
    const int dim = static_cast<int>(d.columns.rows());
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        ComplexVector psi = random_unit_vector(2, rng);
        EmbeddedState big = embed_state(psi, d.n_paths);
        for (int c = 0; c < dim; ++c) {
            const Complex amp = d.columns.col(c).dot(big.vector);
            const double lifted = std::norm(amp);
            double direct = 0.0;
            const int e = d.outcome_map[static_cast<std::size_t>(c)];
            if (e >= 0) {
                const Complex ov = p.elements[static_cast<std::size_t>(e)].weight.dot(psi);
                direct = std::norm(ov);
            }
            worst = std::max(worst, std::abs(lifted - direct));
        }
    }
    return worst;
}

} // namespace povmc

#include "povmc/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace povmc {

double max_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const Complex& z = m(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
    return true;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols())
        throw DimensionError("is_unitary: matrix is not square");
    if (!all_finite(m))
        throw DomainError("is_unitary: matrix has non-finite entries");
    ComplexMatrix g = m.adjoint() * m;
    g.diagonal().array() -= Complex(1.0, 0.0);
    return max_norm(g) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols())
        throw DimensionError("is_hermitian: matrix is not square");
    return max_norm(m - m.adjoint()) <= tol;
}

bool is_psd(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols())
        throw DimensionError("is_psd: matrix is not square");
    if (!all_finite(m))
        throw DomainError("is_psd: matrix has non-finite entries");
    if (!is_hermitian(m, tol))
        throw ShapeError("is_psd: matrix is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()),
                                                    Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

namespace {

// Two rounds of projection subtraction; enough to keep the Gram matrix of a
// small basis at I within ~1e-15.
void project_out(const std::vector<ComplexVector>& basis, ComplexVector& v) {
    for (int round = 0; round < 2; ++round)
        for (const ComplexVector& b : basis) v -= b.dot(v) * b;
}

// Rotates the first entry of maximum magnitude onto the positive real axis.
void phase_normalize_largest(ComplexVector& v) {
    Eigen::Index at = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        if (a > best) {
            best = a;
            at = i;
        }
    }
    if (best <= 0.0) return;
    const Complex ph = v(at) / best;
    v *= std::conj(ph);
}

} // namespace

std::vector<ComplexVector> complete_orthonormal(const std::vector<ComplexVector>& partial,
                                                Eigen::Index dim) {
    if (dim <= 0) throw DimensionError("complete_orthonormal: dim must be positive");
    if (static_cast<Eigen::Index>(partial.size()) > dim)
        throw DimensionError("complete_orthonormal: more vectors than dimensions");
    for (const ComplexVector& v : partial) {
        if (v.size() != dim)
            throw DimensionError("complete_orthonormal: vector size does not match dim");
        if (!all_finite(v))
            throw DomainError("complete_orthonormal: non-finite input vector");
    }

    if (!partial.empty()) {
        ComplexMatrix a(dim, static_cast<Eigen::Index>(partial.size()));
        for (std::size_t j = 0; j < partial.size(); ++j) a.col(static_cast<Eigen::Index>(j)) = partial[j];
        Eigen::JacobiSVD<ComplexMatrix> svd(a);
        if (svd.singularValues().minCoeff() < 1e-10)
            throw DegeneracyError("complete_orthonormal: input vectors are linearly dependent");
    }

    std::vector<ComplexVector> basis;
    basis.reserve(static_cast<std::size_t>(dim));
    for (const ComplexVector& v : partial) {
        ComplexVector u = v;
        project_out(basis, u);
        double n = u.norm();
        if (n < 1e-10)
            throw DegeneracyError("complete_orthonormal: input vectors are linearly dependent");
        basis.push_back(u / n);
    }

    for (Eigen::Index k = 0; k < dim && static_cast<Eigen::Index>(basis.size()) < dim; ++k) {
        ComplexVector u = ComplexVector::Zero(dim);
        u(k) = 1.0;
        project_out(basis, u);
        double n = u.norm();
        if (n < 1e-10) continue;
        u /= n;
        phase_normalize_largest(u);
        basis.push_back(u);
    }
    if (static_cast<Eigen::Index>(basis.size()) != dim)
        throw DegeneracyError("complete_orthonormal: failed to complete a basis");
    return basis;
}

} // namespace povmc

#include "povmc/povm.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace povmc {

namespace {

void apply_phase_convention(ComplexVector& w) {
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        double a = std::abs(w(i));
        if (a > 1e-12) {
            w *= std::conj(w(i) / a);
            return;
        }
    }
}

} // namespace

PovmElement make_element(ComplexVector weight, std::string label) {
    if (weight.size() != 2)
        throw DimensionError("make_element: weight vector must live in C^2");
    if (!all_finite(weight))
        throw DomainError("make_element: non-finite weight vector");
    if (weight.squaredNorm() > 1.0 + 1e-10)
        throw DomainError("make_element: weight norm^2 exceeds 1 (element not <= I)");
    apply_phase_convention(weight);
    return PovmElement{std::move(weight), std::move(label)};
}

ComplexMatrix element_operator(const PovmElement& e) {
    return e.weight * e.weight.adjoint();
}

ValidationReport validate(const Povm& p) {
    ValidationReport rep;
    bool elements_ok = true;
    ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
    for (const PovmElement& e : p.elements) {
        ElementReport er;
        er.label = e.label;
        if (e.weight.size() == 2 && all_finite(e.weight)) {
            er.weight_norm_sq = e.weight.squaredNorm();
            er.psd = true; // w w* is PSD by construction
            sum += element_operator(e);
            if (er.weight_norm_sq > 1.0 + 1e-10) elements_ok = false;
        } else {
            er.psd = false;
            elements_ok = false;
        }
        rep.per_element.push_back(std::move(er));
    }
    sum.diagonal().array() -= Complex(1.0, 0.0);
    rep.completeness_residual = max_norm(sum);
    rep.valid = elements_ok && !p.elements.empty() && rep.completeness_residual <= 1e-10;
    return rep;
}

std::vector<ComplexVector> rank_one_decompose(const ComplexMatrix& op, double tol) {
    if (!is_psd(op, tol))
        throw DomainError("rank_one_decompose: operator is not PSD within tolerance");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (op + op.adjoint()));
    std::vector<ComplexVector> out;
    for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i) {
        double lam = es.eigenvalues()(i);
        if (lam <= 1e-12) continue;
        ComplexVector v = std::sqrt(lam) * es.eigenvectors().col(i);
        apply_phase_convention(v);
        out.push_back(std::move(v));
    }
    return out;
}

std::array<std::pair<std::string, ComplexVector>, 6> hexagon_vectors() {
    const double h = 0.5;
    const double s = std::sqrt(3.0) / 2.0;
    auto mk = [](double a, double b) {
        ComplexVector v(2);
        v << Complex(a, 0.0), Complex(b, 0.0);
        return v;
    };
    return {{{"A+", mk(1.0, 0.0)},
             {"A-", mk(0.0, 1.0)},
             {"B+", mk(s, h)},
             {"B-", mk(h, -s)},
             {"C+", mk(h, s)},
             {"C-", mk(s, -h)}}};
}

std::array<Povm, 3> hexagon_povms() {
    auto vecs = hexagon_vectors();
    auto at = [&](int i) {
        const double inv = 1.0 / std::sqrt(2.0);
        return make_element(inv * vecs[static_cast<std::size_t>(i)].second,
                            vecs[static_cast<std::size_t>(i)].first);
    };
    Povm ab{{at(0), at(1), at(2), at(3)}};
    Povm bc{{at(2), at(3), at(4), at(5)}};
    Povm ca{{at(4), at(5), at(0), at(1)}};
    return {std::move(ab), std::move(bc), std::move(ca)};
}

std::array<std::string, 3> hexagon_povm_labels() { return {"AB", "BC", "CA"}; }

DensityMatrix make_density_matrix(ComplexMatrix m) {
    if (m.rows() != 2 || m.cols() != 2)
        throw DimensionError("make_density_matrix: expected a 2x2 matrix");
    if (!is_hermitian(m, 1e-12))
        throw ShapeError("make_density_matrix: matrix is not Hermitian within 1e-12");
    if (std::abs(m.trace().real() - 1.0) > 1e-12 || std::abs(m.trace().imag()) > 1e-12)
        throw DomainError("make_density_matrix: trace differs from 1");
    if (!is_psd(m, 1e-10))
        throw DomainError("make_density_matrix: matrix is not PSD");
    return DensityMatrix{std::move(m)};
}

std::vector<double> outcome_probabilities(const Povm& p, const DensityMatrix& rho) {
    ValidationReport rep = validate(p);
    if (!rep.valid)
        throw DomainError("outcome_probabilities: POVM is not valid (completeness residual " +
                          std::to_string(rep.completeness_residual) + ")");
    std::vector<double> probs;
    probs.reserve(p.elements.size());
    for (const PovmElement& e : p.elements) {
        Complex q = (e.weight.adjoint() * rho.matrix * e.weight)(0);
        probs.push_back(std::max(0.0, q.real()));
    }
    return probs;
}

Povm random_rank_one_povm(int m, std::mt19937_64& rng) {
    if (m < 2) throw DomainError("random_rank_one_povm: need at least 2 elements");
    std::normal_distribution<double> n01(0.0, 1.0);
    ComplexMatrix v(2, m);
    for (int d = 0; d < m; ++d)
        for (int i = 0; i < 2; ++i) v(i, d) = Complex(n01(rng), n01(rng));
    ComplexMatrix s = v * v.adjoint();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s);
    ComplexMatrix isqrt = es.eigenvectors() *
                          es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                          es.eigenvectors().adjoint();
    ComplexMatrix w = isqrt * v;
    Povm p;
    for (int d = 0; d < m; ++d)
        p.elements.push_back(make_element(w.col(d), "E" + std::to_string(d)));
    return p;
}

Povm povm_from_unitary_columns(const ComplexMatrix& u, int m) {
    if (!is_unitary(u, 1e-10))
        throw DomainError("povm_from_unitary_columns: matrix is not unitary");
    if (m != u.cols())
        throw DimensionError("povm_from_unitary_columns: m must equal the matrix dimension");
    Povm p;
    for (int d = 0; d < m; ++d) {
        ComplexVector w(2);
        w << u(0, d), u(1, d);
        p.elements.push_back(make_element(std::move(w), "E" + std::to_string(d)));
    }
    return p;
}

} // namespace povmc

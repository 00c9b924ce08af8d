#include "povmc/rng.hpp"

#include <Eigen/QR>

namespace povmc {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(stream)));
}

ComplexVector random_unit_vector(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        double re = n01(rng);
        double im = n01(rng);
        v(i) = Complex(re, im);
    }
    double n = v.norm();
    if (n == 0.0) {
        v.setZero();
        v(0) = 1.0;
        return v;
    }
    return v / n;
}

ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = Complex(n01(rng), n01(rng));
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Phase fix makes the distribution Haar rather than QR-convention biased.
    for (Eigen::Index j = 0; j < dim; ++j) {
        Complex d = r(j, j);
        double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return q;
}

} // namespace povmc

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "povmc/errors.hpp"

namespace povmc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Entrywise max absolute value; 0 for an empty matrix.
double max_norm(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

/// True iff m is square and ||m* m - I||_max <= tol.
/// Throws DimensionError for non-square input.
bool is_unitary(const ComplexMatrix& m, double tol = 1e-10);

/// True iff m is Hermitian within tol and its eigenvalues are >= -tol.
/// Throws DimensionError (non-square) or ShapeError (non-Hermitian beyond tol).
bool is_psd(const ComplexMatrix& m, double tol = 1e-10);

bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10);

/// Extends `partial` (linearly independent vectors in C^dim) to an orthonormal
/// basis of C^dim. The leading output vectors are the modified-Gram-Schmidt
/// orthonormalization of the inputs (same span, same order); the rest are drawn
/// from canonical unit vectors, skipping candidates whose residual norm falls
/// below 1e-10. Generated vectors are phased so their largest-magnitude entry
/// is real positive. Output Gram matrix equals I within 1e-12.
/// Throws DimensionError (size mismatch, too many vectors) or DegeneracyError
/// (inputs dependent: smallest singular value < 1e-10).
std::vector<ComplexVector> complete_orthonormal(const std::vector<ComplexVector>& partial,
                                                Eigen::Index dim);

} // namespace povmc

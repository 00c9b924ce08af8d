#pragma once

#include <array>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "povmc/linalg.hpp"

namespace povmc {

/// Rank-1 POVM element E = w w* stored by its weight vector w in C^2.
/// Weight vectors carry a fixed global-phase convention: the first entry of
/// magnitude above 1e-12 is real nonnegative.
struct PovmElement {
    ComplexVector weight;
    std::string label;
};

/// Checks dimension/finiteness/norm (||w||^2 <= 1 + 1e-10), applies the phase
/// convention. Throws DimensionError or DomainError.
PovmElement make_element(ComplexVector weight, std::string label);

/// The element operator w w* (2x2 PSD).
ComplexMatrix element_operator(const PovmElement& e);

struct Povm {
    std::vector<PovmElement> elements;
};

struct ElementReport {
    std::string label;
    bool psd = false;
    double weight_norm_sq = 0.0;
};

struct ValidationReport {
    std::vector<ElementReport> per_element;
    double completeness_residual = 0.0; // ||sum E_d - I||_max
    bool valid = false;                 // residual <= 1e-10 and every element well formed
};

ValidationReport validate(const Povm& p);

/// Splits a 2x2 PSD operator into <=2 weight vectors with sum v v* = op.
/// Eigenvalues below 1e-12 are dropped; outputs follow the phase convention.
/// Throws DomainError for non-PSD input.
std::vector<ComplexVector> rank_one_decompose(const ComplexMatrix& op, double tol = 1e-10);

/// The six hexagon Bloch-equator vectors, in order A+, A-, B+, B-, C+, C-.
std::array<std::pair<std::string, ComplexVector>, 6> hexagon_vectors();

/// The three four-element hexagon POVMs {A,B}, {B,C}, {C,A}; each element is
/// half a projector onto one hexagon vector and each operator appears in
/// exactly two of the three POVMs.
std::array<Povm, 3> hexagon_povms();

/// Labels "AB", "BC", "CA" matching hexagon_povms() order.
std::array<std::string, 3> hexagon_povm_labels();

struct DensityMatrix {
    ComplexMatrix matrix; // 2x2
};

/// Validates Hermiticity (1e-12), unit trace (1e-12) and PSD (1e-10).
DensityMatrix make_density_matrix(ComplexMatrix m);

/// Born probabilities Tr(E_d rho) in element order. Requires a valid POVM.
std::vector<double> outcome_probabilities(const Povm& p, const DensityMatrix& rho);

/// Random rank-1 POVM with m elements: Gaussian draws v_d whitened by
/// S^{-1/2} with S = sum v v*, so completeness holds to machine precision.
Povm random_rank_one_povm(int m, std::mt19937_64& rng);

/// POVM read off the top two rows of a unitary: element d has weight vector
/// (u(0,d), u(1,d)). With m = dim this is the reverse of Neumark dilation.
Povm povm_from_unitary_columns(const ComplexMatrix& u, int m);

} // namespace povmc

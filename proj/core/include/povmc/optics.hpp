#pragma once

#include <array>
#include <string>
#include <vector>

#include "povmc/neumark.hpp"
#include "povmc/povm.hpp"
#include "povmc/synthesis.hpp"

namespace povmc {

/// Pbs and Detector are terminal elements; they never appear in a stage list.
/// Each output path implicitly ends in one PBS whose H/V ports are described
/// by DetectorSpec entries.
enum class ComponentKind { Hwp, Qwp, PhaseShifter, BeamSplitter5050, Pbs, Detector };

struct Component {
    ComponentKind kind = ComponentKind::Hwp;
    double theta_deg = 0.0;        // wave plates, normalized to [0, 180)
    double phi_rad = 0.0;          // phase shifters, normalized to [0, 2*pi)
    int path = 0;                  // single-path components, 1-based
    std::array<int, 2> paths{0, 0}; // beam splitter pair, paths[0] < paths[1]
};

Component make_hwp(int path, double theta_deg);
Component make_qwp(int path, double theta_deg);
Component make_phase_shifter(int path, double phi_rad);
Component make_beam_splitter(int q, int p);

struct DetectorSpec {
    int path = 0;
    char port = 'H'; // 'H' or 'V'
    std::string label;
};

/// 0-based coordinate in C^{n_paths} (x) C^2 read by this detector.
int detector_coordinate(const DetectorSpec& d);

struct OpticalCircuit {
    int n_paths = 0;
    std::vector<Component> stages;
    std::vector<DetectorSpec> detectors;
};

/// Structural checks: stage kinds and path ranges, ordered distinct BS pairs,
/// and exactly one H and one V detector per path (each path terminates in one
/// PBS). Throws StructureError.
void validate_circuit(const OpticalCircuit& c);

ComplexMatrix hwp_matrix(double theta_deg);
ComplexMatrix qwp_matrix(double theta_deg);

/// 4x4 on (q,p)(x)pol: maps (|q> + i|p>)/sqrt2 -> |q>, (|q> - i|p>)/sqrt2 -> |p>.
ComplexMatrix beam_splitter_matrix();

/// Local unitary of a stage component (2x2, or 4x4 for the beam splitter).
/// Pbs/Detector are not stage components: StructureError.
ComplexMatrix component_unitary(const Component& c);

/// Ordered product of embedded stage unitaries, first stage applied first.
ComplexMatrix circuit_unitary(const OpticalCircuit& c);

/// m = exp(i*phase_rad) * QWP(alpha) * HWP(beta) * QWP(gamma), QWP(gamma) first.
struct WavePlateGadget {
    double alpha_deg = 0.0;
    double beta_deg = 0.0;
    double gamma_deg = 0.0;
    double phase_rad = 0.0;
};

/// Closed-form wave-plate decomposition of any 2x2 unitary via its Bloch
/// rotation. Residual under 1e-10 is verified; throws DomainError for
/// non-unitary input.
WavePlateGadget qhq_solve(const ComplexMatrix& m);

/// Cosine-sine decomposition of a 4x4 unitary in 2+2 blocks:
/// g = diag(l1,l2) * [[C,S],[-S,C]] * diag(r1,r2)^dagger, C=diag(c), S=diag(s),
/// c descending in [0,1]. Reassembly is verified to 1e-10.
struct CsdResult {
    ComplexMatrix l1, l2, r1, r2;
    Eigen::Vector2d c, s;
};
CsdResult csd_4x4(const ComplexMatrix& g);

/// Appends stages realizing the polarization unitary m on `path`. Identity,
/// pure-phase and (phase x) half-wave matches emit shortened forms; anything
/// else becomes PhaseShifter + QWP/HWP/QWP. With allow_phase_drop, phases that
/// only rescale detector amplitudes on this path are omitted (valid only after
/// the final path-mixing stage).
void emit_pol_unitary(const ComplexMatrix& m, int path, bool allow_phase_drop,
                      std::vector<Component>& stages);

/// Lowers a factorization of the dilation's basis-mapping unitary to beam
/// splitters and wave plates, with one detector per (path, port) labeled from
/// the dilation's outcome map (vacuum-sentinel ports included).
///
/// Each coupling factor becomes one Mach-Zehnder: two 50:50 beam splitters
/// with polarization unitaries before and between them; the unitaries behind
/// the second splitter are merged into the next factor touching that path, so
/// consecutive interferometers share their plates. A factor whose photon-side
/// input is confined to one path collapses to a single splitter when its live
/// columns split evenly.
///
/// The result reproduces the basis-mapping unitary on embedded states up to
/// one global phase per detector; its action on vacuum input ports (never
/// reachable from path 1) is left unconstrained, which is what permits the
/// single-splitter collapse. Detection statistics are preserved exactly.
OpticalCircuit lower_factorization(const MzFactorization& f, const DilationResult& d);

enum class HexagonPair { AB, BC, CA };

/// Hand-built reference circuits for the hexagon pairs: one splitter and at
/// most one half-wave plate per path.
OpticalCircuit hexagon_circuit(HexagonPair which);

/// Per-detector Born probabilities, aligned with c.detectors. Sums to 1 when
/// every coordinate carries a detector.
std::vector<double> detector_probabilities(const OpticalCircuit& c, const ComplexVector& psi);
std::vector<double> detector_probabilities(const OpticalCircuit& c, const DensityMatrix& rho);

/// POVM read back from the circuit: element d has the conjugated first two
/// entries of the detector-d row of the circuit unitary as weight vector.
Povm induced_povm(const OpticalCircuit& c);

} // namespace povmc

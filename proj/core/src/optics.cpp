#include "povmc/optics.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <utility>

#include <Eigen/SVD>

#include "povmc/errors.hpp"

namespace povmc {

namespace {

constexpr double kPi = std::numbers::pi;

double deg2rad(double d) { return d * kPi / 180.0; }
double rad2deg(double r) { return r * 180.0 / kPi; }

// Wave-plate matrices have period 180 degrees in the axis angle.
double normalize_angle_deg(double theta) {
    double t = std::fmod(theta, 180.0);
    if (t < 0.0) t += 180.0;
    return t;
}

double normalize_phase_rad(double phi) {
    double p = std::fmod(phi, 2.0 * kPi);
    if (p < 0.0) p += 2.0 * kPi;
    return p;
}

ComplexMatrix unitarize(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

ComplexMatrix block_diag2(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m.block(0, 0, 2, 2) = a;
    m.block(2, 2, 2, 2) = b;
    return m;
}

} // namespace

Component make_hwp(int path, double theta_deg) {
    Component c;
    c.kind = ComponentKind::Hwp;
    c.path = path;
    c.theta_deg = normalize_angle_deg(theta_deg);
    return c;
}

Component make_qwp(int path, double theta_deg) {
    Component c;
    c.kind = ComponentKind::Qwp;
    c.path = path;
    c.theta_deg = normalize_angle_deg(theta_deg);
    return c;
}

Component make_phase_shifter(int path, double phi_rad) {
    Component c;
    c.kind = ComponentKind::PhaseShifter;
    c.path = path;
    c.phi_rad = normalize_phase_rad(phi_rad);
    return c;
}

Component make_beam_splitter(int q, int p) {
    if (q < 1 || p <= q) throw StructureError("beam splitter needs paths q < p");
    Component c;
    c.kind = ComponentKind::BeamSplitter5050;
    c.paths = {q, p};
    return c;
}

int detector_coordinate(const DetectorSpec& d) {
    return 2 * (d.path - 1) + (d.port == 'V' ? 1 : 0);
}

void validate_circuit(const OpticalCircuit& c) {
    if (c.n_paths < 1) throw StructureError("circuit: need at least one path");
    for (const Component& s : c.stages) {
        switch (s.kind) {
        case ComponentKind::Hwp:
        case ComponentKind::Qwp:
        case ComponentKind::PhaseShifter:
            if (s.path < 1 || s.path > c.n_paths) throw StructureError("circuit: stage path out of range");
            break;
        case ComponentKind::BeamSplitter5050:
            if (s.paths[0] < 1 || s.paths[1] > c.n_paths || s.paths[0] >= s.paths[1])
                throw StructureError("circuit: beam splitter needs an ordered in-range path pair");
            break;
        default:
            throw StructureError("circuit: PBS/Detector are terminations, not stages");
        }
    }
    std::vector<int> seen(static_cast<std::size_t>(2 * c.n_paths), 0);
    for (const DetectorSpec& d : c.detectors) {
        if (d.path < 1 || d.path > c.n_paths) throw StructureError("circuit: detector path out of range");
        if (d.port != 'H' && d.port != 'V') throw StructureError("circuit: detector port must be 'H' or 'V'");
        seen[static_cast<std::size_t>(detector_coordinate(d))] += 1;
    }
    for (int v : seen)
        if (v != 1) throw StructureError("circuit: each path needs exactly one PBS with an H and a V detector");
}

ComplexMatrix hwp_matrix(double theta_deg) {
    const double t = 2.0 * deg2rad(theta_deg);
    ComplexMatrix m(2, 2);
    m << std::cos(t), std::sin(t), std::sin(t), -std::cos(t);
    return m;
}

ComplexMatrix qwp_matrix(double theta_deg) {
    const double t = deg2rad(theta_deg);
    ComplexMatrix r(2, 2);
    r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    ComplexMatrix d(2, 2);
    d << Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 1.0);
    return r * d * r.transpose();
}

ComplexMatrix beam_splitter_matrix() {
    const double inv = 1.0 / std::sqrt(2.0);
    const Complex mi(0.0, -inv), pi(0.0, inv);
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = inv;
    m(1, 1) = inv;
    m(0, 2) = mi;
    m(1, 3) = mi;
    m(2, 0) = inv;
    m(3, 1) = inv;
    m(2, 2) = pi;
    m(3, 3) = pi;
    return m;
}

ComplexMatrix component_unitary(const Component& c) {
    switch (c.kind) {
    case ComponentKind::Hwp:
        return hwp_matrix(c.theta_deg);
    case ComponentKind::Qwp:
        return qwp_matrix(c.theta_deg);
    case ComponentKind::PhaseShifter:
        return std::exp(Complex(0.0, c.phi_rad)) * ComplexMatrix::Identity(2, 2);
    case ComponentKind::BeamSplitter5050:
        return beam_splitter_matrix();
    default:
        throw StructureError("component_unitary: PBS/Detector carry no stage unitary");
    }
}

ComplexMatrix circuit_unitary(const OpticalCircuit& c) {
    validate_circuit(c);
    const int dim = 2 * c.n_paths;
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    for (const Component& s : c.stages) {
        const ComplexMatrix local = component_unitary(s);
        if (s.kind == ComponentKind::BeamSplitter5050) {
            u = (embed_block(BlockRotation{s.paths[1], s.paths[0], local}, dim) * u).eval();
        } else {
            u = (embed_local(LocalRotation{s.path, local}, dim) * u).eval();
        }
    }
    return u;
}

namespace {

// Adjoint action on the Bloch sphere: O_ij = tr(sigma_i m sigma_j m^dagger)/2.
Eigen::Matrix3d bloch_rotation(const ComplexMatrix& m) {
    std::array<ComplexMatrix, 3> sigma;
    sigma[0] = ComplexMatrix(2, 2);
    sigma[0] << 0, 1, 1, 0;
    sigma[1] = ComplexMatrix(2, 2);
    sigma[1] << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    sigma[2] = ComplexMatrix(2, 2);
    sigma[2] << 1, 0, 0, -1;
    Eigen::Matrix3d o;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            o(i, j) = 0.5 * (sigma[static_cast<std::size_t>(i)] * m *
                             sigma[static_cast<std::size_t>(j)] * m.adjoint())
                                .trace()
                                .real();
    return o;
}

Eigen::Matrix3d qwp_rotation(double primed_rad) {
    return bloch_rotation(qwp_matrix(rad2deg(primed_rad) / 2.0));
}

} // namespace

WavePlateGadget qhq_solve(const ComplexMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw DimensionError("qhq_solve: expected a 2x2 matrix");
    if (!is_unitary(m, 1e-10)) throw DomainError("qhq_solve: matrix is not unitary");

    // A quarter plate rotates the Bloch sphere by pi/2 about an xz-plane axis,
    // a half plate by pi. The middle plate must send +y to -y, which pins the
    // outer angles: pick gamma so O maps the preimage of +y into the xz-plane,
    // then alpha from where it lands, leaving a pi-rotation in the middle.
    const Eigen::Matrix3d o = bloch_rotation(m);
    double cp = 0.0;
    if (std::abs(o(1, 0)) > 1e-14 || std::abs(o(1, 2)) > 1e-14) cp = std::atan2(o(1, 0), o(1, 2));
    const Eigen::Vector3d v(std::cos(cp), 0.0, -std::sin(cp));
    const Eigen::Vector3d w = o * v;
    const double ap = std::atan2(-w.z(), w.x());

    const Eigen::Matrix3d k =
        qwp_rotation(ap).transpose() * o * qwp_rotation(cp).transpose();
    const Eigen::Matrix3d kp = k + Eigen::Matrix3d::Identity(); // = 2 u u^T for a pi-rotation about u
    int best = 0;
    for (int j = 1; j < 3; ++j)
        if (kp.col(j).norm() > kp.col(best).norm()) best = j;
    if (kp.col(best).norm() < 1e-8) throw DegeneracyError("qhq_solve: axis extraction failed");
    const Eigen::Vector3d u = kp.col(best).normalized();
    const double bp = std::atan2(u.x(), u.z());

    WavePlateGadget g;
    g.alpha_deg = normalize_angle_deg(rad2deg(ap / 2.0));
    g.beta_deg = normalize_angle_deg(rad2deg(bp / 2.0));
    g.gamma_deg = normalize_angle_deg(rad2deg(cp / 2.0));
    const ComplexMatrix a = qwp_matrix(g.alpha_deg) * hwp_matrix(g.beta_deg) * qwp_matrix(g.gamma_deg);
    const Complex tr = (a.adjoint() * m).trace();
    if (std::abs(tr) < 1e-8) throw DegeneracyError("qhq_solve: phase extraction failed");
    g.phase_rad = std::arg(tr);
    if (max_norm(std::exp(Complex(0.0, 1.0) * g.phase_rad) * a - m) > 1e-10)
        throw DegeneracyError("qhq_solve: residual exceeds tolerance");
    return g;
}

CsdResult csd_4x4(const ComplexMatrix& g) {
    if (g.rows() != 4 || g.cols() != 4) throw DimensionError("csd_4x4: expected a 4x4 matrix");
    if (!is_unitary(g, 1e-10)) throw DomainError("csd_4x4: matrix is not unitary");

    const ComplexMatrix g12 = g.block(0, 2, 2, 2);
    const ComplexMatrix g21 = g.block(2, 0, 2, 2);
    const ComplexMatrix g22 = g.block(2, 2, 2, 2);

    Eigen::JacobiSVD<ComplexMatrix> svd(g.block(0, 0, 2, 2),
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
    CsdResult r;
    r.l1 = svd.matrixU();
    r.r1 = svd.matrixV();
    r.c = svd.singularValues().cwiseMin(1.0).cwiseMax(0.0);
    r.s.setZero();
    r.l2.resize(2, 2);
    r.r2.resize(2, 2);

    // g21 r1 = -l2 S and g12^dagger l1 = r2 S fix the phase coupling between
    // the blocks. The column norms of g21 r1 measure the sines to full
    // precision even where sqrt(1 - c^2) has lost half its digits, so they
    // supply both the S entries and the participation test; columns are
    // extracted largest sine first so the polish projections run against the
    // best-conditioned direction.
    const ComplexMatrix bq = g21 * r.r1;
    const ComplexMatrix cq = g12.adjoint() * r.l1;
    Eigen::Vector2d ns;
    ns << bq.col(0).norm(), bq.col(1).norm();
    std::array<int, 2> order = {0, 1};
    if (ns(1) > ns(0)) order = {1, 0};

    std::vector<int> have;
    for (int idx : order) {
        if (ns(idx) <= 1e-8) {
            r.c(idx) = 1.0;
            continue;
        }
        r.s(idx) = ns(idx);
        ComplexVector col = -bq.col(idx);
        for (int j : have) col -= r.l2.col(j).dot(col) * r.l2.col(j);
        const double n = col.norm();
        if (n < 0.5 * ns(idx)) throw DegeneracyError("csd_4x4: dependent coupling columns");
        r.l2.col(idx) = col / n;
        have.push_back(idx);
    }
    if (have.empty()) {
        r.l2 = ComplexMatrix::Identity(2, 2);
    } else if (have.size() == 1) {
        const int got = have.front();
        const ComplexVector a = r.l2.col(got);
        ComplexVector b(2);
        b << -std::conj(a(1)), std::conj(a(0));
        r.l2.col(1 - got) = b;
    }

    // Cosine-dominant r2 columns are pinned through g22 = l2 C r2^dagger so
    // their phases follow l2 exactly; sine-dominant ones come from the
    // coupling block directly.
    have.clear();
    for (int idx : order) {
        ComplexVector col;
        if (r.c(idx) > 0.5) {
            col = g22.adjoint() * r.l2.col(idx) / r.c(idx);
        } else {
            col = cq.col(idx);
        }
        for (int j : have) col -= r.r2.col(j).dot(col) * r.r2.col(j);
        const double n = col.norm();
        if (n < 0.5) throw DegeneracyError("csd_4x4: dependent diagonal columns");
        r.r2.col(idx) = col / n;
        have.push_back(idx);
    }

    ComplexMatrix mid = ComplexMatrix::Zero(4, 4);
    mid(0, 0) = r.c(0);
    mid(1, 1) = r.c(1);
    mid(0, 2) = r.s(0);
    mid(1, 3) = r.s(1);
    mid(2, 0) = -r.s(0);
    mid(3, 1) = -r.s(1);
    mid(2, 2) = r.c(0);
    mid(3, 3) = r.c(1);
    const ComplexMatrix rebuilt =
        block_diag2(r.l1, r.l2) * mid * block_diag2(r.r1, r.r2).adjoint();
    if (max_norm(rebuilt - g) > 1e-10) throw DegeneracyError("csd_4x4: reassembly residual too large");
    return r;
}

void emit_pol_unitary(const ComplexMatrix& m, int path, bool allow_phase_drop,
                      std::vector<Component>& stages) {
    if (m.rows() != 2 || m.cols() != 2) throw DimensionError("emit_pol_unitary: expected a 2x2 matrix");
    if (!is_unitary(m, 1e-10)) throw DomainError("emit_pol_unitary: matrix is not unitary");

    const double offdiag = std::max(std::abs(m(0, 1)), std::abs(m(1, 0)));
    // Diagonal leftovers only rephase this path's two detector amplitudes.
    if (allow_phase_drop && offdiag <= 1e-12) return;

    if (max_norm(m - m(0, 0) * ComplexMatrix::Identity(2, 2)) <= 1e-12) {
        const double phi = std::arg(m(0, 0));
        if (!allow_phase_drop && std::abs(phi) > 1e-12) stages.push_back(make_phase_shifter(path, phi));
        return;
    }

    const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double phi_h = std::arg(-det) / 2.0;
    const ComplexMatrix r = std::exp(Complex(0.0, -phi_h)) * m;
    const bool reflection = std::abs(r(0, 0).imag()) <= 1e-12 && std::abs(r(0, 1).imag()) <= 1e-12 &&
                            std::abs(r(1, 0).imag()) <= 1e-12 && std::abs(r(1, 1).imag()) <= 1e-12 &&
                            std::abs(r(0, 1) - r(1, 0)) <= 1e-12 && std::abs(r(0, 0) + r(1, 1)) <= 1e-12;
    if (reflection) {
        if (!allow_phase_drop && std::abs(phi_h) > 1e-12) stages.push_back(make_phase_shifter(path, phi_h));
        stages.push_back(make_hwp(path, rad2deg(0.5 * std::atan2(r(0, 1).real(), r(0, 0).real()))));
        return;
    }

    const WavePlateGadget g = qhq_solve(m);
    if (!allow_phase_drop && std::abs(g.phase_rad) > 1e-12) stages.push_back(make_phase_shifter(path, g.phase_rad));
    stages.push_back(make_qwp(path, g.gamma_deg));
    stages.push_back(make_hwp(path, g.beta_deg));
    stages.push_back(make_qwp(path, g.alpha_deg));
}

OpticalCircuit lower_factorization(const MzFactorization& f, const DilationResult& d) {
    if (f.dim != 2 * d.n_paths)
        throw DomainError("lower_factorization: factorization and dilation dimensions differ");
    const int n = d.n_paths;
    const Complex i1(0.0, 1.0);
    const double sqrt2 = std::sqrt(2.0);

    OpticalCircuit circ;
    circ.n_paths = n;
    std::vector<ComplexMatrix> pend(static_cast<std::size_t>(n) + 1, ComplexMatrix::Identity(2, 2));
    std::set<int> live{1};

    for (const BlockRotation& factor : f.factors) {
        const int q = factor.q;
        const int p = factor.p;
        const bool ql = live.count(q) > 0;
        const bool pl = live.count(p) > 0;
        if (!ql && !pl) continue; // photon can never enter this interferometer

        const ComplexMatrix geff =
            factor.block.adjoint() * block_diag2(pend[static_cast<std::size_t>(q)],
                                                 pend[static_cast<std::size_t>(p)]);
        pend[static_cast<std::size_t>(q)] = ComplexMatrix::Identity(2, 2);
        pend[static_cast<std::size_t>(p)] = ComplexMatrix::Identity(2, 2);

        const double off = std::max(max_norm(geff.block(0, 2, 2, 2)), max_norm(geff.block(2, 0, 2, 2)));
        if (off <= 1e-9) {
            // No path mixing: keep as pending local rotations, liveness unchanged.
            pend[static_cast<std::size_t>(q)] = unitarize(geff.block(0, 0, 2, 2));
            pend[static_cast<std::size_t>(p)] = unitarize(geff.block(2, 2, 2, 2));
            continue;
        }

        if (ql != pl) {
            // Photon enters on one path only. If that input column splits
            // evenly, one splitter plus per-arm rotations reproduces it.
            const int colbase = ql ? 0 : 2;
            const ComplexMatrix aq = geff.block(0, colbase, 2, 2);
            const ComplexMatrix ap = geff.block(2, colbase, 2, 2);
            ComplexMatrix xq = sqrt2 * aq;
            ComplexMatrix xp = sqrt2 * ap;
            if (is_unitary(xq, 1e-10) && is_unitary(xp, 1e-10)) {
                circ.stages.push_back(make_beam_splitter(q, p));
                if (!ql) {
                    xq *= i1;
                    xp *= -i1;
                }
                pend[static_cast<std::size_t>(q)] = std::move(xq);
                pend[static_cast<std::size_t>(p)] = std::move(xp);
                live.insert(q);
                live.insert(p);
                continue;
            }
        }

        // Full Mach-Zehnder: pre-rotations, splitter, arm phases, splitter.
        // The left CSD factors stay pending to merge into later stages.
        const CsdResult csd = csd_4x4(geff);
        if (ql) emit_pol_unitary(csd.r1.adjoint(), q, false, circ.stages);
        if (pl) emit_pol_unitary(ComplexMatrix(-csd.r2.adjoint()), p, false, circ.stages);
        circ.stages.push_back(make_beam_splitter(q, p));
        ComplexMatrix dq = ComplexMatrix::Zero(2, 2);
        for (int j = 0; j < 2; ++j) {
            const double theta = std::atan2(csd.s(j), csd.c(j));
            dq(j, j) = std::exp(i1 * (-theta - kPi / 4.0));
        }
        emit_pol_unitary(dq, q, false, circ.stages);
        emit_pol_unitary(dq.conjugate(), p, false, circ.stages);
        circ.stages.push_back(make_beam_splitter(q, p));
        pend[static_cast<std::size_t>(q)] = std::exp(i1 * kPi / 4.0) * csd.l1;
        pend[static_cast<std::size_t>(p)] = std::exp(-i1 * kPi / 4.0) * csd.l2;
        live.insert(q);
        live.insert(p);
    }

    for (const LocalRotation& l : f.local_tail) {
        if (l.path < 1 || l.path > n) throw DomainError("lower_factorization: tail path out of range");
        pend[static_cast<std::size_t>(l.path)] =
            (l.unitary * pend[static_cast<std::size_t>(l.path)]).eval();
    }

    for (int path = 1; path <= n; ++path) {
        if (live.count(path) == 0) continue;
        emit_pol_unitary(pend[static_cast<std::size_t>(path)], path, true, circ.stages);
    }

    circ.detectors.reserve(static_cast<std::size_t>(2 * n));
    for (int coord = 0; coord < 2 * n; ++coord) {
        DetectorSpec det;
        det.path = coord / 2 + 1;
        det.port = (coord % 2 == 0) ? 'H' : 'V';
        det.label = d.outcome_labels[static_cast<std::size_t>(coord)];
        circ.detectors.push_back(std::move(det));
    }
    return circ;
}

OpticalCircuit hexagon_circuit(HexagonPair which) {
    OpticalCircuit c;
    c.n_paths = 2;
    c.stages.push_back(make_beam_splitter(1, 2));
    auto det = [](int path, char port, const char* label) {
        return DetectorSpec{path, port, label};
    };
    switch (which) {
    case HexagonPair::AB:
        c.stages.push_back(make_hwp(1, 15.0));
        c.detectors = {det(2, 'H', "A+"), det(2, 'V', "A-"), det(1, 'H', "B+"), det(1, 'V', "B-")};
        break;
    case HexagonPair::BC:
        c.stages.push_back(make_hwp(1, 15.0));
        c.stages.push_back(make_hwp(2, 30.0));
        c.detectors = {det(1, 'H', "B+"), det(1, 'V', "B-"), det(2, 'H', "C+"), det(2, 'V', "C-")};
        break;
    case HexagonPair::CA:
        c.stages.push_back(make_hwp(1, 30.0));
        c.detectors = {det(1, 'H', "C+"), det(1, 'V', "C-"), det(2, 'H', "A+"), det(2, 'V', "A-")};
        break;
    }
    return c;
}

std::vector<double> detector_probabilities(const OpticalCircuit& c, const ComplexVector& psi) {
    const ComplexMatrix u = circuit_unitary(c);
    const ComplexVector out = u * embed_state(psi, c.n_paths).vector;
    std::vector<double> probs;
    probs.reserve(c.detectors.size());
    for (const DetectorSpec& d : c.detectors) probs.push_back(std::norm(out(detector_coordinate(d))));
    return probs;
}

std::vector<double> detector_probabilities(const OpticalCircuit& c, const DensityMatrix& rho) {
    const ComplexMatrix u = circuit_unitary(c);
    const ComplexMatrix a = u.leftCols(2);
    const ComplexMatrix m = a * rho.matrix * a.adjoint();
    std::vector<double> probs;
    probs.reserve(c.detectors.size());
    for (const DetectorSpec& d : c.detectors)
        probs.push_back(std::max(0.0, m(detector_coordinate(d), detector_coordinate(d)).real()));
    return probs;
}

Povm induced_povm(const OpticalCircuit& c) {
    const ComplexMatrix u = circuit_unitary(c);
    Povm p;
    for (const DetectorSpec& d : c.detectors) {
        const int coord = detector_coordinate(d);
        ComplexVector w(2);
        w << std::conj(u(coord, 0)), std::conj(u(coord, 1));
        p.elements.push_back(make_element(std::move(w), d.label));
    }
    return p;
}

} // namespace povmc

// Acceptance suite: seven independent criteria, one pass/fail line each.
// Exits 0 only if every criterion holds.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "povmc/io.hpp"
#include "povmc/kstest.hpp"
#include "povmc/linalg.hpp"
#include "povmc/neumark.hpp"
#include "povmc/optics.hpp"
#include "povmc/pipeline.hpp"
#include "povmc/povm.hpp"
#include "povmc/rng.hpp"
#include "povmc/simulator.hpp"
#include "povmc/synthesis.hpp"

using namespace povmc;

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

int failures = 0;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void report(int n, const char* name, bool ok, const std::string& detail, double elapsed_ms) {
    std::printf("criterion %d (%s): %s (%s; %.2f ms)\n", n, name, ok ? "PASS" : "FAIL",
                detail.c_str(), elapsed_ms);
    if (!ok) ++failures;
}

struct CorpusEntry {
    Povm povm;
    CompileResult compiled;
};

void criterion1() {
    const auto t0 = Clock::now();
    const ContradictionCertificate cert = enumerate_contradiction();
    const double t = ms_since(t0);
    const bool ok = cert.total_assignments == 64 && cert.valid_assignments == 0 &&
                    cert.parity_contradiction && cert.required_yes_sum == 3 &&
                    cert.element_multiplicity == 2 && t < 1.0;
    std::ostringstream d;
    d << cert.valid_assignments << " of " << cert.total_assignments
      << " assignments valid; achievable yes-sums all even vs required "
      << cert.required_yes_sum;
    report(1, "KS contradiction", ok, d.str(), t);
}

void criterion2() {
    const auto t0 = Clock::now();
    const CompileResult r = compile_povm(hexagon_povms()[1]);
    bool ok = r.circuit.stages.size() == 3 && r.circuit.detectors.size() == 4;
    double dev_b = 1.0;
    double dev_c = 1.0;
    if (ok) {
        ok = r.circuit.stages[0].kind == ComponentKind::BeamSplitter5050 &&
             r.circuit.stages[1].kind == ComponentKind::Hwp && r.circuit.stages[1].path == 1 &&
             r.circuit.stages[2].kind == ComponentKind::Hwp && r.circuit.stages[2].path == 2;
    }
    if (ok) {
        const double h = 0.5;
        const double s = std::sqrt(3.0) / 2.0;
        ComplexMatrix ub(2, 2);
        ub << s, h, h, -s;
        ComplexMatrix uc(2, 2);
        uc << h, s, s, -h;
        dev_b = max_norm(hwp_matrix(r.circuit.stages[1].theta_deg) - ub);
        dev_c = max_norm(hwp_matrix(r.circuit.stages[2].theta_deg) - uc);
        ok = dev_b <= 1e-12 && dev_c <= 1e-12;
        const char* want[] = {"B+", "B-", "C+", "C-"};
        for (int i = 0; i < 4; ++i) ok = ok && r.circuit.detectors[i].label == want[i];
    }
    std::ostringstream d;
    d << "one BS + HWP(" << r.circuit.stages[1].theta_deg << ") + HWP("
      << r.circuit.stages[2].theta_deg << "), plate deviations " << dev_b << ", " << dev_c;
    report(2, "hexagon compilation", ok, d.str(), ms_since(t0));
}

std::vector<CorpusEntry> build_corpus() {
    std::vector<CorpusEntry> corpus;
    std::mt19937_64 rng = make_rng(987654321);
    for (int k = 0; k < 100; ++k) {
        const int m = 2 + k % 7;
        CorpusEntry e;
        e.povm = random_rank_one_povm(m, rng);
        e.compiled = compile_povm(e.povm);
        corpus.push_back(std::move(e));
    }
    return corpus;
}

void criterion3(const std::vector<CorpusEntry>& corpus) {
    const auto t0 = Clock::now();
    double worst_mapped = 0.0;
    double worst_sentinel = 0.0;
    std::mt19937_64 rng = make_rng(13572468);
    for (const CorpusEntry& e : corpus) {
        const DilationResult& d = e.compiled.dilation;
        const int dim = static_cast<int>(d.columns.rows());
        for (int trial = 0; trial < 1000; ++trial) {
            const ComplexVector psi = random_unit_vector(2, rng);
            const EmbeddedState big = embed_state(psi, d.n_paths);
            for (int c = 0; c < dim; ++c) {
                const double lifted = std::norm(d.columns.col(c).dot(big.vector));
                const int elem = d.outcome_map[static_cast<std::size_t>(c)];
                if (elem == kVacuumSentinel) {
                    worst_sentinel = std::max(worst_sentinel, lifted);
                } else {
                    const Complex ov =
                        e.povm.elements[static_cast<std::size_t>(elem)].weight.dot(psi);
                    worst_mapped = std::max(worst_mapped, std::abs(lifted - std::norm(ov)));
                }
            }
        }
    }
    const double t = ms_since(t0);
    const bool ok = worst_mapped <= 1e-10 && worst_sentinel <= 1e-20 && t < 10000.0;
    std::ostringstream d;
    d << "100 POVMs x 1000 states: max deviation " << worst_mapped << ", max sentinel probability "
      << worst_sentinel;
    report(3, "Neumark restriction", ok, d.str(), t);
}

void criterion4() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    bool counts_ok = true;
    std::mt19937_64 rng = make_rng(24681357);
    for (int n_paths = 2; n_paths <= 5; ++n_paths) {
        const int expected = n_paths * (n_paths - 1) / 2;
        for (int trial = 0; trial < 50; ++trial) {
            const ComplexMatrix u = random_unitary(2 * n_paths, rng);
            const MzFactorization f = eliminate(u);
            counts_ok = counts_ok && static_cast<int>(f.factors.size()) == expected;
            worst = std::max(worst, max_norm(reconstruct(f) - u));
        }
    }
    const double t = ms_since(t0);
    const bool ok = worst <= 1e-9 && counts_ok && t < 10000.0;
    std::ostringstream d;
    d << "50 unitaries per N in {2..5}: max reconstruction error " << worst << ", factor counts "
      << (counts_ok ? "= N(N-1)/2 (3 at N=3)" : "WRONG");
    report(4, "synthesis round trip", ok, d.str(), t);
}

void criterion5(const std::vector<CorpusEntry>& corpus) {
    const auto t0 = Clock::now();
    double worst = 0.0;
    std::mt19937_64 rng = make_rng(11223344);
    for (const CorpusEntry& e : corpus) {
        std::unordered_map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < e.povm.elements.size(); ++i)
            index[e.povm.elements[i].label] = i;
        for (int trial = 0; trial < 25; ++trial) {
            const ComplexVector psi = random_unit_vector(2, rng);
            const DensityMatrix rho = make_density_matrix(psi * psi.adjoint());
            const std::vector<double> forward = detector_probabilities(e.compiled.circuit, psi);
            const std::vector<double> born = outcome_probabilities(e.povm, rho);
            for (std::size_t i = 0; i < forward.size(); ++i) {
                const std::string& label = e.compiled.circuit.detectors[i].label;
                const auto it = index.find(label);
                const double expected = it == index.end() ? 0.0 : born[it->second];
                worst = std::max(worst, std::abs(forward[i] - expected));
            }
        }
    }
    double hex_worst = 0.0;
    ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
    const DensityMatrix maximally_mixed = make_density_matrix(half);
    for (const Povm& p : hexagon_povms()) {
        const CompileResult r = compile_povm(p);
        for (double prob : detector_probabilities(r.circuit, maximally_mixed))
            hex_worst = std::max(hex_worst, std::abs(prob - 0.25));
    }
    const double t = ms_since(t0);
    const bool ok = worst <= 1e-8 && hex_worst <= 1e-8;
    std::ostringstream d;
    d << "corpus max |forward - Born| " << worst << "; hexagons on I/2 max |p - 1/4| " << hex_worst;
    report(5, "end-to-end Born rule", ok, d.str(), t);
}

void criterion6() {
    const auto t0 = Clock::now();
    const std::array<Povm, 3> povms = hexagon_povms();
    const std::array<std::string, 3> labels = hexagon_povm_labels();
    bool ok = true;
    std::ostringstream d;
    for (std::size_t i = 0; i < 3; ++i) {
        const CompileResult r = compile_povm(povms[i]);
        SourceModel model;
        model.seed = splitmix64(42ULL ^ splitmix64(static_cast<std::uint64_t>(i)));
        CountTable raw = simulate_counts(r.circuit, model);
        raw.povm_label = labels[i];
        const CountTable scaled = scale_two_fold(raw, model.detector_efficiency);
        const AnalysisReport rep = analyze(scaled, povms[i], traced_state());
        const double sigma =
            std::sqrt(0.25 * 0.75 / static_cast<double>(rep.total_one_fold));
        for (const OutcomeStat& s : rep.per_outcome)
            ok = ok && std::abs(s.frequency - 0.25) <= 4.0 * sigma;
        ok = ok && rep.total_one_fold >= 24000 && rep.total_one_fold <= 106000;
        ok = ok && rep.total_two_fold >= 50 && rep.total_two_fold <= 400;
        ok = ok && rep.exactly_one_fraction >= 0.985 && rep.exactly_one_fraction <= 0.999;
        if (i) d << ", ";
        d << labels[i] << " " << rep.total_one_fold << "/" << rep.total_two_fold << " fraction "
          << rep.exactly_one_fraction;
    }
    const double t = ms_since(t0);
    ok = ok && t < 30000.0;
    report(6, "calibrated statistics", ok, d.str(), t);
}

void criterion7() {
    const auto t0 = Clock::now();
    const fs::path a = fs::temp_directory_path() / "povmc_acceptance_a";
    const fs::path b = fs::temp_directory_path() / "povmc_acceptance_b";
    fs::remove_all(a);
    fs::remove_all(b);
    SourceModel model;
    model.seed = 4242;
    std::ostringstream sink;
    std::streambuf* old = std::cout.rdbuf(sink.rdbuf());
    const int ra = cmd_ks_demo(model, false, a.string());
    const int rb = cmd_ks_demo(model, false, b.string());
    std::cout.rdbuf(old);
    bool ok = ra == 0 && rb == 0;
    int compared = 0;
    const char* names[] = {"circuit_AB.json", "circuit_BC.json", "circuit_CA.json",
                           "counts_AB.csv",   "counts_BC.csv",   "counts_CA.csv",
                           "analysis_AB.json", "analysis_BC.json", "analysis_CA.json",
                           "certificate.json", "violation.json"};
    if (ok) {
        for (const char* name : names) {
            ok = ok && read_text_file((a / name).string()) == read_text_file((b / name).string());
            ++compared;
        }
    }
    fs::remove_all(a);
    fs::remove_all(b);
    std::ostringstream d;
    d << compared << " output files byte-identical across same-seed reruns";
    report(7, "determinism", ok, d.str(), ms_since(t0));
}

} // namespace

int main() {
    criterion1();
    criterion2();
    const std::vector<CorpusEntry> corpus = build_corpus();
    criterion3(corpus);
    criterion4();
    criterion5(corpus);
    criterion6();
    criterion7();
    if (failures != 0) {
        std::printf("acceptance: %d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("acceptance: 7/7 criteria passed\n");
    return 0;
}

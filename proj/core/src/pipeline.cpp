#include "povmc/pipeline.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

#include "povmc/errors.hpp"
#include "povmc/io.hpp"
#include "povmc/kstest.hpp"
#include "povmc/rng.hpp"

namespace povmc {

namespace {

SourceModel apply_ideal(SourceModel src, bool ideal) {
    if (ideal) {
        src.detector_efficiency = 1.0;
        src.double_pair_fraction = 0.0;
        src.per_detector_efficiency.clear();
    }
    return src;
}

std::string path_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

std::string with_extension(const std::string& path, const char* ext) {
    std::filesystem::path p(path);
    p.replace_extension(ext);
    return p.string();
}

int report_error(const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (dynamic_cast<const ParseError*>(&e) != nullptr || dynamic_cast<const IoError*>(&e) != nullptr)
        return 2;
    return 1;
}

} // namespace

CompileResult compile_povm(const Povm& p) {
    CompileResult r;
    const ValidationReport rep = validate(p);
    r.completeness_residual = rep.completeness_residual;
    if (!rep.valid) {
        std::ostringstream msg;
        msg << "compile: POVM is invalid (completeness residual " << rep.completeness_residual
            << ")";
        throw DomainError(msg.str());
    }
    r.dilation = dilate(p);
    const ComplexMatrix u = basis_mapping_unitary(r.dilation);
    const MzFactorization raw = eliminate(u);
    r.factor_count = static_cast<int>(raw.factors.size());
    r.reconstruction_residual = max_norm(reconstruct(raw) - u);
    r.factorization = prune_identity_blocks(raw, {1});
    r.pruned_count = r.factor_count - static_cast<int>(r.factorization.factors.size());
    r.circuit = lower_factorization(r.factorization, r.dilation);

    const Povm induced = induced_povm(r.circuit);
    for (std::size_t k = 0; k < induced.elements.size(); ++k) {
        const int mapped = r.dilation.outcome_map[k];
        const ComplexMatrix got = element_operator(induced.elements[k]);
        const ComplexMatrix want = mapped == kVacuumSentinel
                                       ? ComplexMatrix::Zero(2, 2).eval()
                                       : element_operator(p.elements[static_cast<std::size_t>(mapped)]);
        r.induced_residual = std::max(r.induced_residual, max_norm(got - want));
    }
    return r;
}

int cmd_compile(const std::string& povm_path, const std::string& out_circuit_path) {
    try {
        const Povm p = load_povm(povm_path);
        const CompileResult r = compile_povm(p);
        const std::string out = out_circuit_path.empty()
                                    ? with_extension(povm_path, ".circuit.json")
                                    : out_circuit_path;
        save_circuit(r.circuit, out);
        std::cout << "compiled " << povm_path << " -> " << out << "\n";
        std::cout << "  paths: " << r.dilation.n_paths << ", stages: " << r.circuit.stages.size()
                  << ", factors kept: " << r.factorization.factors.size() << " of "
                  << r.factor_count << "\n";
        std::cout << "  completeness residual:  " << r.completeness_residual << "\n";
        std::cout << "  reconstruction residual: " << r.reconstruction_residual << "\n";
        std::cout << "  induced POVM residual:   " << r.induced_residual << "\n";
        return 0;
    } catch (const Error& e) {
        return report_error(e);
    }
}

int cmd_simulate(const std::string& circuit_path, const SourceModel& src, bool ideal,
                 const std::string& out_csv_path) {
    try {
        const OpticalCircuit circuit = load_circuit(circuit_path);
        const SourceModel model = apply_ideal(src, ideal);
        CountTable raw = simulate_counts(circuit, model);
        raw.povm_label = path_stem(circuit_path);
        const CountTable scaled = scale_two_fold(raw, model.detector_efficiency);
        const std::string out = out_csv_path.empty()
                                    ? with_extension(circuit_path, ".counts.csv")
                                    : out_csv_path;
        save_counts(scaled, out);
        const AnalysisReport rep = analyze(scaled, induced_povm(circuit), traced_state());
        const std::string analysis_path = with_extension(out, ".analysis.json");
        write_text_file(analysis_path, analysis_to_json(rep));
        std::cout << "simulated " << circuit_path << " (seed " << model.seed << ", "
                  << model.duration_s << " s)\n";
        std::cout << "  one-fold: " << rep.total_one_fold << ", two-fold (scaled): "
                  << rep.total_two_fold << ", higher: " << rep.higher_fold << "\n";
        std::cout << "  exactly-one fraction: " << rep.exactly_one_fraction << "\n";
        std::cout << "  chi^2 " << rep.chi_square << " vs threshold " << rep.chi_square_threshold
                  << (rep.consistent_with_model ? " (consistent)" : " (inconsistent)") << "\n";
        std::cout << "  wrote " << out << " and " << analysis_path << "\n";
        return 0;
    } catch (const Error& e) {
        return report_error(e);
    }
}

int cmd_ks_demo(const SourceModel& src, bool ideal, const std::string& out_dir) {
    try {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw IoError("cannot create output directory '" + out_dir + "'");
        const std::array<Povm, 3> povms = hexagon_povms();
        const std::array<std::string, 3> labels = hexagon_povm_labels();
        const SourceModel base = apply_ideal(src, ideal);
        std::array<CountTable, 3> tables;
        const std::filesystem::path dir(out_dir);

        for (std::size_t i = 0; i < 3; ++i) {
            const CompileResult r = compile_povm(povms[i]);
            save_circuit(r.circuit, (dir / ("circuit_" + labels[i] + ".json")).string());
            SourceModel model = base;
            model.seed = splitmix64(base.seed ^ splitmix64(static_cast<std::uint64_t>(i)));
            CountTable raw = simulate_counts(r.circuit, model);
            raw.povm_label = labels[i];
            tables[i] = scale_two_fold(raw, model.detector_efficiency);
            save_counts(tables[i], (dir / ("counts_" + labels[i] + ".csv")).string());
            const AnalysisReport rep = analyze(tables[i], povms[i], traced_state());
            write_text_file((dir / ("analysis_" + labels[i] + ".json")).string(),
                            analysis_to_json(rep));
        }

        const ContradictionCertificate cert = enumerate_contradiction();
        write_text_file((dir / "certificate.json").string(), certificate_to_json(cert));
        const ViolationReport v = score_counts(tables);
        write_text_file((dir / "violation.json").string(), violation_to_json(v));

        std::cout << "value assignments: " << cert.valid_assignments << " of "
                  << cert.total_assignments
                  << " answer yes exactly once per measurement; every achievable yes-sum is even"
                  << " but one-per-measurement needs " << cert.required_yes_sum << "\n";
        std::cout << "observed exactly-one fraction: " << v.overall_exactly_one_fraction << " ("
                  << v.total_one_fold << " one-fold, " << v.total_two_fold
                  << " scaled two-fold events)\n";
        std::cout << "wrote circuits, counts, analyses, certificate.json, violation.json to "
                  << out_dir << "\n";
        return 0;
    } catch (const Error& e) {
        return report_error(e);
    }
}

int cmd_verify(const std::string& circuit_path, const std::string& povm_path, std::uint64_t seed) {
    try {
        const OpticalCircuit circuit = load_circuit(circuit_path);
        const Povm p = load_povm(povm_path);
        std::vector<std::size_t> det_of;
        for (const PovmElement& e : p.elements) {
            std::size_t found = circuit.detectors.size();
            for (std::size_t k = 0; k < circuit.detectors.size(); ++k) {
                if (circuit.detectors[k].label != e.label) continue;
                if (found != circuit.detectors.size())
                    throw DomainError("verify: detector label '" + e.label + "' is ambiguous");
                found = k;
            }
            if (found == circuit.detectors.size())
                throw DomainError("verify: no detector labeled '" + e.label + "'");
            det_of.push_back(found);
        }

        std::mt19937_64 rng = make_rng(seed);
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            const ComplexVector psi = random_unit_vector(2, rng);
            const std::vector<double> probs = detector_probabilities(circuit, psi);
            for (std::size_t d = 0; d < p.elements.size(); ++d) {
                const double born = std::norm(p.elements[d].weight.dot(psi));
                worst = std::max(worst, std::abs(probs[det_of[d]] - born));
            }
        }
        std::cout << "max Born-rule deviation over 1000 states: " << worst << "\n";
        if (worst > 1e-8) {
            std::cerr << "error: circuit does not implement the POVM within 1e-8\n";
            return 1;
        }
        return 0;
    } catch (const Error& e) {
        return report_error(e);
    }
}

} // namespace povmc

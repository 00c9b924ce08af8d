#pragma once

#include <cstdint>
#include <string>

#include "povmc/neumark.hpp"
#include "povmc/optics.hpp"
#include "povmc/povm.hpp"
#include "povmc/simulator.hpp"
#include "povmc/synthesis.hpp"

namespace povmc {

struct CompileResult {
    DilationResult dilation;
    MzFactorization factorization; // after pruning
    int factor_count = 0;          // before pruning
    int pruned_count = 0;          // factors removed
    OpticalCircuit circuit;
    double completeness_residual = 0.0;
    double reconstruction_residual = 0.0; // factorization vs basis mapping
    double induced_residual = 0.0;        // circuit POVM vs input, per operator
};

/// Full chain: validate, dilate, factor into two-path rotations, prune, lower
/// to an optical circuit, and cross-check the induced POVM.
CompileResult compile_povm(const Povm& p);

// Command entry points shared by the CLI. Each returns a process exit code:
// 0 success, 1 validation failure, 2 parse or file-system failure.

int cmd_compile(const std::string& povm_path, const std::string& out_circuit_path);
int cmd_simulate(const std::string& circuit_path, const SourceModel& src, bool ideal,
                 const std::string& out_csv_path);
int cmd_ks_demo(const SourceModel& src, bool ideal, const std::string& out_dir);
int cmd_verify(const std::string& circuit_path, const std::string& povm_path, std::uint64_t seed);

} // namespace povmc

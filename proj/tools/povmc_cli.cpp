#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "povmc/pipeline.hpp"
#include "povmc/simulator.hpp"

namespace {

void add_source_flags(CLI::App* cmd, povmc::SourceModel* src, bool* ideal) {
    cmd->add_option("--seed", src->seed, "RNG seed")->envname("POVMC_SEED");
    cmd->add_option("--duration-s", src->duration_s, "acquisition time in seconds")
        ->envname("POVMC_DURATION_S");
    cmd->add_option("--pair-rate", src->pair_rate, "pair windows per second")
        ->envname("POVMC_PAIR_RATE");
    cmd->add_option("--efficiency", src->detector_efficiency, "shared detection probability")
        ->envname("POVMC_EFFICIENCY");
    cmd->add_option("--double-pair-fraction", src->double_pair_fraction,
                    "fraction of windows carrying a second pair")
        ->envname("POVMC_DOUBLE_PAIR_FRACTION");
    cmd->add_flag("--ideal", *ideal, "unit efficiency, no double pairs")->envname("POVMC_IDEAL");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"povmc: compiles rank-1 qubit POVMs to linear-optical circuits and simulates "
                 "photon counting"};
    app.require_subcommand(1);

    std::string povm_path;
    std::string circuit_path;
    std::string compile_out;
    std::string simulate_out;
    std::string demo_out = "ks_demo_out";
    povmc::SourceModel src;
    bool ideal = false;
    std::uint64_t verify_seed = 20240811;

    CLI::App* compile = app.add_subcommand("compile", "lower a POVM to an optical circuit");
    compile->add_option("povm", povm_path, "POVM JSON file")->required();
    compile->add_option("--out", compile_out, "output circuit JSON (default: <povm>.circuit.json)");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo photon counting on a circuit");
    simulate->add_option("circuit", circuit_path, "circuit JSON file")->required();
    simulate->add_option("--out", simulate_out, "output counts CSV (default: <circuit>.counts.csv)");
    add_source_flags(simulate, &src, &ideal);

    CLI::App* demo = app.add_subcommand(
        "ks-demo", "compile, simulate, and certify the hexagon measurement triple");
    demo->add_option("--out", demo_out, "output directory")->capture_default_str();
    add_source_flags(demo, &src, &ideal);

    CLI::App* verify = app.add_subcommand("verify", "check a circuit against a POVM on random states");
    verify->add_option("circuit", circuit_path, "circuit JSON file")->required();
    verify->add_option("povm", povm_path, "POVM JSON file")->required();
    verify->add_option("--seed", verify_seed, "RNG seed for the probe states")
        ->envname("POVMC_SEED");

    CLI11_PARSE(app, argc, argv);

    if (compile->parsed()) return povmc::cmd_compile(povm_path, compile_out);
    if (simulate->parsed()) return povmc::cmd_simulate(circuit_path, src, ideal, simulate_out);
    if (demo->parsed()) return povmc::cmd_ks_demo(src, ideal, demo_out);
    return povmc::cmd_verify(circuit_path, povm_path, verify_seed);
}

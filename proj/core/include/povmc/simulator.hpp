#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "povmc/optics.hpp"
#include "povmc/povm.hpp"

namespace povmc {

/// Heralded-pair source feeding one photon of each pair into the circuit.
/// The heralded arm is traced out, so the marginal entering the circuit is
/// maximally mixed for any visibility.
struct SourceModel {
    double visibility = 0.82;
    double pair_rate = 1.0e5;             // expected pair windows per second
    double double_pair_fraction = 0.005;  // windows carrying a second pair
    double detector_efficiency = 0.05;    // shared detection probability
    double duration_s = 10.0;
    std::uint64_t seed = 0;
    std::map<std::string, double> per_detector_efficiency; // label -> extra multiplier
};

struct CountTable {
    std::string povm_label;
    std::vector<std::string> outcome_order; // detector labels, circuit order
    std::map<std::string, std::int64_t> one_fold;
    std::map<std::string, std::int64_t> two_fold; // "L1/L2", L1 before L2 in outcome order
    std::int64_t higher_fold = 0;
    std::uint64_t seed = 0;
    double two_fold_scale = 1.0; // multiplier already applied to two_fold
};

/// Canonical key for a coincidence between two distinct detectors.
std::string two_fold_key(const std::vector<std::string>& outcome_order,
                         const std::string& a, const std::string& b);

/// Marginal state of the circuit photon: the maximally mixed qubit.
DensityMatrix traced_state();

/// Runs the window-by-window Monte Carlo. Deterministic in src.seed.
CountTable simulate_counts(const OpticalCircuit& circuit, const SourceModel& src);

/// Corrects raw coincidences for the detection probability of the second
/// photon. efficiency must lie in (0, 1].
CountTable scale_two_fold(const CountTable& raw, double efficiency);

struct OutcomeStat {
    std::string label;
    std::int64_t observed = 0;
    double frequency = 0.0;            // among one-fold events
    double expected_probability = 0.0; // Born rule
    double expected_count = 0.0;
};

struct AnalysisReport {
    std::string povm_label;
    std::int64_t total_one_fold = 0;
    std::int64_t total_two_fold = 0;
    std::int64_t higher_fold = 0;
    double exactly_one_fraction = 0.0;
    std::vector<OutcomeStat> per_outcome;
    double chi_square = 0.0;
    int degrees_of_freedom = 0;
    double chi_square_threshold = 0.0; // 99.9% quantile
    bool consistent_with_model = false;
    double two_fold_scale = 1.0;
};

/// Compares one-fold statistics against the Born-rule distribution of p on
/// rho. Every element label of p must appear in the table; extra table labels
/// count as zero-probability outcomes.
AnalysisReport analyze(const CountTable& t, const Povm& p, const DensityMatrix& rho);

} // namespace povmc

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "povmc/simulator.hpp"

namespace povmc {

/// Deterministic yes/no answer for each of the six hexagon effects.
struct ValueAssignment {
    std::map<std::string, bool> values; // keys: exactly the six hexagon labels
};

/// Yes-counts inside each of the three hexagon measurements. Throws
/// DomainError unless exactly the six hexagon labels are present.
std::array<int, 3> check_assignment(const ValueAssignment& a);

struct AssignmentRow {
    std::array<int, 6> values{};     // hexagon label order
    std::array<int, 3> yes_counts{}; // per measurement
    int first_failure = -1;          // first measurement whose count is not 1
    bool valid = false;
};

struct ContradictionCertificate {
    int total_assignments = 0;
    int valid_assignments = 0;
    int required_yes_sum = 3;          // one yes per measurement
    int element_multiplicity = 2;      // every effect sits in two measurements
    bool parity_contradiction = false; // every achievable sum is even
    std::vector<AssignmentRow> rows;
};

/// Checks all 64 assignments by brute force. No assignment answers yes
/// exactly once per measurement: each effect is shared by two measurements,
/// so the three yes-counts always sum to an even number, never to 3.
ContradictionCertificate enumerate_contradiction();

struct PovmScore {
    std::string label;
    std::int64_t one_fold = 0;
    std::int64_t two_fold = 0;
    std::int64_t higher_fold = 0;
    double exactly_one_fraction = 0.0;
    double chi_square = 0.0;
    bool consistent_with_quantum = false;
};

struct ViolationReport {
    std::array<PovmScore, 3> per_povm;
    std::int64_t total_one_fold = 0;
    std::int64_t total_two_fold = 0;
    std::int64_t total_higher_fold = 0;
    double overall_exactly_one_fraction = 0.0;
};

/// Scores simulated hexagon tables (two-fold counts already scaled), given in
/// hexagon_povm_labels() order. The exactly-one fraction is the operational
/// quantity the value assignments above cannot reach.
ViolationReport score_counts(const std::array<CountTable, 3>& tables);

} // namespace povmc

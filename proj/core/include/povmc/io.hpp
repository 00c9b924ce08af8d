#pragma once

#include <string>

#include "povmc/kstest.hpp"
#include "povmc/optics.hpp"
#include "povmc/povm.hpp"
#include "povmc/simulator.hpp"

namespace povmc {

// All serializers produce deterministic text: fixed key order, 2-space
// indent, trailing newline. Malformed input raises ParseError, file-system
// failures raise IoError.

std::string povm_to_json(const Povm& p);
Povm povm_from_json(const std::string& text);

std::string circuit_to_json(const OpticalCircuit& c);
OpticalCircuit circuit_from_json(const std::string& text);

/// CSV with header povm,outcome,fold,count. One-fold rows follow the outcome
/// order, two-fold rows cover every pair, the final row is the higher-fold
/// bucket. Labels must not contain commas.
std::string counts_to_csv(const CountTable& t);
CountTable counts_from_csv(const std::string& text);

std::string analysis_to_json(const AnalysisReport& r);
std::string certificate_to_json(const ContradictionCertificate& c);
std::string violation_to_json(const ViolationReport& v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

void save_povm(const Povm& p, const std::string& path);
Povm load_povm(const std::string& path);
void save_circuit(const OpticalCircuit& c, const std::string& path);
OpticalCircuit load_circuit(const std::string& path);
void save_counts(const CountTable& t, const std::string& path);
CountTable load_counts(const std::string& path);

} // namespace povmc

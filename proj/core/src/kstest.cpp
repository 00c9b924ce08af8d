#include "povmc/kstest.hpp"

#include "povmc/errors.hpp"
#include "povmc/povm.hpp"

namespace povmc {

std::array<int, 3> check_assignment(const ValueAssignment& a) {
    const std::array<Povm, 3> povms = hexagon_povms();
    std::size_t expected = 0;
    std::array<int, 3> counts{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (const PovmElement& e : povms[i].elements) {
            auto it = a.values.find(e.label);
            if (it == a.values.end())
                throw DomainError("check_assignment: missing value for '" + e.label + "'");
            if (it->second) counts[i] += 1;
        }
        expected += povms[i].elements.size();
    }
    if (a.values.size() != expected / 2)
        throw DomainError("check_assignment: assignment must cover exactly the six hexagon effects");
    return counts;
}

ContradictionCertificate enumerate_contradiction() {
    const std::array<std::pair<std::string, ComplexVector>, 6> vecs = hexagon_vectors();
    ContradictionCertificate cert;
    cert.total_assignments = 1 << vecs.size();
    bool all_even = true;
    for (int mask = 0; mask < cert.total_assignments; ++mask) {
        ValueAssignment a;
        AssignmentRow row;
        for (std::size_t b = 0; b < vecs.size(); ++b) {
            const bool yes = (mask >> b) & 1;
            a.values[vecs[b].first] = yes;
            row.values[b] = yes ? 1 : 0;
        }
        row.yes_counts = check_assignment(a);
        int sum = 0;
        row.valid = true;
        for (std::size_t i = 0; i < 3; ++i) {
            sum += row.yes_counts[i];
            if (row.yes_counts[i] != 1 && row.first_failure < 0)
                row.first_failure = static_cast<int>(i);
        }
        if (row.first_failure >= 0) row.valid = false;
        if (sum % 2 != 0) all_even = false;
        if (row.valid) cert.valid_assignments += 1;
        cert.rows.push_back(std::move(row));
    }
    // Each yes is counted once per measurement containing the effect, so the
    // sum is multiplicity times the number of yes answers: always even, while
    // one-yes-per-measurement would need it to be 3.
    cert.parity_contradiction = all_even && cert.required_yes_sum % 2 == 1;
    return cert;
}

ViolationReport score_counts(const std::array<CountTable, 3>& tables) {
    const std::array<Povm, 3> povms = hexagon_povms();
    const std::array<std::string, 3> labels = hexagon_povm_labels();
    ViolationReport v;
    for (std::size_t i = 0; i < 3; ++i) {
        for (const PovmElement& e : povms[i].elements) {
            if (tables[i].one_fold.find(e.label) == tables[i].one_fold.end())
                throw DomainError("score_counts: table " + labels[i] + " is missing outcome '" +
                                  e.label + "'");
        }
        const AnalysisReport rep = analyze(tables[i], povms[i], traced_state());
        PovmScore& s = v.per_povm[i];
        s.label = labels[i];
        s.one_fold = rep.total_one_fold;
        s.two_fold = rep.total_two_fold;
        s.higher_fold = rep.higher_fold;
        s.exactly_one_fraction = rep.exactly_one_fraction;
        s.chi_square = rep.chi_square;
        s.consistent_with_quantum = rep.consistent_with_model;
        v.total_one_fold += s.one_fold;
        v.total_two_fold += s.two_fold;
        v.total_higher_fold += s.higher_fold;
    }
    const std::int64_t total = v.total_one_fold + v.total_two_fold + v.total_higher_fold;
    if (total <= 0) throw DomainError("score_counts: tables hold no events");
    v.overall_exactly_one_fraction =
        static_cast<double>(v.total_one_fold) / static_cast<double>(total);
    return v;
}

} // namespace povmc

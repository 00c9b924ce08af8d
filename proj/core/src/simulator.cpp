#include "povmc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "povmc/errors.hpp"
#include "povmc/rng.hpp"

namespace povmc {

namespace {

void check_model(const SourceModel& src) {
    auto in01 = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in01(src.visibility)) throw DomainError("source model: visibility must be in [0, 1]");
    if (!in01(src.double_pair_fraction)) throw DomainError("source model: double_pair_fraction must be in [0, 1]");
    if (!in01(src.detector_efficiency)) throw DomainError("source model: detector_efficiency must be in [0, 1]");
    if (!(src.pair_rate > 0.0)) throw DomainError("source model: pair_rate must be positive");
    if (!(src.duration_s >= 0.0)) throw DomainError("source model: duration must be nonnegative");
    for (const auto& [label, mult] : src.per_detector_efficiency) {
        if (!(mult >= 0.0)) throw DomainError("source model: per-detector multiplier must be nonnegative");
        if (src.detector_efficiency * mult > 1.0 + 1e-12)
            throw DomainError("source model: detection probability for '" + label + "' exceeds 1");
    }
}

std::int64_t poisson_draw(std::mt19937_64& rng, double mean) {
    if (!(mean > 0.0)) return 0;
    std::poisson_distribution<std::int64_t> dist(mean);
    return dist(rng);
}

} // namespace

std::string two_fold_key(const std::vector<std::string>& outcome_order,
                         const std::string& a, const std::string& b) {
    auto ia = std::find(outcome_order.begin(), outcome_order.end(), a);
    auto ib = std::find(outcome_order.begin(), outcome_order.end(), b);
    if (ia == outcome_order.end() || ib == outcome_order.end() || a == b)
        throw DomainError("two_fold_key: need two distinct known outcome labels");
    if (ia > ib) return b + "/" + a;
    return a + "/" + b;
}

DensityMatrix traced_state() {
    DensityMatrix rho;
    rho.matrix = 0.5 * ComplexMatrix::Identity(2, 2);
    return rho;
}

CountTable simulate_counts(const OpticalCircuit& circuit, const SourceModel& src) {
    check_model(src);
    const ComplexMatrix u = circuit_unitary(circuit);
    const int ndet = static_cast<int>(circuit.detectors.size());

    CountTable t;
    t.seed = src.seed;
    for (const DetectorSpec& d : circuit.detectors) {
        t.outcome_order.push_back(d.label);
        t.one_fold[d.label] = 0;
    }
    for (int i = 0; i < ndet; ++i)
        for (int j = i + 1; j < ndet; ++j)
            t.two_fold[t.outcome_order[static_cast<std::size_t>(i)] + "/" +
                       t.outcome_order[static_cast<std::size_t>(j)]] = 0;

    // Cumulative detection distribution for one photon of a pair; the
    // remainder of the unit interval is loss.
    std::vector<double> cdf(static_cast<std::size_t>(ndet), 0.0);
    double acc = 0.0;
    for (int k = 0; k < ndet; ++k) {
        const int coord = detector_coordinate(circuit.detectors[static_cast<std::size_t>(k)]);
        const double born = 0.5 * (std::norm(u(coord, 0)) + std::norm(u(coord, 1)));
        double eff = src.detector_efficiency;
        auto it = src.per_detector_efficiency.find(circuit.detectors[static_cast<std::size_t>(k)].label);
        if (it != src.per_detector_efficiency.end()) eff *= it->second;
        acc += born * std::min(1.0, eff);
        cdf[static_cast<std::size_t>(k)] = acc;
    }

    std::mt19937_64 rng = make_rng(src.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto draw = [&]() -> int {
        const double x = u01(rng);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
        if (it == cdf.end()) return -1; // photon lost
        return static_cast<int>(it - cdf.begin());
    };

    const std::int64_t singles = poisson_draw(rng, src.pair_rate * src.duration_s);
    for (std::int64_t i = 0; i < singles; ++i) {
        const int k = draw();
        if (k >= 0) t.one_fold[t.outcome_order[static_cast<std::size_t>(k)]] += 1;
    }

    const std::int64_t doubles =
        poisson_draw(rng, src.double_pair_fraction * src.pair_rate * src.duration_s);
    for (std::int64_t i = 0; i < doubles; ++i) {
        const int k1 = draw();
        const int k2 = draw();
        if (k1 < 0 && k2 < 0) continue;
        if (k1 >= 0 && k2 >= 0 && k1 != k2) {
            const int lo = std::min(k1, k2);
            const int hi = std::max(k1, k2);
            t.two_fold[t.outcome_order[static_cast<std::size_t>(lo)] + "/" +
                       t.outcome_order[static_cast<std::size_t>(hi)]] += 1;
        } else {
            // Same detector saturates, or only one photon was seen.
            const int k = k1 >= 0 ? k1 : k2;
            t.one_fold[t.outcome_order[static_cast<std::size_t>(k)]] += 1;
        }
    }
    return t;
}

CountTable scale_two_fold(const CountTable& raw, double efficiency) {
    if (!(efficiency > 0.0) || efficiency > 1.0)
        throw DomainError("scale_two_fold: efficiency must be in (0, 1]");
    CountTable t = raw;
    for (auto& [key, count] : t.two_fold)
        count = static_cast<std::int64_t>(std::llround(static_cast<double>(count) / efficiency));
    t.two_fold_scale = raw.two_fold_scale / efficiency;
    return t;
}

AnalysisReport analyze(const CountTable& t, const Povm& p, const DensityMatrix& rho) {
    AnalysisReport rep;
    rep.povm_label = t.povm_label;
    rep.two_fold_scale = t.two_fold_scale;
    for (const auto& [label, count] : t.one_fold) {
        (void)label;
        rep.total_one_fold += count;
    }
    for (const auto& [key, count] : t.two_fold) {
        (void)key;
        rep.total_two_fold += count;
    }
    rep.higher_fold = t.higher_fold;
    const std::int64_t total = rep.total_one_fold + rep.total_two_fold + rep.higher_fold;
    if (total <= 0) throw DomainError("analyze: count table holds no events");
    rep.exactly_one_fraction =
        static_cast<double>(rep.total_one_fold) / static_cast<double>(total);

    const std::vector<double> probs = outcome_probabilities(p, rho);
    std::map<std::string, double> prob_of;
    for (std::size_t d = 0; d < p.elements.size(); ++d) {
        if (std::find(t.outcome_order.begin(), t.outcome_order.end(), p.elements[d].label) ==
            t.outcome_order.end())
            throw DomainError("analyze: table is missing outcome '" + p.elements[d].label + "'");
        prob_of[p.elements[d].label] += probs[d];
    }

    int nonzero = 0;
    for (const std::string& label : t.outcome_order) {
        OutcomeStat st;
        st.label = label;
        st.observed = t.one_fold.at(label);
        st.frequency = rep.total_one_fold > 0
                           ? static_cast<double>(st.observed) / static_cast<double>(rep.total_one_fold)
                           : 0.0;
        auto it = prob_of.find(label);
        st.expected_probability = it == prob_of.end() ? 0.0 : it->second;
        st.expected_count = static_cast<double>(rep.total_one_fold) * st.expected_probability;
        if (st.expected_probability > 1e-12) {
            nonzero += 1;
            if (st.expected_count > 0.0) {
                const double diff = static_cast<double>(st.observed) - st.expected_count;
                rep.chi_square += diff * diff / st.expected_count;
            }
        }
        rep.per_outcome.push_back(std::move(st));
    }
    rep.degrees_of_freedom = std::max(0, nonzero - 1);
    if (rep.degrees_of_freedom > 0) {
        // Wilson-Hilferty approximation of the 99.9% chi-square quantile.
        const double z = 3.0902323061678132;
        const double k = static_cast<double>(rep.degrees_of_freedom);
        const double a = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
        rep.chi_square_threshold = k * a * a * a;
    }
    rep.consistent_with_model = rep.chi_square <= rep.chi_square_threshold;
    return rep;
}

} // namespace povmc

#include "doctest.h"

#include <cmath>
#include <numbers>

#include "povmc/errors.hpp"
#include "povmc/neumark.hpp"
#include "povmc/povm.hpp"
#include "povmc/rng.hpp"

using namespace povmc;

namespace {

Povm trine_povm() {
    Povm p;
    const double r = std::sqrt(2.0 / 3.0);
    for (int k = 0; k < 3; ++k) {
        const double t = 2.0 * std::numbers::pi * k / 3.0;
        ComplexVector w(2);
        w << r * std::cos(t), r * std::sin(t);
        p.elements.push_back(make_element(w, "T" + std::to_string(k)));
    }
    return p;
}

} // namespace

TEST_CASE("dilate lifts an even POVM with the weights on top") {
    const Povm bc = hexagon_povms()[1];
    const DilationResult d = dilate(bc);
    CHECK(d.n_paths == 2);
    REQUIRE(d.columns.rows() == 4);
    CHECK(is_unitary(d.columns, 1e-10));
    for (int c = 0; c < 4; ++c) {
        CHECK(d.outcome_map[static_cast<std::size_t>(c)] == c);
        CHECK(d.outcome_labels[static_cast<std::size_t>(c)] == bc.elements[static_cast<std::size_t>(c)].label);
        CHECK(max_norm(d.columns.col(c).head(2) - bc.elements[static_cast<std::size_t>(c)].weight) <= 1e-12);
    }
}

TEST_CASE("dilation agrees with the textbook beam-splitter lift up to an ancilla rotation") {
    // Reference dilation for the {B,C} hexagon POVM: measured states
    // (v_d/sqrt2, +i v_d/sqrt2) for the B pair and (v_d/sqrt2, -i v_d/sqrt2)
    // for the C pair. Any two dilations with equal top blocks differ by a
    // unitary on the ancilla rows.
    const Povm bc = hexagon_povms()[1];
    const DilationResult d = dilate(bc);

    ComplexMatrix ref(4, 4);
    for (int c = 0; c < 4; ++c) {
        const ComplexVector& w = bc.elements[static_cast<std::size_t>(c)].weight;
        const Complex phase = c < 2 ? Complex(0, 1) : Complex(0, -1);
        ref.col(c).head(2) = w;
        ref.col(c).tail(2) = phase * w;
    }
    REQUIRE(is_unitary(ref, 1e-12));
    CHECK(max_norm(ref.topRows(2) - d.columns.topRows(2)) <= 1e-12);

    const ComplexMatrix y_ours = d.columns.bottomRows(2);
    const ComplexMatrix y_ref = ref.bottomRows(2);
    const ComplexMatrix w = y_ours * y_ref.adjoint();
    CHECK(is_unitary(w, 1e-10));
    CHECK(max_norm(y_ours - w * y_ref) <= 1e-10);
}

TEST_CASE("odd element counts get an exact vacuum sentinel column") {
    const Povm trine = trine_povm();
    REQUIRE(validate(trine).valid);
    const DilationResult d = dilate(trine);
    CHECK(d.n_paths == 2);
    CHECK(is_unitary(d.columns, 1e-10));
    CHECK(d.outcome_map == std::vector<int>{0, 1, 2, kVacuumSentinel});
    CHECK(d.outcome_labels[3] == vacuum_sentinel_label());
    // The sentinel column is pinned to the last canonical basis vector.
    ComplexVector last = ComplexVector::Zero(4);
    last(3) = 1.0;
    CHECK(max_norm(d.columns.col(3) - last) == 0.0);
    for (int c = 0; c < 3; ++c)
        CHECK(max_norm(d.columns.col(c).head(2) - trine.elements[static_cast<std::size_t>(c)].weight) <= 1e-12);
}

TEST_CASE("dilate rejects invalid POVMs") {
    Povm broken = hexagon_povms()[0];
    broken.elements.pop_back();
    CHECK_THROWS_AS(dilate(broken), DomainError);

    Povm single;
    ComplexVector w(2);
    w << 1, 0;
    single.elements.push_back(make_element(w, "only"));
    CHECK_THROWS_AS(dilate(single), DomainError);
}

TEST_CASE("embed_state places the qubit on path 1") {
    ComplexVector psi(2);
    psi << Complex(0.6, 0), Complex(0, 0.8);
    const EmbeddedState big = embed_state(psi, 3);
    REQUIRE(big.vector.size() == 6);
    CHECK(big.vector(0) == psi(0));
    CHECK(big.vector(1) == psi(1));
    CHECK(big.vector.tail(4).norm() == 0.0);

    ComplexVector small(1);
    small << 1;
    CHECK_THROWS_AS(embed_state(small, 2), DimensionError);
    ComplexVector unnorm(2);
    unnorm << 1, 1;
    CHECK_THROWS_AS(embed_state(unnorm, 2), DomainError);
}

TEST_CASE("restriction property holds for random POVMs") {
    std::mt19937_64 rng = make_rng(2024);
    for (int m : {2, 3, 5, 7, 8}) {
        const Povm p = random_rank_one_povm(m, rng);
        const DilationResult d = dilate(p);
        CHECK(restriction_check(d, p, 200, 4711) <= 1e-10);
    }
    for (const Povm& p : hexagon_povms()) CHECK(restriction_check(dilate(p), p, 200, 4711) <= 1e-12);
}

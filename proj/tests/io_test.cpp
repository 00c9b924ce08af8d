#include "doctest.h"

#include <filesystem>

#include "json.hpp"

#include "povmc/errors.hpp"
#include "povmc/io.hpp"
#include "povmc/kstest.hpp"
#include "povmc/povm.hpp"
#include "povmc/simulator.hpp"

using namespace povmc;

TEST_CASE("povm json round-trip preserves weights and labels") {
    const Povm bc = hexagon_povms()[1];
    const std::string text = povm_to_json(bc);
    CHECK(text.back() == '\n');
    const Povm back = povm_from_json(text);
    REQUIRE(back.elements.size() == bc.elements.size());
    for (std::size_t d = 0; d < bc.elements.size(); ++d) {
        CHECK(back.elements[d].label == bc.elements[d].label);
        CHECK(max_norm(back.elements[d].weight - bc.elements[d].weight) <= 1e-15);
    }
    // Serialization is deterministic.
    CHECK(povm_to_json(back) == text);
}

TEST_CASE("povm json parsing errors") {
    CHECK_THROWS_AS(povm_from_json("not json"), ParseError);
    CHECK_THROWS_AS(povm_from_json("{\"format_version\": 2, \"elements\": []}"), ParseError);
    CHECK_THROWS_AS(povm_from_json("{\"format_version\": 1}"), ParseError);
    CHECK_THROWS_AS(povm_from_json("{\"format_version\": 1, \"elements\": []}"), ParseError);
    CHECK_THROWS_AS(
        povm_from_json(
            "{\"format_version\": 1, \"elements\": [{\"label\": \"x\", \"vector\": [[1, 0]]}]}"),
        ParseError);
    // Structurally fine but physically impossible: weight norm above 1.
    CHECK_THROWS_AS(
        povm_from_json("{\"format_version\": 1, \"elements\": [{\"label\": \"x\", \"vector\": "
                       "[[1.5, 0], [0, 0]]}]}"),
        DomainError);
}

TEST_CASE("circuit json round-trip preserves every stage kind") {
    OpticalCircuit c;
    c.n_paths = 2;
    c.stages.push_back(make_qwp(1, 12.5));
    c.stages.push_back(make_phase_shifter(2, 1.25));
    c.stages.push_back(make_beam_splitter(1, 2));
    c.stages.push_back(make_hwp(2, 105.0));
    c.detectors = {DetectorSpec{1, 'H', "a"}, DetectorSpec{1, 'V', "b"},
                   DetectorSpec{2, 'H', "c"}, DetectorSpec{2, 'V', "d"}};
    const std::string text = circuit_to_json(c);
    const OpticalCircuit back = circuit_from_json(text);
    CHECK(back.n_paths == 2);
    REQUIRE(back.stages.size() == 4);
    CHECK(back.stages[0].kind == ComponentKind::Qwp);
    CHECK(back.stages[0].theta_deg == doctest::Approx(12.5));
    CHECK(back.stages[1].kind == ComponentKind::PhaseShifter);
    CHECK(back.stages[1].phi_rad == doctest::Approx(1.25));
    CHECK(back.stages[2].paths == std::array<int, 2>{1, 2});
    CHECK(back.stages[3].theta_deg == doctest::Approx(105.0));
    REQUIRE(back.detectors.size() == 4);
    CHECK(back.detectors[3].port == 'V');
    CHECK(back.detectors[3].label == "d");
    CHECK(circuit_to_json(back) == text);
}

TEST_CASE("circuit json parsing errors") {
    CHECK_THROWS_AS(circuit_from_json("{\"format_version\": 1}"), ParseError);
    const std::string skeleton =
        "{\"format_version\": 1, \"n_paths\": 1, \"stages\": [%], \"detectors\": ["
        "{\"path\": 1, \"port\": \"H\", \"label\": \"a\"},"
        "{\"path\": 1, \"port\": \"V\", \"label\": \"b\"}]}";
    auto with_stage = [&](const std::string& stage) {
        std::string text = skeleton;
        return text.replace(text.find('%'), 1, stage);
    };
    CHECK_NOTHROW(circuit_from_json(with_stage("{\"kind\": \"HWP\", \"path\": 1, \"theta_deg\": 5}")));
    CHECK_THROWS_AS(circuit_from_json(with_stage("{\"kind\": \"PBS\", \"path\": 1}")), ParseError);
    CHECK_THROWS_AS(circuit_from_json(with_stage("{\"kind\": \"HWP\", \"path\": 1}")), ParseError);
    // Valid JSON, invalid layout: stage touches a missing path.
    CHECK_THROWS_AS(circuit_from_json(with_stage("{\"kind\": \"HWP\", \"path\": 2, \"theta_deg\": 5}")),
                    StructureError);
}

TEST_CASE("counts csv round-trip") {
    const OpticalCircuit c = hexagon_circuit(HexagonPair::BC);
    SourceModel src;
    src.seed = 12;
    src.duration_s = 0.3;
    CountTable t = simulate_counts(c, src);
    t.povm_label = "BC";
    const std::string text = counts_to_csv(t);
    const CountTable back = counts_from_csv(text);
    CHECK(back.povm_label == "BC");
    CHECK(back.outcome_order == t.outcome_order);
    CHECK(back.one_fold == t.one_fold);
    CHECK(back.two_fold == t.two_fold);
    CHECK(back.higher_fold == t.higher_fold);
    CHECK(counts_to_csv(back) == text);
}

TEST_CASE("counts csv golden format") {
    CountTable t;
    t.povm_label = "BC";
    t.outcome_order = {"B+", "B-"};
    t.one_fold = {{"B+", 3}, {"B-", 4}};
    t.two_fold = {{"B+/B-", 2}};
    t.higher_fold = 1;
    CHECK(counts_to_csv(t) ==
          "povm,outcome,fold,count\n"
          "BC,B+,1,3\n"
          "BC,B-,1,4\n"
          "BC,B+/B-,2,2\n"
          "BC,any,3+,1\n");
}

TEST_CASE("counts csv parsing errors") {
    CHECK_THROWS_AS(counts_from_csv(""), ParseError);
    CHECK_THROWS_AS(counts_from_csv("outcome,fold,count\n"), ParseError);
    CHECK_THROWS_AS(counts_from_csv("povm,outcome,fold,count\n"), ParseError);
    CHECK_THROWS_AS(counts_from_csv("povm,outcome,fold,count\nBC,B+,1,-3\n"), ParseError);
    CHECK_THROWS_AS(counts_from_csv("povm,outcome,fold,count\nBC,B+,9,3\n"), ParseError);
    CHECK_THROWS_AS(counts_from_csv("povm,outcome,fold,count\nBC,B+,1,3\nXY,B-,1,3\n"), ParseError);
    CHECK_THROWS_AS(counts_from_csv("povm,outcome,fold,count\nBC,B+,1,3\nBC,B+,1,3\n"), ParseError);
    CHECK_THROWS_AS(counts_from_csv("povm,outcome,fold,count\nBC,B+,1,x\n"), ParseError);
}

TEST_CASE("report serializers emit valid json") {
    const Povm ab = hexagon_povms()[0];
    CountTable t;
    t.povm_label = "AB";
    t.outcome_order = {"A+", "A-", "B+", "B-"};
    for (const std::string& l : t.outcome_order) t.one_fold[l] = 250;
    t.two_fold["A+/A-"] = 4;
    const AnalysisReport rep = analyze(t, ab, traced_state());
    const nlohmann::json a = nlohmann::json::parse(analysis_to_json(rep));
    CHECK(a.at("format_version") == 1);
    CHECK(a.at("povm_label") == "AB");
    CHECK(a.at("total_one_fold") == 1000);
    CHECK(a.at("per_outcome").size() == 4);
    CHECK(a.at("consistent_with_model") == true);

    const nlohmann::json cert =
        nlohmann::json::parse(certificate_to_json(enumerate_contradiction()));
    CHECK(cert.at("valid_assignments") == 0);
    CHECK(cert.at("rows").size() == 64);
    CHECK(cert.at("rows").at(1).at("yes_counts") == nlohmann::json::array({1, 0, 1}));

    std::array<CountTable, 3> tables;
    const std::array<std::string, 3> labels = hexagon_povm_labels();
    const std::array<Povm, 3> povms = hexagon_povms();
    for (std::size_t i = 0; i < 3; ++i) {
        tables[i].povm_label = labels[i];
        for (const PovmElement& e : povms[i].elements) {
            tables[i].outcome_order.push_back(e.label);
            tables[i].one_fold[e.label] = 100;
        }
    }
    const nlohmann::json v = nlohmann::json::parse(violation_to_json(score_counts(tables)));
    CHECK(v.at("per_povm").size() == 3);
    CHECK(v.at("overall_exactly_one_fraction") == 1.0);
}

TEST_CASE("file helpers surface io failures") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "povmc_io_test";
    fs::create_directories(dir);
    const std::string path = (dir / "povm.json").string();
    save_povm(hexagon_povms()[2], path);
    const Povm back = load_povm(path);
    CHECK(back.elements[0].label == "C+");
    CHECK_THROWS_AS(load_povm((dir / "missing.json").string()), IoError);
    CHECK_THROWS_AS(write_text_file((dir / "no_dir" / "x.txt").string(), "x"), IoError);
    fs::remove_all(dir);
}

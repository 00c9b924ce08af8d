#include "povmc/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "povmc/errors.hpp"

namespace povmc {

namespace {

using Json = nlohmann::ordered_json;

const Json& require(const Json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

Json parse_document(const std::string& text) {
    try {
        Json j = Json::parse(text);
        if (require(j, "format_version").get<int>() != 1)
            throw ParseError("unsupported format_version");
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("complex entries must be [re, im] pairs");
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

std::int64_t parse_count(const std::string& s) {
    if (s.empty()) throw ParseError("empty count field");
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
        value = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw ParseError("bad count '" + s + "'");
    }
    if (used != s.size() || value < 0) throw ParseError("bad count '" + s + "'");
    return value;
}

} // namespace

std::string povm_to_json(const Povm& p) {
    Json j;
    j["format_version"] = 1;
    j["elements"] = Json::array();
    for (const PovmElement& e : p.elements) {
        Json el;
        el["label"] = e.label;
        el["vector"] = Json::array({complex_to_json(e.weight(0)), complex_to_json(e.weight(1))});
        j["elements"].push_back(std::move(el));
    }
    return dump(j);
}

Povm povm_from_json(const std::string& text) {
    const Json j = parse_document(text);
    Povm p;
    try {
        const Json& elements = require(j, "elements");
        if (!elements.is_array() || elements.empty())
            throw ParseError("'elements' must be a nonempty array");
        for (const Json& el : elements) {
            const std::string label = require(el, "label").get<std::string>();
            const Json& vec = require(el, "vector");
            if (!vec.is_array() || vec.size() != 2)
                throw ParseError("'vector' must hold two complex entries");
            ComplexVector w(2);
            w << complex_from_json(vec.at(0)), complex_from_json(vec.at(1));
            p.elements.push_back(make_element(std::move(w), label));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid POVM document: ") + e.what());
    }
    return p;
}

std::string circuit_to_json(const OpticalCircuit& c) {
    validate_circuit(c);
    Json j;
    j["format_version"] = 1;
    j["n_paths"] = c.n_paths;
    j["stages"] = Json::array();
    for (const Component& s : c.stages) {
        Json st;
        switch (s.kind) {
        case ComponentKind::Hwp:
            st["kind"] = "HWP";
            st["path"] = s.path;
            st["theta_deg"] = s.theta_deg;
            break;
        case ComponentKind::Qwp:
            st["kind"] = "QWP";
            st["path"] = s.path;
            st["theta_deg"] = s.theta_deg;
            break;
        case ComponentKind::PhaseShifter:
            st["kind"] = "PhaseShifter";
            st["path"] = s.path;
            st["phi_rad"] = s.phi_rad;
            break;
        default:
            st["kind"] = "BeamSplitter5050";
            st["paths"] = Json::array({s.paths[0], s.paths[1]});
            break;
        }
        j["stages"].push_back(std::move(st));
    }
    j["detectors"] = Json::array();
    for (const DetectorSpec& d : c.detectors) {
        Json det;
        det["path"] = d.path;
        det["port"] = std::string(1, d.port);
        det["label"] = d.label;
        j["detectors"].push_back(std::move(det));
    }
    return dump(j);
}

OpticalCircuit circuit_from_json(const std::string& text) {
    const Json j = parse_document(text);
    OpticalCircuit c;
    try {
        c.n_paths = require(j, "n_paths").get<int>();
        for (const Json& st : require(j, "stages")) {
            const std::string kind = require(st, "kind").get<std::string>();
            if (kind == "HWP") {
                c.stages.push_back(
                    make_hwp(require(st, "path").get<int>(), require(st, "theta_deg").get<double>()));
            } else if (kind == "QWP") {
                c.stages.push_back(
                    make_qwp(require(st, "path").get<int>(), require(st, "theta_deg").get<double>()));
            } else if (kind == "PhaseShifter") {
                c.stages.push_back(make_phase_shifter(require(st, "path").get<int>(),
                                                      require(st, "phi_rad").get<double>()));
            } else if (kind == "BeamSplitter5050") {
                const Json& paths = require(st, "paths");
                if (!paths.is_array() || paths.size() != 2)
                    throw ParseError("'paths' must hold two path indices");
                c.stages.push_back(
                    make_beam_splitter(paths.at(0).get<int>(), paths.at(1).get<int>()));
            } else {
                throw ParseError("unknown stage kind '" + kind + "'");
            }
        }
        for (const Json& det : require(j, "detectors")) {
            const std::string port = require(det, "port").get<std::string>();
            if (port.size() != 1) throw ParseError("detector port must be a single character");
            DetectorSpec d;
            d.path = require(det, "path").get<int>();
            d.port = port[0];
            d.label = require(det, "label").get<std::string>();
            c.detectors.push_back(std::move(d));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid circuit document: ") + e.what());
    }
    validate_circuit(c);
    return c;
}

std::string counts_to_csv(const CountTable& t) {
    std::ostringstream out;
    out << "povm,outcome,fold,count\n";
    for (const std::string& label : t.outcome_order)
        out << t.povm_label << "," << label << ",1," << t.one_fold.at(label) << "\n";
    for (std::size_t i = 0; i < t.outcome_order.size(); ++i) {
        for (std::size_t j = i + 1; j < t.outcome_order.size(); ++j) {
            const std::string key = t.outcome_order[i] + "/" + t.outcome_order[j];
            out << t.povm_label << "," << key << ",2," << t.two_fold.at(key) << "\n";
        }
    }
    out << t.povm_label << ",any,3+," << t.higher_fold << "\n";
    return out.str();
}

CountTable counts_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "povm,outcome,fold,count")
        throw ParseError("counts CSV: bad header");
    CountTable t;
    bool saw_higher = false;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != 4) throw ParseError("counts CSV: expected 4 fields, got row '" + line + "'");
        if (first) {
            t.povm_label = f[0];
            first = false;
        } else if (f[0] != t.povm_label) {
            throw ParseError("counts CSV: mixed povm labels");
        }
        const std::int64_t count = parse_count(f[3]);
        if (f[2] == "1") {
            if (t.one_fold.count(f[1])) throw ParseError("counts CSV: duplicate outcome '" + f[1] + "'");
            t.outcome_order.push_back(f[1]);
            t.one_fold[f[1]] = count;
        } else if (f[2] == "2") {
            if (f[1].find('/') == std::string::npos)
                throw ParseError("counts CSV: two-fold outcome must name a detector pair");
            t.two_fold[f[1]] = count;
        } else if (f[2] == "3+") {
            if (f[1] != "any") throw ParseError("counts CSV: higher-fold outcome must be 'any'");
            if (saw_higher) throw ParseError("counts CSV: duplicate higher-fold row");
            t.higher_fold = count;
            saw_higher = true;
        } else {
            throw ParseError("counts CSV: bad fold '" + f[2] + "'");
        }
    }
    if (t.outcome_order.empty()) throw ParseError("counts CSV: no one-fold rows");
    return t;
}

std::string analysis_to_json(const AnalysisReport& r) {
    Json j;
    j["format_version"] = 1;
    j["povm_label"] = r.povm_label;
    j["total_one_fold"] = r.total_one_fold;
    j["total_two_fold"] = r.total_two_fold;
    j["higher_fold"] = r.higher_fold;
    j["exactly_one_fraction"] = r.exactly_one_fraction;
    j["two_fold_scale"] = r.two_fold_scale;
    j["per_outcome"] = Json::array();
    for (const OutcomeStat& s : r.per_outcome) {
        Json o;
        o["label"] = s.label;
        o["observed"] = s.observed;
        o["frequency"] = s.frequency;
        o["expected_probability"] = s.expected_probability;
        o["expected_count"] = s.expected_count;
        j["per_outcome"].push_back(std::move(o));
    }
    j["chi_square"] = r.chi_square;
    j["degrees_of_freedom"] = r.degrees_of_freedom;
    j["chi_square_threshold"] = r.chi_square_threshold;
    j["consistent_with_model"] = r.consistent_with_model;
    return dump(j);
}

std::string certificate_to_json(const ContradictionCertificate& c) {
    Json j;
    j["format_version"] = 1;
    j["total_assignments"] = c.total_assignments;
    j["valid_assignments"] = c.valid_assignments;
    j["required_yes_sum"] = c.required_yes_sum;
    j["element_multiplicity"] = c.element_multiplicity;
    j["parity_contradiction"] = c.parity_contradiction;
    j["rows"] = Json::array();
    for (const AssignmentRow& row : c.rows) {
        Json r;
        r["values"] = row.values;
        r["yes_counts"] = row.yes_counts;
        r["first_failure"] = row.first_failure;
        r["valid"] = row.valid;
        j["rows"].push_back(std::move(r));
    }
    return dump(j);
}

std::string violation_to_json(const ViolationReport& v) {
    Json j;
    j["format_version"] = 1;
    j["per_povm"] = Json::array();
    for (const PovmScore& s : v.per_povm) {
        Json o;
        o["label"] = s.label;
        o["one_fold"] = s.one_fold;
        o["two_fold"] = s.two_fold;
        o["higher_fold"] = s.higher_fold;
        o["exactly_one_fraction"] = s.exactly_one_fraction;
        o["chi_square"] = s.chi_square;
        o["consistent_with_quantum"] = s.consistent_with_quantum;
        j["per_povm"].push_back(std::move(o));
    }
    j["total_one_fold"] = v.total_one_fold;
    j["total_two_fold"] = v.total_two_fold;
    j["total_higher_fold"] = v.total_higher_fold;
    j["overall_exactly_one_fraction"] = v.overall_exactly_one_fraction;
    return dump(j);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path + "'");
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out.good()) throw IoError("error while writing '" + path + "'");
}

void save_povm(const Povm& p, const std::string& path) { write_text_file(path, povm_to_json(p)); }

Povm load_povm(const std::string& path) { return povm_from_json(read_text_file(path)); }

void save_circuit(const OpticalCircuit& c, const std::string& path) {
    write_text_file(path, circuit_to_json(c));
}

OpticalCircuit load_circuit(const std::string& path) {
    return circuit_from_json(read_text_file(path));
}

void save_counts(const CountTable& t, const std::string& path) {
    write_text_file(path, counts_to_csv(t));
}

CountTable load_counts(const std::string& path) { return counts_from_csv(read_text_file(path)); }

} // namespace povmc

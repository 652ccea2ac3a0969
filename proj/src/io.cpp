#include "causal/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace causal {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
    return out;
}

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

std::vector<std::string> string_list(const Json& j, const std::string& what) {
    if (!j.is_array()) throw FormatError(what + " must be a list of strings");
    std::vector<std::string> out;
    for (const auto& v : j) {
        if (!v.is_string()) throw FormatError(what + " must be a list of strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> pair_list(const Json& j) {
    if (!j.is_array()) throw FormatError("\"order\" must be a list of [x, y] pairs");
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
            throw FormatError("\"order\" entries must be [x, y] pairs of event names");
        }
        out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
    return out;
}

// Digits of a joint label string over `events`, e.g. "0,1" -> {0, 1}.
Assignment parse_joint(const CausalScenario& s, EventSet events, const std::string& key, bool inputs) {
    const auto members = events.members();
    const auto parts = split(key, ',');
    if (parts.size() != members.size()) {
        throw FormatError("joint " + std::string(inputs ? "input" : "output") + " \"" + key + "\" has " +
                          std::to_string(parts.size()) + " labels, expected " + std::to_string(members.size()));
    }
    Assignment a(s.size(), -1);
    for (std::size_t k = 0; k < members.size(); ++k) {
        const EventIndex e = members[k];
        try {
            a[e] = static_cast<int>(inputs ? s.input_index(e, parts[k]) : s.output_index(e, parts[k]));
        } catch (const CausalError&) {
            throw FormatError("unknown " + std::string(inputs ? "input" : "output") + " label \"" + parts[k] +
                              "\" at event " + s.event_name(e));
        }
    }
    return a;
}

NonNegRational parse_weight(const Json& v) {
    if (v.is_string()) return NonNegRational::parse(v.get<std::string>());
    if (v.is_number_integer()) return NonNegRational(v.get<long>());
    throw FormatError("weights must be \"p/q\" strings or integers");
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw FormatError("matrices must be non-empty lists of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw FormatError("ragged matrix");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Json& z = row[static_cast<std::size_t>(c)];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                throw FormatError("matrix entries must be [re, im] pairs");
            }
            m(r, c) = {z[0].get<double>(), z[1].get<double>()};
        }
    }
    return m;
}

std::vector<std::size_t> index_list(const Json& j) {
    std::vector<std::size_t> out;
    if (!j.is_array()) throw FormatError("wire lists must be lists of indices");
    for (const auto& v : j) {
        if (!v.is_number_unsigned()) throw FormatError("wire indices must be non-negative integers");
        out.push_back(v.get<std::size_t>());
    }
    return out;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
        throw FormatError(path.string() + ": " + ex.what());
    }
}

CausalScenario scenario_from_json(const Json& j) {
    auto events = string_list(member(j, "events"), "\"events\"");
    std::sort(events.begin(), events.end());
    const Preorder po = closure(events, j.contains("order") ? pair_list(j.at("order")) : decltype(pair_list(j)){});
    const Json& ins = member(j, "inputs");
    const Json& outs = member(j, "outputs");
    std::vector<std::vector<std::string>> inputs, outputs;
    for (const auto& e : events) {
        if (!ins.contains(e) || !outs.contains(e)) throw FormatError("event " + e + " lacks inputs or outputs");
        inputs.push_back(string_list(ins.at(e), "inputs of " + e));
        outputs.push_back(string_list(outs.at(e), "outputs of " + e));
    }
    if (ins.size() != events.size() || outs.size() != events.size()) {
        throw FormatError("inputs/outputs name events that are not listed");
    }
    return CausalScenario(po, std::move(inputs), std::move(outputs));
}

Json scenario_to_json(const CausalScenario& s) {
    Json j;
    j["events"] = s.events();
    Json order = Json::array();
    for (auto [x, y] : s.order().strict_pairs()) order.push_back(Json::array({s.event_name(x), s.event_name(y)}));
    j["order"] = std::move(order);
    Json ins = Json::object(), outs = Json::object();
    for (EventIndex e = 0; e < s.size(); ++e) {
        ins[s.event_name(e)] = s.inputs(e);
        outs[s.event_name(e)] = s.outputs(e);
    }
    j["inputs"] = std::move(ins);
    j["outputs"] = std::move(outs);
    return j;
}

CausalScenario resolve_scenario(const Json& value, const std::filesystem::path& base) {
    if (value.is_string()) {
        const std::filesystem::path p(value.get<std::string>());
        return scenario_from_json(read_json_file(p.is_absolute() ? p : base / p));
    }
    return scenario_from_json(value);
}

EmpiricalTable model_from_json(const Json& j, const std::filesystem::path& base) {
    auto scenario = make_scenario(resolve_scenario(member(j, "scenario"), base));
    const CausalScenario& s = *scenario;
    if (j.contains("event_order")) {
        if (!j.at("event_order").is_string() || j.at("event_order").get<std::string>() != join(s.events(), ",")) {
            throw FormatError("\"event_order\" does not match the canonical order " + join(s.events(), ","));
        }
    }
    const EventSet all = s.order().all();
    const JointSpace ins = JointSpace::inputs(s, all);
    const JointSpace outs = JointSpace::outputs(s, all);
    const Json& rows = member(j, "rows");
    if (!rows.is_object()) throw FormatError("\"rows\" must be an object");
    std::vector<NonNegRational> table(ins.size() * outs.size());
    std::vector<bool> seen(ins.size(), false);
    for (const auto& [key, row] : rows.items()) {
        const std::size_t r = ins.encode(parse_joint(s, all, key, true));
        if (seen[r]) throw FormatError("duplicate row \"" + key + "\"");
        seen[r] = true;
        if (!row.is_object()) throw FormatError("row \"" + key + "\" must be an object");
        for (const auto& [okey, w] : row.items()) {
            table[r * outs.size() + outs.encode(parse_joint(s, all, okey, false))] = parse_weight(w);
        }
    }
    for (std::size_t r = 0; r < ins.size(); ++r) {
        if (!seen[r]) throw FormatError("missing row \"" + joint_input_string(s, all, ins.decode(r, s.size())) + "\"");
    }
    return EmpiricalTable(scenario, std::move(table));
}

EmpiricalTable read_model(const std::filesystem::path& path) {
    return model_from_json(read_json_file(path), path.parent_path());
}

EmpiricalTable as_full_model(const EmpiricalTable& e) {
    const auto& s = e.scenario();
    if (e.support() == s.order().all()) return e;
    std::vector<std::vector<std::string>> inputs, outputs;
    for (EventIndex ev : e.support().members()) {
        inputs.push_back(s.inputs(ev));
        outputs.push_back(s.outputs(ev));
    }
    auto sub = make_scenario(CausalScenario(s.order().restrict_to(e.support()), std::move(inputs), std::move(outputs)));
    // Joint spaces over the support enumerate in the same order on the sub-scenario.
    return EmpiricalTable(sub, e.table());
}

Json model_to_json(const EmpiricalTable& model) {
    const EmpiricalTable e = as_full_model(model);
    const auto& s = e.scenario();
    const EventSet all = s.order().all();
    Json j;
    j["scenario"] = scenario_to_json(s);
    j["event_order"] = join(s.events(), ",");
    Json rows = Json::object();
    for (std::size_t r = 0; r < e.rows(); ++r) {
        Json row = Json::object();
        for (std::size_t c = 0; c < e.cols(); ++c) row[joint_output_string(s, all, e.output(c))] = e.at(r, c).to_string();
        rows[joint_input_string(s, all, e.input(r))] = std::move(row);
    }
    j["rows"] = std::move(rows);
    return j;
}

Json diagram_to_json(const Diagram& d) {
    const auto& s = *d.scenario;
    Json j;
    j["scenario"] = scenario_to_json(s);
    Json wires = Json::array();
    for (const auto& w : d.wires) wires.push_back({{"from", w.from}, {"to", w.to}, {"dim", w.dim}});
    j["wires"] = std::move(wires);
    Json insts = Json::object();
    for (EventIndex e = 0; e < s.size(); ++e) {
        const Instrument& inst = d.instruments.at(e);
        Json ops = Json::object();
        for (std::size_t i = 0; i < inst.operators.size(); ++i) {
            Json family = Json::object();
            for (std::size_t o = 0; o < inst.operators[i].size(); ++o) {
                family[s.outputs(e).at(o)] = matrix_to_json(inst.operators[i][o]);
            }
            ops[s.inputs(e).at(i)] = std::move(family);
        }
        insts[s.event_name(e)] = {{"in", inst.in_wires}, {"out", inst.out_wires}, {"env", inst.env_dim}, {"operators", std::move(ops)}};
    }
    j["instruments"] = std::move(insts);
    return j;
}

Diagram diagram_from_json(const Json& j, const std::filesystem::path& base) {
    Diagram d;
    d.scenario = make_scenario(resolve_scenario(member(j, "scenario"), base));
    const auto& s = *d.scenario;
    for (const auto& w : member(j, "wires")) {
        const Json& to = member(w, "to");
        if (!member(w, "from").is_string() || !to.is_string() || !member(w, "dim").is_number_unsigned()) {
            throw FormatError("wires need string \"from\"/\"to\" and an unsigned \"dim\"");
        }
        d.wires.push_back({w.at("from").get<std::string>(), to.get<std::string>(), w.at("dim").get<std::size_t>()});
    }
    const Json& insts = member(j, "instruments");
    for (EventIndex e = 0; e < s.size(); ++e) {
        const std::string& name = s.event_name(e);
        if (!insts.contains(name)) throw FormatError("no instrument for event " + name);
        const Json& ij = insts.at(name);
        Instrument inst;
        inst.in_wires = index_list(member(ij, "in"));
        inst.out_wires = index_list(member(ij, "out"));
        if (ij.contains("env")) {
            if (!ij.at("env").is_number_unsigned()) throw FormatError("\"env\" must be an unsigned dimension");
            inst.env_dim = ij.at("env").get<std::size_t>();
        }
        const Json& ops = member(ij, "operators");
        for (const auto& label : s.inputs(e)) {
            if (!ops.contains(label)) throw FormatError("instrument " + name + " has no operators for input " + label);
            std::vector<Eigen::MatrixXcd> family;
            for (const auto& out : s.outputs(e)) {
                if (!ops.at(label).contains(out)) {
                    throw FormatError("instrument " + name + " input " + label + " lacks output " + out);
                }
                family.push_back(matrix_from_json(ops.at(label).at(out)));
            }
            inst.operators.push_back(std::move(family));
        }
        d.instruments.push_back(std::move(inst));
    }
    return d;
}

Preorder parse_order_spec(const std::string& spec, const std::vector<std::string>& events) {
    if (spec == "discrete") return discrete_order(events);
    if (spec == "indiscrete") return indiscrete_order(events);
    if (spec.rfind("chain:", 0) == 0) {
        auto seq = split(spec.substr(6), '<');
        auto sorted = seq;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != events) throw FormatError("chain must list every event exactly once: " + join(events, ","));
        return chain_order(seq);
    }
    if (spec.rfind("pairs:", 0) == 0) {
        std::vector<std::pair<std::string, std::string>> gens;
        if (spec.size() > 6) {
            for (const auto& item : split(spec.substr(6), ',')) {
                const auto ends = split(item, '<');
                if (ends.size() != 2) throw FormatError("order pair \"" + item + "\" must read x<y");
                gens.emplace_back(ends[0], ends[1]);
            }
        }
        return closure(events, gens);
    }
    const Json j = read_json_file(spec);
    return closure(events, pair_list(member(j, "order")));
}

std::string format_table(const EmpiricalTable& model) {
    const EmpiricalTable e = as_full_model(model);
    const auto& s = e.scenario();
    const EventSet all = s.order().all();
    std::vector<std::string> heads, cells;
    std::size_t width = 0;
    for (std::size_t c = 0; c < e.cols(); ++c) heads.push_back(joint_output_string(s, all, e.output(c)));
    for (const auto& x : e.table()) width = std::max(width, x.to_string().size());
    for (const auto& h : heads) width = std::max(width, h.size());
    std::size_t lead = join(s.events(), ",").size();
    for (std::size_t r = 0; r < e.rows(); ++r) lead = std::max(lead, joint_input_string(s, all, e.input(r)).size());

    std::ostringstream out;
    auto pad = [](const std::string& t, std::size_t w) { return t + std::string(w > t.size() ? w - t.size() : 0, ' '); };
    out << "# events in canonical order: " << join(s.events(), ",") << "; order: " << s.order().describe() << "\n";
    out << pad(join(s.events(), ","), lead) << " |";
    for (const auto& h : heads) out << " " << pad(h, width);
    out << "\n" << std::string(lead, '-') << "-+" << std::string(heads.size() * (width + 1), '-') << "\n";
    for (std::size_t r = 0; r < e.rows(); ++r) {
        out << pad(joint_input_string(s, all, e.input(r)), lead) << " |";
        for (std::size_t c = 0; c < e.cols(); ++c) out << " " << pad(e.at(r, c).to_string(), width);
        out << "\n";
    }
    return out.str();
}

}  // namespace causal

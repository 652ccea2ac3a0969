#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "causal/analysis.hpp"
#include "causal/io.hpp"
#include "causal/realize.hpp"

namespace {

using namespace causal;

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;

EmpiricalTable load_model(const std::string& path, const std::string& scenario_override) {
    Json j = read_json_file(path);
    if (!scenario_override.empty()) {
        j["scenario"] = std::filesystem::absolute(scenario_override).string();
        j.erase("event_order");
    }
    return model_from_json(j, std::filesystem::path(path).parent_path());
}

std::string header(const CausalScenario& s) {
    std::string names;
    for (const auto& e : s.events()) names += (names.empty() ? "" : ",") + e;
    return "# events in canonical order: " + names;
}

std::string format_section(const Locale& locale, const CausalSection& f) {
    const auto& s = locale.scenario();
    std::string out;
    for (const auto& factor : factorize(locale, f).factors) {
        const JointSpace space = factor_space(locale, f.domain(), factor.event);
        out += "    o_" + s.event_name(factor.event) + ":";
        for (std::size_t k = 0; k < factor.table.size(); ++k) {
            const Assignment digits = space.decode(k, s.size());
            std::string ctx;
            for (EventIndex e : factor.context.members()) {
                const std::size_t input = f.domain().subset_members(e).at(static_cast<std::size_t>(digits[e]));
                ctx += (ctx.empty() ? "" : ",") + s.event_name(e) + "=" + s.inputs(e)[input];
            }
            out += " (" + ctx + ")->" + s.outputs(factor.event)[factor.table[k]];
        }
        out += "\n";
    }
    return out;
}

int cmd_check(const std::string& model_path, const std::string& scenario, const std::string& order_spec) {
    const EmpiricalTable e = load_model(model_path, scenario);
    const auto& s = e.scenario();
    const Preorder order = order_spec.empty() ? s.order() : parse_order_spec(order_spec, s.events());
    std::cout << header(s) << "; order: " << order.describe() << "\n";
    const CausalityVerdict v = check_causality(e, order);
    if (v.causal()) {
        std::cout << "causal\n";
        return kHolds;
    }
    std::cout << "not causal: " << v.violations.size() << " violated equations (lowerset, o', i, j, lhs, rhs)\n";
    for (const auto& viol : v.violations) std::cout << "  " << describe(s, e.support(), viol) << "\n";
    return kFails;
}

int cmd_local(const std::string& model_path, const std::string& scenario) {
    const EmpiricalTable e = load_model(model_path, scenario);
    const auto& s = e.scenario();
    std::cout << header(s) << "; order: " << s.order().describe() << "\n";
    const LocalityCertificate cert = is_local(e);
    if (!cert.local) {
        std::cout << "NONLOCAL (" << cert.columns << " causal sections, no convex decomposition)\n";
        return kFails;
    }
    const Locale locale(e.scenario_ptr());
    std::cout << "LOCAL: " << cert.decomposition.size() << " sections of " << cert.columns << "\n";
    for (const auto& [f, w] : cert.decomposition) {
        std::cout << "  weight " << w.to_string() << "\n" << format_section(locale, f);
    }
    return kHolds;
}

int cmd_fraction(const std::string& model_path, const std::string& scenario, const std::string& order_spec) {
    const EmpiricalTable e = load_model(model_path, scenario);
    const auto& s = e.scenario();
    const Preorder order = parse_order_spec(order_spec, s.events());
    const CausalFraction f = causal_fraction(e, order);
    std::cout << header(s) << "; order: " << order.describe() << "\n";
    std::cout << f.value.to_string() << (f.equation_only ? " (equation-causal: order is a pre-order)" : "") << "\n";
    return kHolds;
}

int cmd_sweep(const std::string& model_path, const std::string& scenario, int events, bool posets_only) {
    const EmpiricalTable e = load_model(model_path, scenario);
    const auto& s = e.scenario();
    if (events >= 0 && static_cast<std::size_t>(events) != s.size()) {
        throw FormatError("--events " + std::to_string(events) + " but the model has " + std::to_string(s.size()) + " events");
    }
    const auto entries = sweep(e, posets_only);
    std::cout << header(s) << "; " << entries.size() << (posets_only ? " partial orders" : " pre-orders") << "\n";
    std::cout << "relation_size\tfraction\tkind\torder\n";
    for (const auto& entry : entries) {
        std::cout << entry.order.relation_size() << "\t" << entry.fraction.value.to_string() << "\t"
                  << (entry.fraction.equation_only ? "equation-causal" : "causal") << "\t" << entry.order.describe()
                  << "\n";
    }
    return kHolds;
}

Diagram load_diagram(const std::string& path, const std::string& builtin) {
    if (!builtin.empty()) {
        if (builtin != "diamond") throw FormatError("unknown builtin diagram \"" + builtin + "\"");
        return diamond_builtin();
    }
    if (path.empty()) throw FormatError("give a diagram file or --builtin diamond");
    return diagram_from_json(read_json_file(path), std::filesystem::path(path).parent_path());
}

EventSet parse_event_list(const CausalScenario& s, const std::string& list) {
    EventSet out;
    std::string cur;
    for (std::size_t k = 0; k <= list.size(); ++k) {
        if (k == list.size() || list[k] == ',') {
            if (!cur.empty()) out.insert(s.event_index(cur));
            cur.clear();
        } else {
            cur += list[k];
        }
    }
    return out;
}

int cmd_realize(const std::string& path, const std::string& builtin, const std::string& restrict_to) {
    const Diagram d = load_diagram(path, builtin);
    EmpiricalTable e = evaluate(d);
    if (!restrict_to.empty()) e = restrict_model(e, parse_event_list(e.scenario(), restrict_to));
    std::cout << model_to_json(e).dump(2) << "\n";
    return kHolds;
}

int cmd_export(const std::string& builtin) {
    std::cout << diagram_to_json(load_diagram("", builtin)).dump(2) << "\n";
    return kHolds;
}

int cmd_fix(const std::string& model_path, const std::string& scenario, const std::vector<std::string>& assign,
            const std::string& discard, const std::string& order_spec) {
    const EmpiricalTable e = load_model(model_path, scenario);
    const auto& s = e.scenario();
    const Preorder order = order_spec.empty() ? s.order() : parse_order_spec(order_spec, s.events());
    Assignment a(s.size(), -1);
    for (const auto& item : assign) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw FormatError("--assign takes event=input, got \"" + item + "\"");
        const EventIndex ev = s.event_index(item.substr(0, eq));
        a[ev] = static_cast<int>(s.input_index(ev, item.substr(eq + 1)));
    }
    std::cout << model_to_json(fix_inputs(e, order, a, parse_event_list(s, discard))).dump(2) << "\n";
    return kHolds;
}

int cmd_show(const std::string& model_path, const std::string& scenario) {
    std::cout << format_table(load_model(model_path, scenario));
    return kHolds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Causal scenarios, empirical models and causal fractions"};
    app.require_subcommand(1);
    std::string model, scenario, order, diagram, builtin, restrict_to, discard;
    std::vector<std::string> assign;
    int events = -1;
    bool posets_only = false;

    auto model_args = [&](CLI::App* sub) {
        sub->add_option("model", model, "model file")->required();
        sub->add_option("--scenario", scenario, "scenario file replacing the model's own");
    };
    auto* check = app.add_subcommand("check", "validate the causality equations");
    model_args(check);
    check->add_option("--order,--order-override", order, "order spec (default: the scenario's order)");
    auto* local = app.add_subcommand("local", "decide locality by exact LP");
    model_args(local);
    auto* fraction = app.add_subcommand("fraction", "causal fraction against an order");
    model_args(fraction);
    fraction->add_option("--order", order, "discrete | indiscrete | chain:A<B | pairs:A<B,... | file")->required();
    auto* sweep_cmd = app.add_subcommand("sweep", "causal fraction for every labeled (pre)order");
    model_args(sweep_cmd);
    sweep_cmd->add_option("--events", events, "expected number of events");
    sweep_cmd->add_flag("--posets-only", posets_only, "partial orders only");
    auto* realize = app.add_subcommand("realize", "evaluate a quantum diagram to a model file");
    realize->add_option("diagram", diagram, "diagram file");
    realize->add_option("--builtin", builtin, "builtin diagram (diamond)");
    realize->add_option("--restrict", restrict_to, "lowerset to restrict to, e.g. C,A,B");
    auto* fix = app.add_subcommand("fix", "fix inputs on a lowerset and marginalize");
    model_args(fix);
    fix->add_option("--assign", assign, "event=input")->required();
    fix->add_option("--discard", discard, "events whose outputs are marginalized, e.g. C");
    fix->add_option("--order", order, "order spec (default: the scenario's order)");
    auto* show = app.add_subcommand("show", "print a model as a table");
    model_args(show);
    auto* export_cmd = app.add_subcommand("export-diagram", "write a builtin diagram as JSON");
    export_cmd->add_option("--builtin", builtin, "builtin diagram (diamond)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex);
        return code == 0 ? 0 : kUsage;
    }
    try {
        if (check->parsed()) return cmd_check(model, scenario, order);
        if (local->parsed()) return cmd_local(model, scenario);
        if (fraction->parsed()) return cmd_fraction(model, scenario, order);
        if (sweep_cmd->parsed()) return cmd_sweep(model, scenario, events, posets_only);
        if (realize->parsed()) return cmd_realize(diagram, builtin, restrict_to);
        if (fix->parsed()) return cmd_fix(model, scenario, assign, discard, order);
        if (show->parsed()) return cmd_show(model, scenario);
        if (export_cmd->parsed()) return cmd_export(builtin);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

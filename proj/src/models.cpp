#include "causal/models.hpp"

namespace causal {

namespace {

EventSet agreement(const JointSpace& space, std::size_t n, std::size_t i, std::size_t j) {
    const Assignment a = space.decode(i, n);
    const Assignment b = space.decode(j, n);
    EventSet same;
    for (EventIndex e : space.events().members()) {
        if (a[e] == b[e]) same.insert(e);
    }
    return same;
}

}  // namespace

namespace detail {

void check_same_events(const CausalScenario& scenario, const Preorder& order) {
    if (scenario.events() != order.events()) {
        throw CausalError("order events do not match the scenario's events");
    }
}

}  // namespace detail

std::vector<EquationBlock> reduced_equation_blocks(const CausalScenario& scenario, const Preorder& order,
                                                   EventSet support) {
    if (!order.is_lowerset(support)) throw CausalError("support is not a lowerset of the order");
    const JointSpace ins = JointSpace::inputs(scenario, support);
    const std::size_t n = scenario.size();
    std::vector<EquationBlock> blocks;
    for (std::size_t i = 0; i < ins.size(); ++i) {
        for (std::size_t j = i + 1; j < ins.size(); ++j) {
            const EventSet w = order.interior(agreement(ins, n, i, j));
            if (!w.empty()) blocks.push_back({w, i, j});
        }
    }
    return blocks;
}

std::vector<EquationBlock> full_equation_blocks(const CausalScenario& scenario, const Preorder& order,
                                                EventSet support) {
    if (!order.is_lowerset(support)) throw CausalError("support is not a lowerset of the order");
    const JointSpace ins = JointSpace::inputs(scenario, support);
    const std::size_t n = scenario.size();
    std::vector<EquationBlock> blocks;
    for (EventSet lambda : lowersets(order)) {
        if (lambda.empty() || !lambda.subset_of(support)) continue;
        const JointSpace on_lambda = JointSpace::inputs(scenario, lambda);
        const auto proj = project_indices(ins, on_lambda, n);
        for (std::size_t i = 0; i < ins.size(); ++i) {
            for (std::size_t j = 0; j < ins.size(); ++j) {
                if (i != j && proj[i] == proj[j]) blocks.push_back({lambda, i, j});
            }
        }
    }
    return blocks;
}

std::string describe(const CausalScenario& scenario, EventSet support, const Violation& v) {
    const JointSpace ins = JointSpace::inputs(scenario, support);
    const std::size_t n = scenario.size();
    std::string lam;
    for (EventIndex e : v.lowerset.members()) {
        if (!lam.empty()) lam += ",";
        lam += scenario.event_name(e);
    }
    return "({" + lam + "}, " + joint_output_string(scenario, v.lowerset, v.output) + ", " +
           joint_input_string(scenario, support, ins.decode(v.row_i, n)) + ", " +
           joint_input_string(scenario, support, ins.decode(v.row_j, n)) + ", " + v.lhs.to_string() + ", " +
           v.rhs.to_string() + ")";
}

}  // namespace causal

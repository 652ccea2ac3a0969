#pragma once

#include <string>
#include <vector>

#include "causal/scenario.hpp"
#include "causal/semiring.hpp"

namespace causal {

/// A semiring-valued table of joint-output weights conditional on joint
/// inputs, over a lowerset `support` of the scenario's events.
///
/// Rows are joint inputs and columns joint outputs on the support, both in
/// JointSpace index order. Every row sums to one.
template <Semiring R>
class ConditionalDistribution {
public:
    ConditionalDistribution(ScenarioPtr scenario, EventSet support, std::vector<R> table)
        : scenario_(std::move(scenario)), support_(support), table_(std::move(table)) {
        if (!scenario_) throw CausalError("conditional distribution: null scenario");
        if (!support_.subset_of(scenario_->order().all())) throw CausalError("support outside the scenario");
        inputs_ = JointSpace::inputs(*scenario_, support_);
        outputs_ = JointSpace::outputs(*scenario_, support_);
        if (table_.size() != inputs_.size() * outputs_.size()) {
            throw CausalError("conditional distribution: table has " + std::to_string(table_.size()) +
                              " cells, expected " + std::to_string(inputs_.size() * outputs_.size()));
        }
        for (std::size_t i = 0; i < rows(); ++i) {
            R sum = R::zero();
            for (std::size_t o = 0; o < cols(); ++o) sum = sum + at(i, o);
            if (!(sum == R::one())) {
                throw CausalError("row " + joint_input_string(*scenario_, support_, input(i)) +
                                  " is not normalized (sums to " + sum.to_string() + ")");
            }
        }
    }

    /// A full-support distribution on the scenario's events.
    ConditionalDistribution(ScenarioPtr scenario, std::vector<R> table)
        : ConditionalDistribution(scenario, scenario ? scenario->order().all() : EventSet{}, std::move(table)) {}

    const CausalScenario& scenario() const { return *scenario_; }
    const ScenarioPtr& scenario_ptr() const { return scenario_; }
    EventSet support() const { return support_; }
    const JointSpace& input_space() const { return inputs_; }
    const JointSpace& output_space() const { return outputs_; }
    std::size_t rows() const { return inputs_.size(); }
    std::size_t cols() const { return outputs_.size(); }

    const R& at(std::size_t row, std::size_t col) const { return table_[row * cols() + col]; }
    const std::vector<R>& table() const { return table_; }

    Assignment input(std::size_t row) const { return inputs_.decode(row, scenario_->size()); }
    Assignment output(std::size_t col) const { return outputs_.decode(col, scenario_->size()); }

    bool operator==(const ConditionalDistribution& o) const {
        return *scenario_ == *o.scenario_ && support_ == o.support_ && table_ == o.table_;
    }

private:
    ScenarioPtr scenario_;
    EventSet support_;
    JointSpace inputs_;
    JointSpace outputs_;
    std::vector<R> table_;
};

using EmpiricalTable = ConditionalDistribution<NonNegRational>;

}  // namespace causal

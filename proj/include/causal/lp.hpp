#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace causal {

enum class Relation { le, ge, eq };

struct LinearConstraint {
    std::vector<std::pair<std::size_t, mpq_class>> terms;  // (variable, coefficient)
    Relation relation = Relation::eq;
    mpq_class rhs;
};

/// maximize c.x subject to the constraints and x >= 0, in exact rationals.
class ExactLP {
public:
    ExactLP() = default;
    explicit ExactLP(std::size_t variables) : objective_(variables) {}

    std::size_t add_variable(mpq_class objective = 0) {
        objective_.push_back(std::move(objective));
        return objective_.size() - 1;
    }
    void set_objective(std::size_t var, mpq_class c) { objective_.at(var) = std::move(c); }
    void add_constraint(LinearConstraint c) { constraints_.push_back(std::move(c)); }
    void add_constraint(std::vector<std::pair<std::size_t, mpq_class>> terms, Relation rel, mpq_class rhs) {
        constraints_.push_back({std::move(terms), rel, std::move(rhs)});
    }

    std::size_t variables() const { return objective_.size(); }
    const std::vector<mpq_class>& objective() const { return objective_; }
    const std::vector<LinearConstraint>& constraints() const { return constraints_; }

private:
    std::vector<mpq_class> objective_;
    std::vector<LinearConstraint> constraints_;
};

enum class LPStatus { optimal, infeasible, unbounded };

std::string to_string(LPStatus s);

struct LPResult {
    LPStatus status = LPStatus::infeasible;
    mpq_class value;             // optimal objective
    std::vector<mpq_class> x;    // optimal vertex
    std::size_t pivots = 0;
};

/// Two-phase dense-tableau simplex with Bland's rule. Throws CausalError on
/// a constraint naming a variable out of range.
LPResult lp_solve(const ExactLP& lp);

/// True iff x >= 0 satisfies every constraint exactly.
bool lp_feasible_point(const ExactLP& lp, const std::vector<mpq_class>& x);

}  // namespace causal

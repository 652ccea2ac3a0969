#pragma once

#include <Eigen/Dense>

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "causal/conditional.hpp"

namespace causal {

/// A quantum wire from one event's instrument to a strictly later one. An
/// empty `to` discards the system.
struct Wire {
    std::string from;
    std::string to;
    std::size_t dim = 2;
};

/// A classically controlled instrument. operators[i][o] maps the tensor
/// product of the incoming wires to that of the outgoing wires followed by
/// an environment factor of dimension `env_dim`, which is never acted on again.
struct Instrument {
    std::vector<std::size_t> in_wires;
    std::vector<std::size_t> out_wires;
    std::size_t env_dim = 1;
    std::vector<std::vector<Eigen::MatrixXcd>> operators;
};

/// One instrument per scenario event (indexed like the scenario's events).
struct Diagram {
    ScenarioPtr scenario;
    std::vector<Wire> wires;
    std::vector<Instrument> instruments;
};

inline constexpr double kCompletenessTolerance = 1e-9;
inline constexpr double kSnapTolerance = 1e-9;
inline constexpr long kSnapMaxDenominator = 1024;

/// Itemized problems; empty means valid.
std::vector<std::string> validate(const Diagram& d);

/// Raised when a probability has no rational within tolerance.
class Unsnappable : public CausalError {
public:
    using CausalError::CausalError;
};

/// Smallest-denominator rational within kSnapTolerance of p, denominator at most kSnapMaxDenominator.
NonNegRational snap_probability(double p);

/// Floating-point table p(o|i) over all events, rows and columns in
/// JointSpace order. `schedule` is a linear extension of the order; the
/// default sorts by downset size.
std::vector<double> evaluate_probabilities(const Diagram& d,
                                           const std::optional<std::vector<EventIndex>>& schedule = std::nullopt);

/// Exact model from a valid diagram by rational snapping.
EmpiricalTable evaluate(const Diagram& d);

/// Replaces a maximal event by discarding its incoming systems; the result
/// lives on the scenario without that event.
Diagram discard_event(const Diagram& d, const std::string& event);

/// Bell-state source at C, Z/X measurements at A and B, ZZ/XX parity at D.
Diagram diamond_builtin();

/// A valid diagram over `scenario` with random Clifford instruments, qubit
/// wires along strict order relations and outputs read from a measured qubit.
/// Probabilities are dyadic, so evaluate() snaps them exactly.
Diagram random_clifford_diagram(ScenarioPtr scenario, std::mt19937_64& rng);
/// Same wiring with Haar-like random isometries; only the float table is meaningful.
Diagram random_isometry_diagram(ScenarioPtr scenario, std::mt19937_64& rng);

}  // namespace causal

#include "causal/realize.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numeric>

namespace causal {

namespace {

using cd = std::complex<double>;
constexpr std::size_t kEnvFactor = std::numeric_limits<std::size_t>::max();

std::size_t product_dim(const std::vector<Wire>& wires, const std::vector<std::size_t>& ids) {
    std::size_t p = 1;
    for (std::size_t w : ids) p *= wires.at(w).dim;
    return p;
}

// A pure state over an ordered list of tensor factors, first factor most significant.
struct State {
    Eigen::VectorXcd amp;
    std::vector<std::pair<std::size_t, std::size_t>> factors;  // (wire id or kEnvFactor, dim)
};

// New factor k is old factor perm[k].
State permute(const State& s, const std::vector<std::size_t>& perm) {
    const std::size_t f = s.factors.size();
    std::vector<std::size_t> old_stride(f, 1);
    for (std::size_t k = f; k-- > 1;) old_stride[k - 1] = old_stride[k] * s.factors[k].second;
    State out;
    out.amp.resize(s.amp.size());
    for (std::size_t k = 0; k < f; ++k) out.factors.push_back(s.factors[perm[k]]);
    std::vector<std::size_t> digit(f, 0);
    for (Eigen::Index idx = 0; idx < out.amp.size(); ++idx) {
        std::size_t old = 0;
        for (std::size_t k = 0; k < f; ++k) old += digit[k] * old_stride[perm[k]];
        out.amp[idx] = s.amp[static_cast<Eigen::Index>(old)];
        for (std::size_t k = f; k-- > 0;) {
            if (++digit[k] < out.factors[k].second) break;
            digit[k] = 0;
        }
    }
    return out;
}

State apply(const State& s, const Instrument& inst, const std::vector<Wire>& wires, const Eigen::MatrixXcd& op) {
    std::vector<std::size_t> perm;
    for (std::size_t w : inst.in_wires) {
        auto it = std::find_if(s.factors.begin(), s.factors.end(), [w](const auto& fac) { return fac.first == w; });
        perm.push_back(static_cast<std::size_t>(it - s.factors.begin()));
    }
    for (std::size_t k = 0; k < s.factors.size(); ++k) {
        if (std::find(perm.begin(), perm.end(), k) == perm.end()) perm.push_back(k);
    }
    const State front = permute(s, perm);
    const Eigen::Index in_dim = static_cast<Eigen::Index>(product_dim(wires, inst.in_wires));
    const Eigen::Index rest = front.amp.size() / in_dim;
    // Column-major (rest x in) view of the state; the product is (rest x out*env).
    const Eigen::Map<const Eigen::MatrixXcd> m(front.amp.data(), rest, in_dim);
    const Eigen::MatrixXcd next = m * op.transpose();
    State out;
    out.amp = Eigen::Map<const Eigen::VectorXcd>(next.data(), next.size());
    for (std::size_t w : inst.out_wires) out.factors.emplace_back(w, wires[w].dim);
    if (inst.env_dim > 1) out.factors.emplace_back(kEnvFactor, inst.env_dim);
    for (std::size_t k = inst.in_wires.size(); k < front.factors.size(); ++k) out.factors.push_back(front.factors[k]);
    return out;
}

std::vector<EventIndex> default_schedule(const Preorder& po) {
    std::vector<EventIndex> order(po.size());
    std::iota(order.begin(), order.end(), EventIndex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](EventIndex a, EventIndex b) { return po.downset(a).size() < po.downset(b).size(); });
    return order;
}

}  // namespace

std::vector<std::string> validate(const Diagram& d) {
    std::vector<std::string> problems;
    if (!d.scenario) return {"diagram has no scenario"};
    const auto& s = *d.scenario;
    const auto& po = s.order();
    if (!po.is_partial_order()) problems.push_back("diagram order is not a partial order");
    if (d.instruments.size() != s.size()) {
        problems.push_back("expected " + std::to_string(s.size()) + " instruments, got " +
                           std::to_string(d.instruments.size()));
        return problems;
    }
    std::vector<int> produced(d.wires.size(), 0), consumed(d.wires.size(), 0);
    for (std::size_t w = 0; w < d.wires.size(); ++w) {
        const Wire& wire = d.wires[w];
        const std::string tag = "wire " + std::to_string(w) + " (" + wire.from + "->" +
                                (wire.to.empty() ? "discard" : wire.to) + ")";
        if (wire.dim == 0) problems.push_back(tag + ": zero dimension");
        if (!po.has_event(wire.from) || (!wire.to.empty() && !po.has_event(wire.to))) {
            problems.push_back(tag + ": unknown event");
            continue;
        }
        if (!wire.to.empty()) {
            const EventIndex a = po.index(wire.from), b = po.index(wire.to);
            if (a == b || !po.leq(a, b) || po.leq(b, a)) problems.push_back(tag + ": does not run strictly forward in the order");
        }
    }
    for (EventIndex e = 0; e < s.size(); ++e) {
        const Instrument& inst = d.instruments[e];
        const std::string tag = "instrument " + s.event_name(e);
        bool wires_ok = true;
        for (std::size_t w : inst.in_wires) {
            if (w >= d.wires.size() || d.wires[w].to != s.event_name(e)) {
                problems.push_back(tag + ": incoming wire " + std::to_string(w) + " does not end here");
                wires_ok = false;
            } else {
                ++consumed[w];
            }
        }
        for (std::size_t w : inst.out_wires) {
            if (w >= d.wires.size() || d.wires[w].from != s.event_name(e)) {
                problems.push_back(tag + ": outgoing wire " + std::to_string(w) + " does not start here");
                wires_ok = false;
            } else {
                ++produced[w];
            }
        }
        if (inst.env_dim == 0) problems.push_back(tag + ": zero environment dimension");
        if (inst.operators.size() != s.input_count(e)) {
            problems.push_back(tag + ": operator families for " + std::to_string(inst.operators.size()) + " inputs, expected " +
                               std::to_string(s.input_count(e)));
            continue;
        }
        if (!wires_ok) continue;
        const auto in_dim = static_cast<Eigen::Index>(product_dim(d.wires, inst.in_wires));
        const auto out_dim = static_cast<Eigen::Index>(product_dim(d.wires, inst.out_wires) * inst.env_dim);
        for (std::size_t i = 0; i < inst.operators.size(); ++i) {
            const auto& family = inst.operators[i];
            const std::string at = tag + " input " + s.inputs(e)[i];
            if (family.size() != s.output_count(e)) {
                problems.push_back(at + ": " + std::to_string(family.size()) + " operators, expected " +
                                   std::to_string(s.output_count(e)));
                continue;
            }
            Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(in_dim, in_dim);
            bool dims_ok = true;
            for (std::size_t o = 0; o < family.size(); ++o) {
                if (family[o].rows() != out_dim || family[o].cols() != in_dim) {
                    problems.push_back(at + " output " + s.outputs(e)[o] + ": operator is " +
                                       std::to_string(family[o].rows()) + "x" + std::to_string(family[o].cols()) +
                                       ", expected " + std::to_string(out_dim) + "x" + std::to_string(in_dim));
                    dims_ok = false;
                    continue;
                }
                sum += family[o].adjoint() * family[o];
            }
            if (!dims_ok) continue;
            const double err = (sum - Eigen::MatrixXcd::Identity(in_dim, in_dim)).cwiseAbs().maxCoeff();
            if (!(err <= kCompletenessTolerance)) {
                problems.push_back(at + ": operators are not complete (max deviation " + std::to_string(err) + ")");
            }
        }
    }
    for (std::size_t w = 0; w < d.wires.size(); ++w) {
        const bool discarded = d.wires[w].to.empty();
        if (produced[w] != 1) problems.push_back("wire " + std::to_string(w) + " is produced " + std::to_string(produced[w]) + " times");
        if (consumed[w] != (discarded ? 0 : 1)) {
            problems.push_back("wire " + std::to_string(w) + " is consumed " + std::to_string(consumed[w]) + " times");
        }
    }
    return problems;
}

NonNegRational snap_probability(double p) {
    if (!std::isfinite(p) || p < -kSnapTolerance || p > 1 + kSnapTolerance) {
        throw Unsnappable("probability " + std::to_string(p) + " is out of range");
    }
    for (long q = 1; q <= kSnapMaxDenominator; ++q) {
        const long num = std::max(0L, std::lround(p * static_cast<double>(q)));
        if (std::abs(p - static_cast<double>(num) / static_cast<double>(q)) <= kSnapTolerance) return NonNegRational(num, q);
    }
    throw Unsnappable("probability " + std::to_string(p) + " has no rational within tolerance with denominator <= " +
                      std::to_string(kSnapMaxDenominator));
}

std::vector<double> evaluate_probabilities(const Diagram& d, const std::optional<std::vector<EventIndex>>& schedule) {
    if (auto problems = validate(d); !problems.empty()) {
        std::string msg = "invalid diagram:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw CausalError(msg);
    }
    const auto& s = *d.scenario;
    const std::size_t n = s.size();
    const std::vector<EventIndex> steps = schedule ? *schedule : default_schedule(s.order());
    {
        std::vector<EventIndex> sorted = steps;
        std::sort(sorted.begin(), sorted.end());
        if (sorted.size() != n || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
            (n > 0 && sorted.back() >= n)) {
            throw CausalError("schedule is not a permutation of the events");
        }
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                if (s.order().leq(steps[b], steps[a]) && !s.order().leq(steps[a], steps[b])) {
                    throw CausalError("schedule is not a linear extension of the order");
                }
            }
        }
    }
    const EventSet all = s.order().all();
    const JointSpace ins = JointSpace::inputs(s, all);
    const JointSpace outs = JointSpace::outputs(s, all);
    std::vector<double> table(ins.size() * outs.size(), 0.0);
    Assignment output(n, -1);
    for (std::size_t row = 0; row < ins.size(); ++row) {
        const Assignment input = ins.decode(row, n);
        std::function<void(const State&, std::size_t)> branch = [&](const State& st, std::size_t depth) {
            if (depth == steps.size()) {
                table[row * outs.size() + outs.encode(output)] = st.amp.squaredNorm();
                return;
            }
            const EventIndex e = steps[depth];
            const Instrument& inst = d.instruments[e];
            for (std::size_t o = 0; o < s.output_count(e); ++o) {
                output[e] = static_cast<int>(o);
                branch(apply(st, inst, d.wires, inst.operators[static_cast<std::size_t>(input[e])][o]), depth + 1);
            }
        };
        State start;
        start.amp = Eigen::VectorXcd::Ones(1);
        branch(start, 0);
    }
    return table;
}

EmpiricalTable evaluate(const Diagram& d) {
    const std::vector<double> probs = evaluate_probabilities(d);
    std::vector<NonNegRational> table;
    table.reserve(probs.size());
    for (double p : probs) table.push_back(snap_probability(p));
    return EmpiricalTable(d.scenario, std::move(table));
}

Diagram discard_event(const Diagram& d, const std::string& event) {
    const auto& s = *d.scenario;
    const EventIndex gone = s.event_index(event);
    if (s.order().upset(gone) != EventSet::single(gone)) throw CausalError("discard_event: " + event + " is not maximal");
    const EventSet kept = s.order().all() - EventSet::single(gone);
    std::vector<std::vector<std::string>> inputs, outputs;
    for (EventIndex e : kept.members()) {
        inputs.push_back(s.inputs(e));
        outputs.push_back(s.outputs(e));
    }
    Diagram out;
    out.scenario = make_scenario(CausalScenario(s.order().restrict_to(kept), std::move(inputs), std::move(outputs)));
    std::vector<std::size_t> remap(d.wires.size(), kEnvFactor);
    for (std::size_t w = 0; w < d.wires.size(); ++w) {
        if (d.wires[w].from == event) continue;
        remap[w] = out.wires.size();
        Wire wire = d.wires[w];
        if (wire.to == event) wire.to.clear();
        out.wires.push_back(wire);
    }
    for (EventIndex e : kept.members()) {
        Instrument inst = d.instruments.at(e);
        for (auto& w : inst.in_wires) w = remap.at(w);
        for (auto& w : inst.out_wires) w = remap.at(w);
        out.instruments.push_back(std::move(inst));
    }
    return out;
}

Diagram diamond_builtin() {
    const std::vector<std::string> bits{"0", "1"};
    const Preorder po = closure({"A", "B", "C", "D"}, {{"C", "A"}, {"C", "B"}, {"A", "D"}, {"B", "D"}});
    Diagram d;
    d.scenario = make_scenario(CausalScenario::uniform(po, bits, bits));
    d.wires = {{"C", "A", 2}, {"C", "B", 2}, {"A", "D", 2}, {"B", "D", 2}};
    const double h = 1.0 / std::sqrt(2.0);

    auto column = [](std::initializer_list<cd> v) {
        Eigen::MatrixXcd m(static_cast<Eigen::Index>(v.size()), 1);
        Eigen::Index k = 0;
        for (const cd& x : v) m(k++, 0) = x;
        return m;
    };
    // Bell states on (A's qubit, B's qubit) scaled by 1/sqrt2: outcome o_C selects within the input's pair.
    Instrument c;
    c.out_wires = {0, 1};
    c.operators = {
        {column({h * h, 0, 0, h * h}), column({h * h, 0, 0, -h * h})},  // Phi+, Phi-
        {column({0, h * h, h * h, 0}), column({0, h * h, -h * h, 0})},  // Psi+, Psi-
    };

    Eigen::Matrix2cd z0, z1, x0, x1;
    z0 << 1, 0, 0, 0;
    z1 << 0, 0, 0, 1;
    x0 << 0.5, 0.5, 0.5, 0.5;
    x1 << 0.5, -0.5, -0.5, 0.5;
    Instrument a;
    a.in_wires = {0};
    a.out_wires = {2};
    a.operators = {{z0, z1}, {x0, x1}};
    Instrument b;
    b.in_wires = {1};
    b.out_wires = {3};
    b.operators = {{z0, z1}, {x0, x1}};

    // Parity projectors; the measured pair is demolished into a 4-dimensional environment.
    Eigen::Matrix4cd zz = Eigen::Matrix4cd::Zero();
    zz.diagonal() << 1, -1, -1, 1;
    Eigen::Matrix4cd xx = Eigen::Matrix4cd::Zero();
    xx(0, 3) = xx(1, 2) = xx(2, 1) = xx(3, 0) = 1;
    const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
    Instrument dd;
    dd.in_wires = {2, 3};
    dd.env_dim = 4;
    dd.operators = {{(id + zz) / 2.0, (id - zz) / 2.0}, {(id + xx) / 2.0, (id - xx) / 2.0}};

    // Canonical event order is A, B, C, D.
    d.instruments = {a, b, c, dd};
    return d;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> random_wiring(const Preorder& po, std::mt19937_64& rng) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::bernoulli_distribution coin(0.5);
    for (auto [x, y] : po.strict_pairs()) {
        if (coin(rng)) pairs.emplace_back(x, y);
    }
    return pairs;
}

Diagram wire_up(const ScenarioPtr& scenario, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    Diagram d;
    d.scenario = scenario;
    d.instruments.resize(scenario->size());
    for (auto [x, y] : pairs) {
        d.instruments[y].in_wires.push_back(d.wires.size());
        d.instruments[x].out_wires.push_back(d.wires.size());
        d.wires.push_back({scenario->event_name(x), scenario->event_name(y), 2});
    }
    return d;
}

// Applies a 2x2 gate to qubit q (0 most significant) of every column.
void apply_1q(Eigen::MatrixXcd& u, std::size_t qubits, std::size_t q, const Eigen::Matrix2cd& g) {
    const Eigen::Index bit = Eigen::Index{1} << (qubits - 1 - q);
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
        if (r & bit) continue;
        const Eigen::RowVectorXcd lo = u.row(r), hi = u.row(r | bit);
        u.row(r) = g(0, 0) * lo + g(0, 1) * hi;
        u.row(r | bit) = g(1, 0) * lo + g(1, 1) * hi;
    }
}

void apply_cnot(Eigen::MatrixXcd& u, std::size_t qubits, std::size_t c, std::size_t t) {
    const Eigen::Index cb = Eigen::Index{1} << (qubits - 1 - c), tb = Eigen::Index{1} << (qubits - 1 - t);
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
        if ((r & cb) && !(r & tb)) u.row(r).swap(u.row(r | tb));
    }
}

Eigen::MatrixXcd random_clifford(std::size_t qubits, std::mt19937_64& rng) {
    const Eigen::Index dim = Eigen::Index{1} << qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::Matrix2cd hadamard, phase;
    hadamard << 1, 1, 1, -1;
    hadamard /= std::sqrt(2.0);
    phase << 1, 0, 0, cd(0, 1);
    std::uniform_int_distribution<std::size_t> pick_q(0, qubits - 1);
    std::uniform_int_distribution<int> pick_gate(0, qubits > 1 ? 2 : 1);
    for (std::size_t step = 0; step < 6 * qubits; ++step) {
        const int g = pick_gate(rng);
        const std::size_t q = pick_q(rng);
        if (g == 0) apply_1q(u, qubits, q, hadamard);
        else if (g == 1) apply_1q(u, qubits, q, phase);
        else {
            std::size_t t = pick_q(rng);
            while (t == q) t = pick_q(rng);
            apply_cnot(u, qubits, q, t);
        }
    }
    return u;
}

Eigen::MatrixXcd random_isometry(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd g(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) g(r, c) = cd(gauss(rng), gauss(rng));
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);
}

}  // namespace

Diagram random_clifford_diagram(ScenarioPtr scenario, std::mt19937_64& rng) {
    Diagram d = wire_up(scenario, random_wiring(scenario->order(), rng));
    std::bernoulli_distribution extra(0.5);
    for (EventIndex e = 0; e < scenario->size(); ++e) {
        if (scenario->output_count(e) != 2) throw CausalError("random_clifford_diagram: outputs must be binary");
        Instrument& inst = d.instruments[e];
        const std::size_t n_in = inst.in_wires.size(), n_out = inst.out_wires.size();
        const std::size_t total = std::max(n_in, 1 + n_out) + (extra(rng) ? 1 : 0);
        const std::size_t n_env = total - 1 - n_out, n_anc = total - n_in;
        inst.env_dim = std::size_t{1} << n_env;
        const Eigen::Index half = Eigen::Index{1} << (total - 1);
        for (std::size_t i = 0; i < scenario->input_count(e); ++i) {
            const Eigen::MatrixXcd u = random_clifford(total, rng);
            // Inputs occupy the leading qubits, ancillas start in |0>.
            Eigen::MatrixXcd v(u.rows(), Eigen::Index{1} << n_in);
            for (Eigen::Index c = 0; c < v.cols(); ++c) v.col(c) = u.col(c << n_anc);
            inst.operators.push_back({v.topRows(half), v.bottomRows(half)});
        }
    }
    return d;
}

Diagram random_isometry_diagram(ScenarioPtr scenario, std::mt19937_64& rng) {
    Diagram d = wire_up(scenario, random_wiring(scenario->order(), rng));
    for (EventIndex e = 0; e < scenario->size(); ++e) {
        Instrument& inst = d.instruments[e];
        const std::size_t in_dim = std::size_t{1} << inst.in_wires.size();
        const std::size_t out_dim = std::size_t{1} << inst.out_wires.size();
        const std::size_t k = scenario->output_count(e);
        inst.env_dim = std::max<std::size_t>(1, (in_dim + k * out_dim - 1) / (k * out_dim));
        const auto block = static_cast<Eigen::Index>(out_dim * inst.env_dim);
        for (std::size_t i = 0; i < scenario->input_count(e); ++i) {
            const Eigen::MatrixXcd v = random_isometry(block * static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(in_dim), rng);
            std::vector<Eigen::MatrixXcd> family;
            for (std::size_t o = 0; o < k; ++o) family.push_back(v.middleRows(static_cast<Eigen::Index>(o) * block, block));
            inst.operators.push_back(std::move(family));
        }
    }
    return d;
}

}  // namespace causal

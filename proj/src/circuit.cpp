#include "grover/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

namespace grover {

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H:   return "h";
        case GateKind::X:   return "x";
        case GateKind::Z:   return "z";
        case GateKind::CZ:  return "cz";
        case GateKind::CCX: return "ccx";
        case GateKind::MCX: return "mcx";
    }
    return "?";
}

void validate_gate(const GateOp& op, int n_qubits) {
    std::size_t expected = 0;
    switch (op.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Z:   expected = 1; break;
        case GateKind::CZ:  expected = 2; break;
        case GateKind::CCX: expected = 3; break;
        case GateKind::MCX: expected = 0; break;  // >= 2, checked below
    }
    if (op.kind == GateKind::MCX) {
        if (op.qubits.size() < 2) throw std::invalid_argument("mcx needs >= 2 operands");
    } else if (op.qubits.size() != expected) {
        throw std::invalid_argument(std::string("wrong operand count for ") +
                                    gate_name(op.kind));
    }
    std::unordered_set<int> seen;
    for (int q : op.qubits) {
        if (q < 0 || q >= n_qubits) {
            throw std::out_of_range("qubit index " + std::to_string(q) +
                                    " out of range for " + std::to_string(n_qubits) +
                                    " qubits");
        }
        if (!seen.insert(q).second) {
            throw std::invalid_argument("repeated operand qubit " + std::to_string(q));
        }
    }
}

int optimal_iterations(int n_qubits, std::uint64_t marked_count) {
    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    if (marked_count == 0 || marked_count >= dim) {
        throw std::invalid_argument("marked count must satisfy 1 <= M < 2^n");
    }
    const double ratio = static_cast<double>(dim) / static_cast<double>(marked_count);
    const int k = static_cast<int>(std::floor(std::numbers::pi / 4.0 * std::sqrt(ratio)));
    return k < 1 ? 1 : k;
}

namespace {

// Multi-controlled phase flip of one basis state: X-conjugation maps the
// state to |1...1>, then H/MCX/H on the target applies Z there. Controls
// are every qubit except the target (the highest-index qubit).
void append_state_reflection(std::vector<GateOp>& ops, const std::string& bits,
                             int n_qubits) {
    const int target = n_qubits - 1;
    std::vector<int> zeros;
    for (int j = 0; j < n_qubits; ++j) {
        if (bits[static_cast<std::size_t>(j)] == '0') zeros.push_back(j);
    }
    for (int q : zeros) ops.push_back({GateKind::X, {q}});
    ops.push_back({GateKind::H, {target}});
    std::vector<int> operands;
    for (int j = 0; j < target; ++j) operands.push_back(j);
    operands.push_back(target);
    ops.push_back({operands.size() == 3 ? GateKind::CCX : GateKind::MCX, operands});
    ops.push_back({GateKind::H, {target}});
    for (int q : zeros) ops.push_back({GateKind::X, {q}});
}

}  // namespace

std::vector<GateOp> build_oracle(const GroverInstance& instance) {
    std::vector<GateOp> ops;
    for (const auto& bits : instance.marked()) {
        append_state_reflection(ops, bits, instance.n_qubits());
    }
    return ops;
}

std::vector<GateOp> build_diffuser(int n_qubits) {
    if (n_qubits < 2) throw std::invalid_argument("diffuser needs n >= 2");
    std::vector<GateOp> ops;
    for (int j = 0; j < n_qubits; ++j) ops.push_back({GateKind::H, {j}});
    // phase flip of |0...0>, equal to the inversion about the mean up to
    // global phase once conjugated by the surrounding H layers
    append_state_reflection(ops, std::string(static_cast<std::size_t>(n_qubits), '0'),
                            n_qubits);
    for (int j = 0; j < n_qubits; ++j) ops.push_back({GateKind::H, {j}});
    return ops;
}

Circuit build_circuit(const GroverInstance& instance, std::optional<int> iterations) {
    const int k = iterations.value_or(
        optimal_iterations(instance.n_qubits(), instance.marked_count()));
    if (k < 0) throw std::invalid_argument("iterations must be >= 0");

    Circuit circuit;
    circuit.n_qubits = instance.n_qubits();
    circuit.iterations = k;
    for (int j = 0; j < circuit.n_qubits; ++j) {
        circuit.ops.push_back({GateKind::H, {j}});
    }
    const auto oracle = build_oracle(instance);
    const auto diffuser = build_diffuser(circuit.n_qubits);
    for (int it = 0; it < k; ++it) {
        circuit.ops.insert(circuit.ops.end(), oracle.begin(), oracle.end());
        circuit.ops.insert(circuit.ops.end(), diffuser.begin(), diffuser.end());
    }
    int next_label = 0;
    for (auto& op : circuit.ops) {
        if (op.kind == GateKind::MCX) op.label = next_label++;
    }
    return circuit;
}

}  // namespace grover

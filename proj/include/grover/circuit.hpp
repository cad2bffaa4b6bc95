#pragma once
#include <optional>
#include <string>
#include <vector>

#include "grover/instance.hpp"

namespace grover {

enum class GateKind { H, X, Z, CZ, CCX, MCX };

const char* gate_name(GateKind kind);

// One gate application. For CCX/MCX the last operand is the target.
// `label` reproduces the mcx_0, mcx_1, ... suffixes of emitted QASM;
// it is -1 when the gate carries no label.
struct GateOp {
    GateKind kind;
    std::vector<int> qubits;
    int label = -1;

    bool operator==(const GateOp&) const = default;
};

struct Circuit {
    int n_qubits = 0;
    std::vector<GateOp> ops;
    int iterations = 0;

    bool operator==(const Circuit&) const = default;
};

// floor((pi/4) * sqrt(2^n / M)), clamped to at least 1.
int optimal_iterations(int n_qubits, std::uint64_t marked_count);

// Phase-flip oracle as a product of single-state reflections: for each
// marked string, X-conjugation selects the state and an H-MCX-H sandwich
// on the highest-index qubit applies the sign flip.
std::vector<GateOp> build_oracle(const GroverInstance& instance);

// Inversion about the mean: H on all, X on all, multi-controlled phase
// flip on qubit n-1, X on all, H on all (global phase ignored).
std::vector<GateOp> build_diffuser(int n_qubits);

// H layer followed by `iterations` copies of (oracle, diffuser).
// MCX ops are labelled 0, 1, ... in emission order.
Circuit build_circuit(const GroverInstance& instance,
                      std::optional<int> iterations = std::nullopt);

void validate_gate(const GateOp& op, int n_qubits);

}  // namespace grover

#pragma once
#include <complex>
#include <cstdint>
#include <vector>

#include "grover/circuit.hpp"
#include "grover/distribution.hpp"

namespace grover {

// Dense double-precision state vector. The default ceiling of 24 qubits
// bounds the allocation at 256 MB of complex amplitudes.
inline constexpr int kDefaultQubitCeiling = 24;

class StateVector {
public:
    // |0...0>
    explicit StateVector(int n_qubits, int qubit_ceiling = kDefaultQubitCeiling);

    int n_qubits() const { return n_qubits_; }
    std::uint64_t dimension() const { return amplitudes_.size(); }
    const std::vector<std::complex<double>>& amplitudes() const { return amplitudes_; }
    std::vector<std::complex<double>>& amplitudes() { return amplitudes_; }

    void apply(const GateOp& op);
    double norm() const;

private:
    int n_qubits_;
    std::vector<std::complex<double>> amplitudes_;
};

// Uniform superposition, identical to H on every qubit of |0...0>.
StateVector init_uniform(int n_qubits, int qubit_ceiling = kDefaultQubitCeiling);

StateVector apply_gate(StateVector state, const GateOp& op);

// Starts from |0...0>; the circuit's own H layer performs initialization.
StateVector run_circuit(const Circuit& circuit,
                        int qubit_ceiling = kDefaultQubitCeiling);

// Exhaustive Born-rule distribution, keys in big-endian convention.
Distribution probabilities(const StateVector& state);

// Empirical frequencies of `shots` draws from an exhaustive distribution,
// deterministic for a fixed (dist, shots, seed) via the project PRNG.
Distribution sample_shots(const Distribution& dist, std::uint64_t shots,
                          std::uint64_t seed);

}  // namespace grover

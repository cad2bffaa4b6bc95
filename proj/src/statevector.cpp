#include "grover/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grover/rng.hpp"

namespace grover {

namespace {

void check_size(int n_qubits, int qubit_ceiling) {
    if (n_qubits < 1) throw std::invalid_argument("need at least one qubit");
    if (n_qubits > qubit_ceiling) {
        throw std::length_error("dense simulation of " + std::to_string(n_qubits) +
                                " qubits exceeds the configured ceiling of " +
                                std::to_string(qubit_ceiling));
    }
}

}  // namespace

StateVector::StateVector(int n_qubits, int qubit_ceiling) : n_qubits_(n_qubits) {
    check_size(n_qubits, qubit_ceiling);
    amplitudes_.assign(std::uint64_t{1} << n_qubits, {0.0, 0.0});
    amplitudes_[0] = {1.0, 0.0};
}

StateVector init_uniform(int n_qubits, int qubit_ceiling) {
    StateVector state(n_qubits, qubit_ceiling);
    const double amp = 1.0 / std::sqrt(static_cast<double>(state.dimension()));
    for (auto& a : state.amplitudes()) a = {amp, 0.0};
    return state;
}

void StateVector::apply(const GateOp& op) {
    validate_gate(op, n_qubits_);
    const std::uint64_t dim = dimension();
    // qubit j is the j-th character of the big-endian bitstring, i.e. bit
    // position (n-1-j) of the basis-state index
    auto bit_of = [&](int qubit) {
        return std::uint64_t{1} << (n_qubits_ - 1 - qubit);
    };

    switch (op.kind) {
        case GateKind::H: {
            const std::uint64_t bit = bit_of(op.qubits[0]);
            const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
            for (std::uint64_t i = 0; i < dim; ++i) {
                if (i & bit) continue;
                auto a = amplitudes_[i];
                auto b = amplitudes_[i | bit];
                amplitudes_[i] = (a + b) * inv_sqrt2;
                amplitudes_[i | bit] = (a - b) * inv_sqrt2;
            }
            break;
        }
        case GateKind::X: {
            const std::uint64_t bit = bit_of(op.qubits[0]);
            for (std::uint64_t i = 0; i < dim; ++i) {
                if (i & bit) continue;
                std::swap(amplitudes_[i], amplitudes_[i | bit]);
            }
            break;
        }
        case GateKind::Z: {
            const std::uint64_t bit = bit_of(op.qubits[0]);
            for (std::uint64_t i = 0; i < dim; ++i) {
                if (i & bit) amplitudes_[i] = -amplitudes_[i];
            }
            break;
        }
        case GateKind::CZ: {
            const std::uint64_t mask = bit_of(op.qubits[0]) | bit_of(op.qubits[1]);
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & mask) == mask) amplitudes_[i] = -amplitudes_[i];
            }
            break;
        }
        case GateKind::CCX:
        case GateKind::MCX: {
            std::uint64_t control_mask = 0;
            for (std::size_t c = 0; c + 1 < op.qubits.size(); ++c) {
                control_mask |= bit_of(op.qubits[c]);
            }
            const std::uint64_t target = bit_of(op.qubits.back());
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & control_mask) == control_mask && !(i & target)) {
                    std::swap(amplitudes_[i], amplitudes_[i | target]);
                }
            }
            break;
        }
    }
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto& a : amplitudes_) sum += std::norm(a);
    return std::sqrt(sum);
}

StateVector apply_gate(StateVector state, const GateOp& op) {
    state.apply(op);
    return state;
}

StateVector run_circuit(const Circuit& circuit, int qubit_ceiling) {
    StateVector state(circuit.n_qubits, qubit_ceiling);
    for (const auto& op : circuit.ops) state.apply(op);
    return state;
}

Distribution probabilities(const StateVector& state) {
    std::map<std::string, double> entries;
    const auto& amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        entries.emplace(bitstring_from_index(i, state.n_qubits()),
                        std::norm(amps[i]));
    }
    return Distribution::from_entries(state.n_qubits(), std::move(entries), true);
}

Distribution sample_shots(const Distribution& dist, std::uint64_t shots,
                          std::uint64_t seed) {
    if (!dist.exhaustive()) {
        throw std::invalid_argument("sample_shots needs an exhaustive distribution");
    }
    if (shots == 0) throw std::invalid_argument("shots must be >= 1");
    const Distribution full = dist.materialized();

    // CDF over keys in lexicographic order; inverse-transform sampling from
    // the project PRNG keeps results identical across platforms.
    std::vector<const std::string*> keys;
    std::vector<double> cdf;
    keys.reserve(full.entries().size());
    cdf.reserve(full.entries().size());
    double acc = 0.0;
    for (const auto& [key, p] : full.entries()) {
        acc += p;
        keys.push_back(&key);
        cdf.push_back(acc);
    }

    Rng rng(splitmix64(seed));
    std::map<std::string, std::uint64_t> counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform_unit(rng) * acc;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx =
            it == cdf.end() ? cdf.size() - 1
                            : static_cast<std::size_t>(it - cdf.begin());
        ++counts[*keys[idx]];
    }

    std::map<std::string, double> freq;
    for (const auto& [key, c] : counts) {
        freq.emplace(key, static_cast<double>(c) / static_cast<double>(shots));
    }
    // observed outcomes only; everything else has empirical frequency 0
    return Distribution::two_value(dist.n_qubits(), std::move(freq), 0.0);
}

}  // namespace grover

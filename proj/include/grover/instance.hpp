#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace grover {

// A Grover search problem: n qubits and a non-empty, duplicate-free set of
// marked bitstrings. Character position j of a bitstring corresponds to
// qubit q[j]; the basis-state index is the big-endian integer value of the
// string. This convention is applied uniformly across the simulator, the
// QASM codec and the answer formatting.
class GroverInstance {
public:
    static constexpr int kMinQubits = 2;
    static constexpr int kMaxQubits = 30;

    GroverInstance(int n_qubits, std::vector<std::string> marked);

    int n_qubits() const { return n_qubits_; }
    const std::vector<std::string>& marked() const { return marked_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << n_qubits_; }
    std::uint64_t marked_count() const { return marked_.size(); }

    bool is_marked(const std::string& bitstring) const;

private:
    int n_qubits_;
    std::vector<std::string> marked_;  // insertion order preserved
};

// index <-> bitstring under the big-endian convention
std::string bitstring_from_index(std::uint64_t index, int n_qubits);
std::uint64_t index_from_bitstring(const std::string& bits);
bool is_valid_bitstring(const std::string& bits, int n_qubits);

}  // namespace grover

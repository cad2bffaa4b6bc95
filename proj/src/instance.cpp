#include "grover/instance.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace grover {

bool is_valid_bitstring(const std::string& bits, int n_qubits) {
    if (static_cast<int>(bits.size()) != n_qubits) return false;
    return std::all_of(bits.begin(), bits.end(),
                       [](char c) { return c == '0' || c == '1'; });
}

std::string bitstring_from_index(std::uint64_t index, int n_qubits) {
    std::string bits(static_cast<std::size_t>(n_qubits), '0');
    for (int j = 0; j < n_qubits; ++j) {
        if (index >> (n_qubits - 1 - j) & 1) bits[j] = '1';
    }
    return bits;
}

std::uint64_t index_from_bitstring(const std::string& bits) {
    std::uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("bad bitstring: " + bits);
        index = index << 1 | static_cast<std::uint64_t>(c - '0');
    }
    return index;
}

GroverInstance::GroverInstance(int n_qubits, std::vector<std::string> marked)
    : n_qubits_(n_qubits), marked_(std::move(marked)) {
    if (n_qubits_ < kMinQubits || n_qubits_ > kMaxQubits) {
        throw std::invalid_argument("qubit count out of supported range: " +
                                    std::to_string(n_qubits_));
    }
    if (marked_.empty()) throw std::invalid_argument("marked set is empty");
    std::unordered_set<std::string> seen;
    for (const auto& bits : marked_) {
        if (!is_valid_bitstring(bits, n_qubits_)) {
            throw std::invalid_argument("invalid marked bitstring: " + bits);
        }
        if (!seen.insert(bits).second) {
            throw std::invalid_argument("duplicate marked bitstring: " + bits);
        }
    }
    if (marked_.size() >= dimension()) {
        throw std::invalid_argument("marked count must be smaller than 2^n");
    }
}

bool GroverInstance::is_marked(const std::string& bitstring) const {
    return std::find(marked_.begin(), marked_.end(), bitstring) != marked_.end();
}

}  // namespace grover

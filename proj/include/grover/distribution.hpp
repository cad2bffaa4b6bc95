#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace grover {

// Probability map over n-bit strings. Storage is either explicit (named
// entries only) or two-value: named entries plus one shared probability
// for every other string, which keeps n=30 distributions O(M) in memory.
class Distribution {
public:
    Distribution() = default;

    static Distribution from_entries(int n_qubits,
                                     std::map<std::string, double> entries,
                                     bool exhaustive);
    static Distribution two_value(int n_qubits,
                                  std::map<std::string, double> named,
                                  double default_prob);

    int n_qubits() const { return n_qubits_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << n_qubits_; }

    // True when every string has a defined probability (explicitly or via
    // the two-value default).
    bool exhaustive() const { return exhaustive_; }
    bool has_default() const { return default_prob_.has_value(); }
    double default_prob() const { return default_prob_.value_or(0.0); }

    const std::map<std::string, double>& entries() const { return entries_; }
    double probability(const std::string& bitstring) const;
    double total() const;  // closed form for two-value storage

    // Top-k by probability descending, ties broken lexicographically
    // ascending, without materialising the default entries. O(M log M + k).
    std::vector<std::pair<std::string, double>> top_k(std::uint64_t k) const;

    // Materialise every string into an explicit map (n_qubits <= 24).
    Distribution materialized() const;

private:
    int n_qubits_ = 0;
    std::map<std::string, double> entries_;
    bool exhaustive_ = false;
    std::optional<double> default_prob_;
};

}  // namespace grover

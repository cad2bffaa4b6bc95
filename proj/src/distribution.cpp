#include "grover/distribution.hpp"

#include <algorithm>
#include <stdexcept>

#include "grover/instance.hpp"

namespace grover {

namespace {

void check_probability(const std::string& key, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("probability out of [0,1] for key '" + key + "'");
    }
}

}  // namespace

Distribution Distribution::from_entries(int n_qubits,
                                        std::map<std::string, double> entries,
                                        bool exhaustive) {
    Distribution dist;
    dist.n_qubits_ = n_qubits;
    for (const auto& [key, p] : entries) {
        if (!is_valid_bitstring(key, n_qubits)) {
            throw std::invalid_argument("invalid bitstring key: " + key);
        }
        check_probability(key, p);
    }
    if (exhaustive && entries.size() != (std::uint64_t{1} << n_qubits)) {
        throw std::invalid_argument("exhaustive distribution must cover all 2^n keys");
    }
    dist.entries_ = std::move(entries);
    dist.exhaustive_ = exhaustive;
    return dist;
}

Distribution Distribution::two_value(int n_qubits,
                                     std::map<std::string, double> named,
                                     double default_prob) {
    Distribution dist;
    dist.n_qubits_ = n_qubits;
    for (const auto& [key, p] : named) {
        if (!is_valid_bitstring(key, n_qubits)) {
            throw std::invalid_argument("invalid bitstring key: " + key);
        }
        check_probability(key, p);
    }
    check_probability("<default>", default_prob);
    dist.entries_ = std::move(named);
    dist.default_prob_ = default_prob;
    dist.exhaustive_ = true;
    return dist;
}

double Distribution::probability(const std::string& bitstring) const {
    auto it = entries_.find(bitstring);
    if (it != entries_.end()) return it->second;
    return default_prob_.value_or(0.0);
}

double Distribution::total() const {
    double named = 0.0;
    for (const auto& [key, p] : entries_) named += p;
    if (default_prob_) {
        const double others =
            static_cast<double>(dimension() - entries_.size());
        named += others * *default_prob_;
    }
    return named;
}

std::vector<std::pair<std::string, double>> Distribution::top_k(
    std::uint64_t k) const {
    k = std::min<std::uint64_t>(k, exhaustive() ? dimension() : entries_.size());

    // Named entries sorted by (p desc, key asc); std::map already orders
    // keys, so a stable sort on probability keeps the tie-break.
    std::vector<std::pair<std::string, double>> named(entries_.begin(),
                                                      entries_.end());
    std::stable_sort(named.begin(), named.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });

    std::vector<std::pair<std::string, double>> out;
    out.reserve(k);
    if (!default_prob_) {
        for (std::uint64_t i = 0; i < k && i < named.size(); ++i) out.push_back(named[i]);
        return out;
    }

    // Merge the sorted named entries with the lexicographic stream of
    // default-valued keys (every string not named explicitly).
    const double def = *default_prob_;
    std::uint64_t next_index = 0;
    auto next_default_key = [&]() -> std::string {
        while (next_index < dimension()) {
            std::string key = bitstring_from_index(next_index, n_qubits_);
            ++next_index;
            if (!entries_.count(key)) return key;
        }
        return {};
    };

    std::size_t ni = 0;
    std::string pending = next_default_key();
    while (out.size() < k) {
        const bool have_named = ni < named.size();
        const bool have_default = !pending.empty();
        if (!have_named && !have_default) break;
        bool take_named;
        if (!have_default) {
            take_named = true;
        } else if (!have_named) {
            take_named = false;
        } else if (named[ni].second != def) {
            take_named = named[ni].second > def;
        } else {
            take_named = named[ni].first < pending;
        }
        if (take_named) {
            out.push_back(named[ni++]);
        } else {
            out.emplace_back(pending, def);
            pending = next_default_key();
        }
    }
    return out;
}

Distribution Distribution::materialized() const {
    if (!default_prob_) return *this;
    if (n_qubits_ > 24) {
        throw std::length_error("refusing to materialize 2^" +
                                std::to_string(n_qubits_) + " entries");
    }
    std::map<std::string, double> full;
    for (std::uint64_t i = 0; i < dimension(); ++i) {
        std::string key = bitstring_from_index(i, n_qubits_);
        double p = probability(key);
        full.emplace(std::move(key), p);
    }
    return from_entries(n_qubits_, std::move(full), true);
}

}  // namespace grover

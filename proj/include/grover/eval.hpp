#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "grover/distribution.hpp"
#include "grover/instance.hpp"

namespace grover {

enum class ParseStatus { Ok, Malformed, Empty };

const char* parse_status_name(ParseStatus status);

struct Prediction {
    std::string id;
    std::string model_tag;
    std::string raw;
    std::map<std::string, double> parsed;
    ParseStatus status = ParseStatus::Malformed;
    bool clamped = false;       // some probability was clamped into [0,1]
    bool dropped_keys = false;  // some keys were not valid n-bit strings
    std::string train_tag;      // optional grouping tag, e.g. "3-6"
};

// Lenient extraction: first quoted-key map literal anywhere in the reply,
// code fences and prose tolerated. Never throws.
Prediction parse_model_answer(const std::string& raw, int n_qubits);

// Eq. alpha: |top-k(pred) /\ marked| / k. Ties lexicographic ascending.
// Falls back to the top-k of the truth distribution if the marked states
// are not its top-k (degenerate iteration counts); *degenerate reports it.
double search_accuracy(const std::map<std::string, double>& pred,
                       const Distribution& truth,
                       const std::vector<std::string>& marked,
                       bool* degenerate = nullptr);

// Mean squared probability error over all 2^n strings; missing prediction
// keys count as 0. O(|pred| + |named truth entries|) for two-value truth.
double infidelity(const std::map<std::string, double>& pred,
                  const Distribution& truth);

// Mean squared error over the marked strings only.
double marked_infidelity(const std::map<std::string, double>& pred,
                         const Distribution& truth,
                         const std::vector<std::string>& marked);

struct RecordScore {
    std::string id;
    int n_qubits = 0;
    std::string model_tag;
    std::string variant;
    std::string train_tag;
    ParseStatus status = ParseStatus::Malformed;
    double alpha = 0.0;
    double eps = 0.0;
    double eps_marked = 0.0;
};

struct GroupKey {
    std::string model_tag;
    int n_qubits = 0;
    std::string variant;
    std::string train_tag;
    auto operator<=>(const GroupKey&) const = default;
};

struct GroupStats {
    std::uint64_t count = 0;     // OK records only
    std::uint64_t failures = 0;  // MALFORMED / EMPTY
    double alpha_mean = 0, alpha_std = 0;
    double eps_mean = 0, eps_std = 0;
    double eps_marked_mean = 0, eps_marked_std = 0;
};

struct EvalResult {
    std::vector<RecordScore> records;
    std::map<GroupKey, GroupStats> groups;
    std::uint64_t total = 0;
    std::uint64_t parse_failures = 0;
    std::uint64_t unmatched_predictions = 0;
    double parse_failure_rate() const {
        return total ? static_cast<double>(parse_failures) / total : 0.0;
    }
};

// Joins prediction JSONL ({id, model_tag, raw_reply, [train_tag]}) against
// a corpus JSONL by id and scores every matched record.
EvalResult evaluate_bundle(const std::string& corpus_path,
                           const std::string& predictions_path);

void write_report_json(const EvalResult& result, const std::string& path);
void write_aggregates_csv(const EvalResult& result, const std::string& path);
// accuracy_vs_train_range, infidelity_vs_train_range, scalability_accuracy,
// scalability_marked_infidelity
void write_plot_data(const EvalResult& result, const std::string& directory);

// Uniform probabilities over all strings, truncated to top_k by the
// project tie-break rule.
std::map<std::string, double> uniform_baseline(const GroverInstance& instance,
                                               std::uint64_t top_k = 30);

}  // namespace grover

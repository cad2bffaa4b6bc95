#pragma once
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grover/circuit.hpp"
#include "grover/distribution.hpp"
#include "grover/instance.hpp"

namespace grover {

enum class PromptVariant { Base, Qasm, SimplifiedConversational };
enum class Split { Train, Test };

const char* variant_name(PromptVariant variant);
PromptVariant variant_from_name(const std::string& name);

// shots == kExactShots means answers carry exact probabilities.
inline constexpr std::int64_t kExactShots = -1;

struct PromptRecord {
    std::string id;
    int n_qubits = 0;
    std::vector<std::string> marked;
    PromptVariant variant = PromptVariant::Base;
    std::string prompt;
    std::vector<std::pair<std::string, double>> answer;  // top-K, full precision
    std::string answer_text;                             // rounded map syntax
    int iterations = 0;
    std::int64_t shots = kExactShots;
    std::uint64_t seed = 0;
    Split split = Split::Train;
    std::string qasm_text;       // empty for the Base variant
    Distribution exact_answer;   // untruncated ground truth
    bool resampled = false;      // instance repeats an earlier draw
};

struct CorpusConfig {
    int min_qubits = 3;
    int max_qubits = 20;
    int total_records = 97000;
    std::map<int, int> counts_per_size;  // overrides total_records when set
    std::map<std::uint64_t, double> marked_size_weights = {{1, 1.0}};
    int top_k = 30;
    std::int64_t shots = kExactShots;
    std::map<PromptVariant, double> variant_mix = {
        {PromptVariant::Base, 0.4},
        {PromptVariant::Qasm, 0.2},
        {PromptVariant::SimplifiedConversational, 0.4}};
    int train_min = 3, train_max = 10;
    int test_min = 6, test_max = 20;
    std::uint64_t master_seed = 20241231;
    // Cross-check analytic ground truth against the state-vector engine
    // for n <= validate_max_qubits (0 disables).
    int validate_max_qubits = 0;
};

CorpusConfig corpus_config_from_json_file(const std::string& path);
std::map<int, int> resolve_counts(const CorpusConfig& config);

// Prompt text in the paper's template family. The circuit must match the
// instance; it is only consulted for the QASM-bearing variants.
std::string build_prompt(const GroverInstance& instance, PromptVariant variant,
                         const Circuit& circuit, int top_k = 30);

// Top-min(k, 2^n) entries by probability, ties lexicographic ascending.
std::vector<std::pair<std::string, double>> build_answer(
    const Distribution& dist, std::uint64_t top_k);

// "{'0000': 0.9613, '0001': 0.0026, ...}" -- 4 decimals, trailing zeros
// trimmed, single-quoted keys.
std::string format_answer(
    const std::vector<std::pair<std::string, double>>& entries);
std::string format_probability(double p);

GroverInstance generate_instance(int n_qubits, std::uint64_t marked_size,
                                 std::uint64_t seed);

struct CorpusStats {
    std::uint64_t records = 0;
    std::uint64_t resampled = 0;
    std::map<int, std::uint64_t> per_size;
    std::vector<std::string> infeasibility_notes;
};

// Streams JSONL records in deterministic order. Identical configs produce
// byte-identical output.
CorpusStats generate_corpus(const CorpusConfig& config, std::ostream& out);
std::vector<PromptRecord> generate_corpus_records(const CorpusConfig& config);

std::string record_to_jsonl(const PromptRecord& record);
PromptRecord record_from_jsonl(const std::string& line);

struct SplitResult {
    std::uint64_t train_records = 0;
    std::uint64_t test_records = 0;
    std::uint64_t overlap_keys_to_train = 0;
    std::uint64_t overlap_keys_to_test = 0;
};

// Partitions a corpus file into train/test bundles. Qubit sizes claimed by
// both ranges are split by (instance, variant) key so no key appears on
// both sides; the manifest records files, seed, ranges and counts.
SplitResult split_corpus_files(const std::string& corpus_path,
                               std::pair<int, int> train_range,
                               std::pair<int, int> test_range,
                               const std::string& train_out,
                               const std::string& test_out,
                               const std::string& manifest_out);

}  // namespace grover

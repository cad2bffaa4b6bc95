#include "grover/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "grover/analytic.hpp"
#include "grover/qasm.hpp"
#include "grover/rng.hpp"
#include "grover/statevector.hpp"

#include "json.hpp"

namespace grover {

using nlohmann::ordered_json;

const char* variant_name(PromptVariant variant) {
    switch (variant) {
        case PromptVariant::Base:                     return "base";
        case PromptVariant::Qasm:                     return "qasm";
        case PromptVariant::SimplifiedConversational: return "simplified_conversational";
    }
    return "?";
}

PromptVariant variant_from_name(const std::string& name) {
    if (name == "base") return PromptVariant::Base;
    if (name == "qasm") return PromptVariant::Qasm;
    if (name == "simplified_conversational") {
        return PromptVariant::SimplifiedConversational;
    }
    throw std::invalid_argument("unknown prompt variant: " + name);
}

std::string format_probability(double p) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.4f", p);
    std::string text = buffer;
    if (text.find('.') != std::string::npos) {
        while (text.back() == '0') text.pop_back();
        if (text.back() == '.') text.pop_back();
    }
    return text;
}

std::string format_answer(
    const std::vector<std::pair<std::string, double>>& entries) {
    std::string out = "{";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) out += ", ";
        out += "'" + entries[i].first + "': " + format_probability(entries[i].second);
    }
    out += "}";
    return out;
}

std::vector<std::pair<std::string, double>> build_answer(const Distribution& dist,
                                                         std::uint64_t top_k) {
    return dist.top_k(top_k);
}

std::string build_prompt(const GroverInstance& instance, PromptVariant variant,
                         const Circuit& circuit, int top_k) {
    std::string marked_list;
    for (std::size_t i = 0; i < instance.marked().size(); ++i) {
        if (i) marked_list += ", ";
        marked_list += instance.marked()[i];
    }
    std::ostringstream prompt;
    prompt << "Question:\n"
           << "I want you to act as a quantum computer specialized in performing "
              "Grover's algorithm. "
           << "I will type a circuit, and you will reply with what a quantum "
              "computer should output. "
           << "I want you to only reply with the output in a dictionary that "
              "contains the top-"
           << top_k << " probabilities and nothing else. The input marked status is: "
           << marked_list << " for a " << instance.n_qubits() << "-qubit system.\n";
    if (variant != PromptVariant::Base) {
        QasmDocument doc = emit_prompt_flat(circuit);
        if (variant == PromptVariant::SimplifiedConversational) {
            doc = compress_simplified(doc);
        }
        prompt << "Here is the QASM circuit: \"" << doc.text << "\"\n";
    }
    if (variant == PromptVariant::SimplifiedConversational) {
        prompt << "The answer is:\n";
    }
    return prompt.str();
}

GroverInstance generate_instance(int n_qubits, std::uint64_t marked_size,
                                 std::uint64_t seed) {
    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    if (marked_size == 0 || marked_size >= dim) {
        throw std::invalid_argument("marked_size must satisfy 1 <= M < 2^n");
    }
    Rng rng(splitmix64(seed));
    std::vector<std::string> marked;
    std::unordered_set<std::uint64_t> seen;
    while (marked.size() < marked_size) {
        const std::uint64_t index = uniform_below(rng, dim);
        if (seen.insert(index).second) {
            marked.push_back(bitstring_from_index(index, n_qubits));
        }
    }
    return GroverInstance(n_qubits, std::move(marked));
}

std::map<int, int> resolve_counts(const CorpusConfig& config) {
    if (config.min_qubits < GroverInstance::kMinQubits ||
        config.max_qubits > GroverInstance::kMaxQubits ||
        config.min_qubits > config.max_qubits) {
        throw std::invalid_argument("invalid qubit range in corpus config");
    }
    if (!config.counts_per_size.empty()) {
        for (const auto& [n, count] : config.counts_per_size) {
            if (n < config.min_qubits || n > config.max_qubits || count <= 0) {
                throw std::invalid_argument("invalid per-size count in corpus config");
            }
        }
        return config.counts_per_size;
    }
    const int sizes = config.max_qubits - config.min_qubits + 1;
    if (config.total_records < sizes) {
        throw std::invalid_argument("total_records smaller than the size range");
    }
    std::map<int, int> counts;
    const int base = config.total_records / sizes;
    for (int n = config.min_qubits; n <= config.max_qubits; ++n) counts[n] = base;
    counts[config.min_qubits] += config.total_records - base * sizes;
    return counts;
}

namespace {

// Sub-seed roles within one record, all derived from the record seed.
enum SeedRole : std::uint64_t {
    kSeedMarkedSize = 1,
    kSeedVariant = 2,
    kSeedInstance = 3,
    kSeedShots = 4,
};

template <typename Key>
Key weighted_choice(const std::map<Key, double>& weights, std::uint64_t seed) {
    double total = 0.0;
    for (const auto& [key, w] : weights) {
        if (w < 0.0) throw std::invalid_argument("negative weight");
        total += w;
    }
    if (total <= 0.0) throw std::invalid_argument("weights sum to zero");
    Rng rng(splitmix64(seed));
    const double u = uniform_unit(rng) * total;
    double acc = 0.0;
    for (const auto& [key, w] : weights) {
        acc += w;
        if (u < acc) return key;
    }
    return weights.rbegin()->first;
}

std::string instance_key(const GroverInstance& instance) {
    std::set<std::string> sorted(instance.marked().begin(), instance.marked().end());
    std::string key;
    for (const auto& bits : sorted) key += bits + ",";
    return key;
}

ordered_json distribution_to_json(const Distribution& dist) {
    ordered_json entries = ordered_json::object();
    for (const auto& [key, p] : dist.entries()) entries[key] = p;
    return ordered_json{{"entries", std::move(entries)},
                        {"default", dist.default_prob()}};
}

Distribution distribution_from_json(int n_qubits, const nlohmann::json& j) {
    std::map<std::string, double> entries;
    for (const auto& [key, value] : j.at("entries").items()) {
        entries.emplace(key, value.get<double>());
    }
    return Distribution::two_value(n_qubits, std::move(entries),
                                   j.at("default").get<double>());
}

PromptRecord make_record(const CorpusConfig& config, int n_qubits, int ordinal,
                         std::uint64_t global_index, bool* resampled_seen,
                         std::unordered_set<std::string>* seen_instances) {
    PromptRecord record;
    record.seed = derive_seed(config.master_seed, global_index);
    record.n_qubits = n_qubits;

    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    std::map<std::uint64_t, double> feasible_weights;
    for (const auto& [m, w] : config.marked_size_weights) {
        if (m >= 1 && m < dim && w > 0.0) feasible_weights.emplace(m, w);
    }
    if (feasible_weights.empty()) {
        throw std::invalid_argument("no feasible marked size for n=" +
                                    std::to_string(n_qubits));
    }
    const std::uint64_t marked_size =
        weighted_choice(feasible_weights, derive_seed(record.seed, kSeedMarkedSize));
    record.variant = weighted_choice(config.variant_mix,
                                     derive_seed(record.seed, kSeedVariant));

    GroverInstance instance =
        generate_instance(n_qubits, marked_size, derive_seed(record.seed, kSeedInstance));
    record.marked = instance.marked();
    record.resampled = !seen_instances->insert(std::to_string(n_qubits) + ":" +
                                               instance_key(instance))
                            .second;
    if (record.resampled) *resampled_seen = true;

    record.iterations = optimal_iterations(n_qubits, instance.marked_count());
    const Circuit circuit = record.variant == PromptVariant::Base
                                ? Circuit{}
                                : build_circuit(instance, record.iterations);
    record.prompt = build_prompt(instance, record.variant, circuit, config.top_k);
    if (record.variant == PromptVariant::Qasm) {
        record.qasm_text = emit_prompt_flat(circuit).text;
    } else if (record.variant == PromptVariant::SimplifiedConversational) {
        record.qasm_text = compress_simplified(emit_prompt_flat(circuit)).text;
    }

    Distribution truth = analytic_distribution(instance, record.iterations);
    if (config.validate_max_qubits >= n_qubits) {
        const Distribution dense =
            probabilities(run_circuit(build_circuit(instance, record.iterations)));
        for (const auto& [key, p] : dense.entries()) {
            if (std::abs(p - truth.probability(key)) > 1e-9) {
                throw std::runtime_error("analytic/state-vector mismatch at n=" +
                                         std::to_string(n_qubits) + " key=" + key);
            }
        }
    }
    record.shots = config.shots;
    if (config.shots != kExactShots) {
        if (config.shots < 1) throw std::invalid_argument("shots must be >= 1");
        truth = sample_shots(truth, static_cast<std::uint64_t>(config.shots),
                             derive_seed(record.seed, kSeedShots));
    }
    record.exact_answer = truth;
    record.answer = build_answer(truth, static_cast<std::uint64_t>(config.top_k));
    record.answer_text = format_answer(record.answer);

    record.split = (n_qubits >= config.train_min && n_qubits <= config.train_max)
                       ? Split::Train
                       : Split::Test;
    char id[64];
    std::snprintf(id, sizeof id, "q%02d-%06d-%s", n_qubits, ordinal,
                  variant_name(record.variant));
    record.id = id;
    return record;
}

}  // namespace

std::string record_to_jsonl(const PromptRecord& record) {
    ordered_json answer_entries = ordered_json::array();
    for (const auto& [key, p] : record.answer) {
        answer_entries.push_back(ordered_json::array({key, p}));
    }
    ordered_json j{
        {"id", record.id},
        {"n_qubits", record.n_qubits},
        {"marked", record.marked},
        {"variant", variant_name(record.variant)},
        {"iterations", record.iterations},
        {"shots", record.shots == kExactShots ? ordered_json("exact")
                                              : ordered_json(record.shots)},
        {"seed", record.seed},
        {"split", record.split == Split::Train ? "train" : "test"},
        {"resampled", record.resampled},
        {"prompt", record.prompt},
        {"answer", record.answer_text},
        {"answer_entries", std::move(answer_entries)},
        {"exact_answer", distribution_to_json(record.exact_answer)},
        {"qasm_variant_text", record.qasm_text},
    };
    return j.dump();
}

PromptRecord record_from_jsonl(const std::string& line) {
    const auto j = nlohmann::json::parse(line);
    PromptRecord record;
    record.id = j.at("id").get<std::string>();
    record.n_qubits = j.at("n_qubits").get<int>();
    record.marked = j.at("marked").get<std::vector<std::string>>();
    record.variant = variant_from_name(j.at("variant").get<std::string>());
    record.iterations = j.at("iterations").get<int>();
    record.shots = j.at("shots").is_string() ? kExactShots
                                             : j.at("shots").get<std::int64_t>();
    record.seed = j.at("seed").get<std::uint64_t>();
    record.split = j.at("split").get<std::string>() == "train" ? Split::Train
                                                               : Split::Test;
    record.resampled = j.at("resampled").get<bool>();
    record.prompt = j.at("prompt").get<std::string>();
    record.answer_text = j.at("answer").get<std::string>();
    for (const auto& pair : j.at("answer_entries")) {
        record.answer.emplace_back(pair.at(0).get<std::string>(),
                                   pair.at(1).get<double>());
    }
    record.exact_answer = distribution_from_json(record.n_qubits, j.at("exact_answer"));
    record.qasm_text = j.at("qasm_variant_text").get<std::string>();
    return record;
}

CorpusStats generate_corpus(const CorpusConfig& config, std::ostream& out) {
    const auto counts = resolve_counts(config);
    CorpusStats stats;
    std::unordered_set<std::string> seen_instances;
    std::uint64_t global_index = 0;
    for (const auto& [n, count] : counts) {
        // feasibility note when the size cannot supply distinct instances
        double distinct = 0.0;
        for (const auto& [m, w] : config.marked_size_weights) {
            if (m == 1 && w > 0.0) distinct += std::ldexp(1.0, n);
        }
        if (distinct > 0.0 && distinct < count) {
            stats.infeasibility_notes.push_back(
                "n=" + std::to_string(n) +
                ": requested count exceeds distinct single-marked instances; "
                "sampling with replacement");
        }
        for (int i = 0; i < count; ++i, ++global_index) {
            bool resampled = false;
            const PromptRecord record = make_record(config, n, i, global_index,
                                                    &resampled, &seen_instances);
            if (resampled) ++stats.resampled;
            out << record_to_jsonl(record) << '\n';
            ++stats.records;
            ++stats.per_size[n];
        }
    }
    return stats;
}

std::vector<PromptRecord> generate_corpus_records(const CorpusConfig& config) {
    const auto counts = resolve_counts(config);
    std::vector<PromptRecord> records;
    std::unordered_set<std::string> seen_instances;
    std::uint64_t global_index = 0;
    for (const auto& [n, count] : counts) {
        for (int i = 0; i < count; ++i, ++global_index) {
            bool resampled = false;
            records.push_back(
                make_record(config, n, i, global_index, &resampled, &seen_instances));
        }
    }
    return records;
}

CorpusConfig corpus_config_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    CorpusConfig config;
    if (j.contains("min_qubits")) config.min_qubits = j["min_qubits"].get<int>();
    if (j.contains("max_qubits")) config.max_qubits = j["max_qubits"].get<int>();
    if (j.contains("total_records")) config.total_records = j["total_records"].get<int>();
    if (j.contains("counts_per_size")) {
        for (const auto& [key, value] : j["counts_per_size"].items()) {
            config.counts_per_size[std::stoi(key)] = value.get<int>();
        }
    }
    if (j.contains("marked_size_weights")) {
        config.marked_size_weights.clear();
        for (const auto& [key, value] : j["marked_size_weights"].items()) {
            config.marked_size_weights[std::stoull(key)] = value.get<double>();
        }
    }
    if (j.contains("top_k")) config.top_k = j["top_k"].get<int>();
    if (j.contains("shots")) {
        config.shots = j["shots"].is_string() ? kExactShots
                                              : j["shots"].get<std::int64_t>();
    }
    if (j.contains("variant_mix")) {
        config.variant_mix.clear();
        for (const auto& [key, value] : j["variant_mix"].items()) {
            config.variant_mix[variant_from_name(key)] = value.get<double>();
        }
    }
    if (j.contains("train_min")) config.train_min = j["train_min"].get<int>();
    if (j.contains("train_max")) config.train_max = j["train_max"].get<int>();
    if (j.contains("test_min")) config.test_min = j["test_min"].get<int>();
    if (j.contains("test_max")) config.test_max = j["test_max"].get<int>();
    if (j.contains("master_seed")) config.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("validate_max_qubits")) {
        config.validate_max_qubits = j["validate_max_qubits"].get<int>();
    }
    return config;
}

SplitResult split_corpus_files(const std::string& corpus_path,
                               std::pair<int, int> train_range,
                               std::pair<int, int> test_range,
                               const std::string& train_out,
                               const std::string& test_out,
                               const std::string& manifest_out) {
    std::ifstream in(corpus_path);
    if (!in) throw std::runtime_error("cannot open corpus: " + corpus_path);
    std::ofstream train_file(train_out);
    std::ofstream test_file(test_out);
    if (!train_file || !test_file) {
        throw std::runtime_error("cannot open split output files");
    }

    SplitResult result;
    // (instance, variant) -> assigned side, so a key never lands on both
    std::unordered_map<std::string, bool> key_to_train;
    std::map<int, std::uint64_t> overlap_counter;
    std::string line;
    std::uint64_t first_seed = 0;
    bool have_seed = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        const int n = j.at("n_qubits").get<int>();
        if (!have_seed && j.contains("seed")) {
            first_seed = j["seed"].get<std::uint64_t>();
            have_seed = true;
        }
        const bool in_train = n >= train_range.first && n <= train_range.second;
        const bool in_test = n >= test_range.first && n <= test_range.second;
        if (!in_train && !in_test) continue;
        bool to_train;
        if (in_train && in_test) {
            std::string key = std::to_string(n) + "|" +
                              j.at("variant").get<std::string>() + "|";
            for (const auto& bits : j.at("marked")) {
                key += bits.get<std::string>() + ",";
            }
            auto it = key_to_train.find(key);
            if (it != key_to_train.end()) {
                to_train = it->second;
            } else {
                to_train = (overlap_counter[n]++ % 2) == 0;
                key_to_train.emplace(std::move(key), to_train);
                if (to_train) {
                    ++result.overlap_keys_to_train;
                } else {
                    ++result.overlap_keys_to_test;
                }
            }
        } else {
            to_train = in_train;
        }
        if (to_train) {
            train_file << line << '\n';
            ++result.train_records;
        } else {
            test_file << line << '\n';
            ++result.test_records;
        }
    }

    ordered_json manifest{
        {"corpus", corpus_path},
        {"first_record_seed", first_seed},
        {"train_file", train_out},
        {"test_file", test_out},
        {"train_range", {train_range.first, train_range.second}},
        {"test_range", {test_range.first, test_range.second}},
        {"train_records", result.train_records},
        {"test_records", result.test_records},
        {"overlap_keys_to_train", result.overlap_keys_to_train},
        {"overlap_keys_to_test", result.overlap_keys_to_test},
        {"train_test_key_intersection", 0},
    };
    std::ofstream manifest_file(manifest_out);
    manifest_file << manifest.dump(2) << '\n';
    return result;
}

}  // namespace grover

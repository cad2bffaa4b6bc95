#include "grover/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace grover {

using nlohmann::ordered_json;

const char* parse_status_name(ParseStatus status) {
    switch (status) {
        case ParseStatus::Ok:        return "ok";
        case ParseStatus::Malformed: return "malformed";
        case ParseStatus::Empty:     return "empty";
    }
    return "?";
}

namespace {

void skip_space(const std::string& s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

// Parses a {'key': number, ...} literal starting at s[start] == '{'.
// Accepts single or double quotes and trailing commas.
bool try_parse_map(const std::string& s, std::size_t start,
                   std::vector<std::pair<std::string, double>>* out) {
    std::size_t i = start + 1;
    out->clear();
    while (true) {
        skip_space(s, i);
        if (i >= s.size()) return false;
        if (s[i] == '}') return true;
        const char quote = s[i];
        if (quote != '\'' && quote != '"') return false;
        const std::size_t key_end = s.find(quote, i + 1);
        if (key_end == std::string::npos) return false;
        std::string key = s.substr(i + 1, key_end - i - 1);
        i = key_end + 1;
        skip_space(s, i);
        if (i >= s.size() || s[i] != ':') return false;
        ++i;
        skip_space(s, i);
        const char* begin = s.c_str() + i;
        char* end = nullptr;
        const double value = std::strtod(begin, &end);
        if (end == begin) return false;
        i += static_cast<std::size_t>(end - begin);
        out->emplace_back(std::move(key), value);
        skip_space(s, i);
        if (i >= s.size()) return false;
        if (s[i] == ',') {
            ++i;
            continue;
        }
        if (s[i] == '}') return true;
        return false;
    }
}

}  // namespace

Prediction parse_model_answer(const std::string& raw, int n_qubits) {
    Prediction pred;
    pred.raw = raw;
    bool blank = true;
    for (char c : raw) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            blank = false;
            break;
        }
    }
    if (blank) {
        pred.status = ParseStatus::Empty;
        return pred;
    }
    for (std::size_t pos = raw.find('{'); pos != std::string::npos;
         pos = raw.find('{', pos + 1)) {
        std::vector<std::pair<std::string, double>> entries;
        if (!try_parse_map(raw, pos, &entries)) continue;
        pred.status = ParseStatus::Ok;
        for (auto& [key, value] : entries) {
            if (!is_valid_bitstring(key, n_qubits)) {
                pred.dropped_keys = true;
                continue;
            }
            double p = value;
            if (p < 0.0) { p = 0.0; pred.clamped = true; }
            if (p > 1.0) { p = 1.0; pred.clamped = true; }
            pred.parsed[key] = p;  // last occurrence wins
        }
        return pred;
    }
    pred.status = ParseStatus::Malformed;
    return pred;
}

double search_accuracy(const std::map<std::string, double>& pred,
                       const Distribution& truth,
                       const std::vector<std::string>& marked,
                       bool* degenerate) {
    if (marked.empty()) throw std::invalid_argument("marked set is empty");
    const std::size_t k = marked.size();

    std::set<std::string> target(marked.begin(), marked.end());
    const auto truth_top = truth.top_k(k);
    std::set<std::string> truth_keys;
    for (const auto& [key, p] : truth_top) truth_keys.insert(key);
    const bool fell_back = truth_keys != target;
    if (fell_back) target = truth_keys;
    if (degenerate) *degenerate = fell_back;

    std::vector<std::pair<std::string, double>> ordered(pred.begin(), pred.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    std::size_t hits = 0;
    for (std::size_t i = 0; i < k && i < ordered.size(); ++i) {
        if (target.count(ordered[i].first)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(k);
}

double infidelity(const std::map<std::string, double>& pred,
                  const Distribution& truth) {
    if (!truth.exhaustive()) {
        throw std::invalid_argument("infidelity needs an exhaustive truth");
    }
    const double def = truth.has_default() ? truth.default_prob() : 0.0;
    double sum = 0.0;
    std::uint64_t covered = truth.entries().size();
    for (const auto& [key, p] : truth.entries()) {
        const auto it = pred.find(key);
        const double q = it == pred.end() ? 0.0 : it->second;
        const double d = q - p;
        sum += d * d;
    }
    for (const auto& [key, q] : pred) {
        if (truth.entries().count(key)) continue;
        if (!is_valid_bitstring(key, truth.n_qubits())) {
            throw std::invalid_argument("prediction key has wrong width: " + key);
        }
        const double d = q - def;
        sum += d * d;
        ++covered;
    }
    const double remaining = static_cast<double>(truth.dimension() - covered);
    sum += remaining * def * def;
    return sum / static_cast<double>(truth.dimension());
}

double marked_infidelity(const std::map<std::string, double>& pred,
                         const Distribution& truth,
                         const std::vector<std::string>& marked) {
    if (marked.empty()) throw std::invalid_argument("marked set is empty");
    double sum = 0.0;
    for (const auto& key : marked) {
        const auto it = pred.find(key);
        const double q = it == pred.end() ? 0.0 : it->second;
        const double d = q - truth.probability(key);
        sum += d * d;
    }
    return sum / static_cast<double>(marked.size());
}

namespace {

struct TruthEntry {
    int n_qubits = 0;
    std::vector<std::string> marked;
    std::string variant;
    Distribution exact;
};

struct Accumulator {
    std::uint64_t count = 0;
    double a = 0, a2 = 0, e = 0, e2 = 0, m = 0, m2 = 0;
    std::uint64_t failures = 0;

    void add(const RecordScore& score) {
        ++count;
        a += score.alpha;
        a2 += score.alpha * score.alpha;
        e += score.eps;
        e2 += score.eps * score.eps;
        m += score.eps_marked;
        m2 += score.eps_marked * score.eps_marked;
    }

    GroupStats finish() const {
        GroupStats stats;
        stats.count = count;
        stats.failures = failures;
        if (count) {
            const double n = static_cast<double>(count);
            auto sd = [&](double s, double s2, double mean) {
                const double var = s2 / n - mean * mean;
                return var > 0.0 ? std::sqrt(var) : 0.0;
            };
            stats.alpha_mean = a / n;
            stats.eps_mean = e / n;
            stats.eps_marked_mean = m / n;
            stats.alpha_std = sd(a, a2, stats.alpha_mean);
            stats.eps_std = sd(e, e2, stats.eps_mean);
            stats.eps_marked_std = sd(m, m2, stats.eps_marked_mean);
        }
        return stats;
    }
};

}  // namespace

EvalResult evaluate_bundle(const std::string& corpus_path,
                           const std::string& predictions_path) {
    std::ifstream corpus(corpus_path);
    if (!corpus) throw std::runtime_error("cannot open corpus: " + corpus_path);
    std::unordered_map<std::string, TruthEntry> truth_by_id;
    std::string line;
    while (std::getline(corpus, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        TruthEntry entry;
        entry.n_qubits = j.at("n_qubits").get<int>();
        entry.marked = j.at("marked").get<std::vector<std::string>>();
        entry.variant = j.at("variant").get<std::string>();
        std::map<std::string, double> named;
        const auto& exact = j.at("exact_answer");
        for (const auto& [key, value] : exact.at("entries").items()) {
            named.emplace(key, value.get<double>());
        }
        entry.exact = Distribution::two_value(entry.n_qubits, std::move(named),
                                              exact.at("default").get<double>());
        truth_by_id.emplace(j.at("id").get<std::string>(), std::move(entry));
    }

    std::ifstream predictions(predictions_path);
    if (!predictions) {
        throw std::runtime_error("cannot open predictions: " + predictions_path);
    }
    EvalResult result;
    std::map<GroupKey, Accumulator> acc;
    while (std::getline(predictions, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        const std::string id = j.at("id").get<std::string>();
        const auto it = truth_by_id.find(id);
        if (it == truth_by_id.end()) {
            ++result.unmatched_predictions;
            continue;
        }
        const TruthEntry& truth = it->second;
        Prediction pred =
            parse_model_answer(j.at("raw_reply").get<std::string>(), truth.n_qubits);
        pred.id = id;
        pred.model_tag = j.value("model_tag", std::string{});
        pred.train_tag = j.value("train_tag", std::string{});

        RecordScore score;
        score.id = id;
        score.n_qubits = truth.n_qubits;
        score.model_tag = pred.model_tag;
        score.variant = truth.variant;
        score.train_tag = pred.train_tag;
        score.status = pred.status;
        ++result.total;

        const GroupKey key{pred.model_tag, truth.n_qubits, truth.variant,
                           pred.train_tag};
        if (pred.status == ParseStatus::Ok) {
            score.alpha = search_accuracy(pred.parsed, truth.exact, truth.marked);
            score.eps = infidelity(pred.parsed, truth.exact);
            score.eps_marked = marked_infidelity(pred.parsed, truth.exact,
                                                 truth.marked);
            acc[key].add(score);
        } else {
            ++result.parse_failures;
            ++acc[key].failures;
        }
        result.records.push_back(std::move(score));
    }
    if (result.total == 0) {
        throw std::runtime_error("no prediction id matched the corpus");
    }
    for (const auto& [key, a] : acc) result.groups.emplace(key, a.finish());
    return result;
}

namespace {

ordered_json group_to_json(const GroupKey& key, const GroupStats& stats) {
    return ordered_json{
        {"model_tag", key.model_tag},
        {"n_qubits", key.n_qubits},
        {"variant", key.variant},
        {"train_tag", key.train_tag},
        {"count", stats.count},
        {"failures", stats.failures},
        {"alpha_mean", stats.alpha_mean},
        {"alpha_std", stats.alpha_std},
        {"eps_mean", stats.eps_mean},
        {"eps_std", stats.eps_std},
        {"eps_marked_mean", stats.eps_marked_mean},
        {"eps_marked_std", stats.eps_marked_std},
    };
}

}  // namespace

void write_report_json(const EvalResult& result, const std::string& path) {
    ordered_json groups = ordered_json::array();
    for (const auto& [key, stats] : result.groups) {
        groups.push_back(group_to_json(key, stats));
    }
    ordered_json records = ordered_json::array();
    for (const auto& score : result.records) {
        records.push_back(ordered_json{
            {"id", score.id},
            {"n_qubits", score.n_qubits},
            {"model_tag", score.model_tag},
            {"variant", score.variant},
            {"train_tag", score.train_tag},
            {"status", parse_status_name(score.status)},
            {"alpha", score.alpha},
            {"eps", score.eps},
            {"eps_marked", score.eps_marked},
        });
    }
    ordered_json report{
        {"total", result.total},
        {"parse_failures", result.parse_failures},
        {"parse_failure_rate", result.parse_failure_rate()},
        {"unmatched_predictions", result.unmatched_predictions},
        {"groups", std::move(groups)},
        {"records", std::move(records)},
    };
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report: " + path);
    out << report.dump(2) << '\n';
}

void write_aggregates_csv(const EvalResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write csv: " + path);
    out << "model_tag,n_qubits,variant,train_tag,count,failures,"
           "alpha_mean,alpha_std,eps_mean,eps_std,eps_marked_mean,eps_marked_std\n";
    out.precision(12);
    for (const auto& [key, s] : result.groups) {
        out << key.model_tag << ',' << key.n_qubits << ',' << key.variant << ','
            << key.train_tag << ',' << s.count << ',' << s.failures << ','
            << s.alpha_mean << ',' << s.alpha_std << ',' << s.eps_mean << ','
            << s.eps_std << ',' << s.eps_marked_mean << ',' << s.eps_marked_std
            << '\n';
    }
}

void write_plot_data(const EvalResult& result, const std::string& directory) {
    std::filesystem::create_directories(directory);

    // Collapse variants: one point per (model, train_tag, n).
    struct Sums {
        std::uint64_t count = 0;
        double alpha = 0, eps = 0, eps_marked = 0;
    };
    std::map<std::tuple<std::string, std::string, int>, Sums> by_train;
    std::map<std::tuple<std::string, int>, Sums> by_size;
    for (const auto& score : result.records) {
        if (score.status != ParseStatus::Ok) continue;
        auto& t = by_train[{score.model_tag, score.train_tag, score.n_qubits}];
        auto& z = by_size[{score.model_tag, score.n_qubits}];
        for (Sums* s : {&t, &z}) {
            ++s->count;
            s->alpha += score.alpha;
            s->eps += score.eps;
            s->eps_marked += score.eps_marked;
        }
    }

    auto open = [&](const char* name) {
        std::ofstream out(std::filesystem::path(directory) / name);
        if (!out) {
            throw std::runtime_error(std::string("cannot write plot data: ") + name);
        }
        out.precision(12);
        return out;
    };

    {
        auto acc = open("accuracy_vs_train_range.csv");
        auto inf = open("infidelity_vs_train_range.csv");
        acc << "model_tag,train_tag,n_qubits,alpha_mean,count\n";
        inf << "model_tag,train_tag,n_qubits,eps_mean,count\n";
        for (const auto& [key, s] : by_train) {
            const auto& [model, tag, n] = key;
            const double c = static_cast<double>(s.count);
            acc << model << ',' << tag << ',' << n << ',' << s.alpha / c << ','
                << s.count << '\n';
            inf << model << ',' << tag << ',' << n << ',' << s.eps / c << ','
                << s.count << '\n';
        }
    }
    {
        auto acc = open("scalability_accuracy.csv");
        auto inf = open("scalability_marked_infidelity.csv");
        acc << "model_tag,n_qubits,alpha_mean,count\n";
        inf << "model_tag,n_qubits,eps_marked_mean,count\n";
        for (const auto& [key, s] : by_size) {
            const auto& [model, n] = key;
            const double c = static_cast<double>(s.count);
            acc << model << ',' << n << ',' << s.alpha / c << ',' << s.count << '\n';
            inf << model << ',' << n << ',' << s.eps_marked / c << ',' << s.count
                << '\n';
        }
    }
}

std::map<std::string, double> uniform_baseline(const GroverInstance& instance,
                                               std::uint64_t top_k) {
    const double p = 1.0 / static_cast<double>(instance.dimension());
    const Distribution uniform =
        Distribution::two_value(instance.n_qubits(), {}, p);
    std::map<std::string, double> out;
    for (const auto& [key, value] : uniform.top_k(top_k)) out.emplace(key, value);
    return out;
}

}  // namespace grover

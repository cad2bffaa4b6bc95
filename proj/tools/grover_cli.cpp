// Command-line front end for the Grover ground-truth toolkit.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "grover/analytic.hpp"
#include "grover/circuit.hpp"
#include "grover/client.hpp"
#include "grover/dataset.hpp"
#include "grover/eval.hpp"
#include "grover/qasm.hpp"
#include "grover/statevector.hpp"

namespace {

constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

std::vector<std::string> split_commas(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream stream(list);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string read_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string strip_trailing_newlines(std::string text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
        text.pop_back();
    }
    return text;
}

grover::QasmStyle style_from_name(const std::string& name) {
    if (name == "full") return grover::QasmStyle::FullListing;
    if (name == "flat") return grover::QasmStyle::PromptFlat;
    if (name == "simplified") return grover::QasmStyle::Simplified;
    throw CLI::ValidationError("--style", "expected full, flat or simplified");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grover search ground-truth toolkit"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "Generate a prompt corpus");
    std::string gen_config, gen_out = "-";
    std::optional<std::uint64_t> gen_seed;
    std::optional<int> gen_min, gen_max, gen_total, gen_top_k, gen_validate;
    std::optional<std::int64_t> gen_shots;
    generate->add_option("--config", gen_config, "JSON config file");
    generate->add_option("--out", gen_out, "Output JSONL path ('-' for stdout)");
    generate->add_option("--seed", gen_seed, "Master seed override");
    generate->add_option("--min-qubits", gen_min);
    generate->add_option("--max-qubits", gen_max);
    generate->add_option("--total", gen_total, "Total record count");
    generate->add_option("--top-k", gen_top_k);
    generate->add_option("--shots", gen_shots, "Shot count (-1 for exact)");
    generate->add_option("--validate-max-qubits", gen_validate,
                         "Cross-check analytic answers up to this size");

    // split
    auto* split = app.add_subcommand("split", "Split a corpus into train/test");
    std::string split_corpus, split_train = "train.jsonl",
                split_test = "test.jsonl", split_manifest = "split_manifest.json";
    std::pair<int, int> train_range{3, 10}, test_range{6, 20};
    split->add_option("--corpus", split_corpus)->required();
    split->add_option("--train-out", split_train);
    split->add_option("--test-out", split_test);
    split->add_option("--manifest", split_manifest);
    split->add_option("--train-range", train_range, "min max");
    split->add_option("--test-range", test_range, "min max");

    // simulate
    auto* simulate = app.add_subcommand(
        "simulate", "Report the output distribution of a Grover instance");
    std::string sim_marked;
    int sim_n = 0, sim_top_k = 30;
    std::optional<int> sim_iterations;
    std::optional<std::int64_t> sim_shots;
    std::uint64_t sim_seed = 0;
    bool sim_analytic = false;
    simulate->add_option("--n,--qubits", sim_n, "Qubit count")->required();
    simulate->add_option("--marked", sim_marked, "Comma-separated marked strings")
        ->required();
    simulate->add_option("--iterations", sim_iterations);
    simulate->add_option("--shots", sim_shots, "Sample instead of exact output");
    simulate->add_option("--seed", sim_seed, "Sampling seed");
    simulate->add_option("--top-k", sim_top_k);
    simulate->add_flag("--analytic", sim_analytic,
                       "Closed form instead of the state-vector engine");

    // qasm emit / compress / expand / parse
    auto* qasm = app.add_subcommand("qasm", "Circuit text tools");
    qasm->require_subcommand(1);
    auto* qasm_emit = qasm->add_subcommand("emit", "Emit circuit text");
    std::string emit_marked, emit_style = "flat";
    int emit_n = 0;
    std::optional<int> emit_iterations;
    qasm_emit->add_option("--n", emit_n)->required();
    qasm_emit->add_option("--marked", emit_marked)->required();
    qasm_emit->add_option("--iterations", emit_iterations);
    qasm_emit->add_option("--style", emit_style, "full, flat or simplified");

    auto* qasm_compress = qasm->add_subcommand(
        "compress", "Flat statement line -> simplified ranges");
    auto* qasm_expand = qasm->add_subcommand(
        "expand", "Simplified ranges -> flat statement line");
    auto* qasm_parse = qasm->add_subcommand("parse", "Parse and validate");
    std::string codec_in = "-", parse_style = "flat";
    bool parse_run = false;
    int parse_top_k = 30;
    for (auto* sub : {qasm_compress, qasm_expand, qasm_parse}) {
        sub->add_option("--in", codec_in, "Input file ('-' for stdin)");
    }
    qasm_parse->add_option("--style", parse_style, "full, flat or simplified");
    qasm_parse->add_flag("--run", parse_run, "Simulate the parsed circuit");
    qasm_parse->add_option("--top-k", parse_top_k);

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Score model predictions");
    std::string eval_corpus, eval_predictions, eval_report, eval_csv, eval_plots;
    evaluate->add_option("--corpus", eval_corpus)->required();
    evaluate->add_option("--predictions", eval_predictions)->required();
    evaluate->add_option("--report", eval_report, "Per-record JSON report");
    evaluate->add_option("--csv", eval_csv, "Aggregate CSV");
    evaluate->add_option("--plot-dir", eval_plots, "Plot-ready CSV directory");

    // query-model
    auto* query = app.add_subcommand("query-model",
                                     "Send corpus prompts to a chat endpoint");
    grover::EndpointConfig endpoint;
    std::string query_corpus, query_out = "predictions.jsonl", query_tag;
    query->add_option("--corpus", query_corpus)->required();
    query->add_option("--url", endpoint.url, "Full chat-completions URL")
        ->required();
    query->add_option("--model", endpoint.model)->required();
    query->add_option("--out", query_out);
    query->add_option("--auth-env", endpoint.auth_env,
                      "Env var holding the bearer token");
    query->add_option("--max-retries", endpoint.max_retries);
    query->add_option("--rpm", endpoint.requests_per_minute);
    query->add_option("--timeout", endpoint.timeout_seconds);
    query->add_option("--cache-dir", endpoint.cache_dir);
    query->add_option("--temperature", endpoint.temperature);
    query->add_option("--model-tag", query_tag, "Tag stored with predictions");

    // plotdata
    auto* plotdata = app.add_subcommand(
        "plotdata", "Write plot-ready CSV series from a scored bundle");
    std::string plot_corpus, plot_predictions, plot_dir = "plots";
    plotdata->add_option("--corpus", plot_corpus)->required();
    plotdata->add_option("--predictions", plot_predictions)->required();
    plotdata->add_option("--out-dir", plot_dir);

    // baseline
    auto* baseline = app.add_subcommand(
        "baseline", "Write uniform-guess predictions for a corpus");
    std::string base_corpus, base_out = "baseline_predictions.jsonl";
    int base_top_k = 30;
    baseline->add_option("--corpus", base_corpus)->required();
    baseline->add_option("--out", base_out);
    baseline->add_option("--top-k", base_top_k);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*generate) {
            grover::CorpusConfig config;
            if (!gen_config.empty()) {
                config = grover::corpus_config_from_json_file(gen_config);
            }
            if (gen_seed) config.master_seed = *gen_seed;
            if (gen_min) config.min_qubits = *gen_min;
            if (gen_max) config.max_qubits = *gen_max;
            if (gen_total) config.total_records = *gen_total;
            if (gen_top_k) config.top_k = *gen_top_k;
            if (gen_shots) config.shots = *gen_shots;
            if (gen_validate) config.validate_max_qubits = *gen_validate;
            grover::CorpusStats stats;
            if (gen_out == "-") {
                stats = grover::generate_corpus(config, std::cout);
            } else {
                std::ofstream out(gen_out);
                if (!out) throw std::runtime_error("cannot open " + gen_out);
                stats = grover::generate_corpus(config, out);
            }
            std::cerr << "records: " << stats.records
                      << "  resampled: " << stats.resampled << '\n';
            for (const auto& note : stats.infeasibility_notes) {
                std::cerr << "note: " << note << '\n';
            }
        } else if (*split) {
            const auto result = grover::split_corpus_files(
                split_corpus, train_range, test_range, split_train, split_test,
                split_manifest);
            std::cerr << "train: " << result.train_records
                      << "  test: " << result.test_records << '\n';
        } else if (*simulate) {
            grover::GroverInstance instance(sim_n, split_commas(sim_marked));
            grover::Distribution dist =
                sim_analytic
                    ? grover::analytic_distribution(instance, sim_iterations)
                    : grover::probabilities(grover::run_circuit(
                          grover::build_circuit(instance, sim_iterations)));
            if (sim_shots) {
                dist = grover::sample_shots(
                    dist, static_cast<std::uint64_t>(*sim_shots), sim_seed);
            }
            std::cout << grover::format_answer(grover::build_answer(
                             dist, static_cast<std::uint64_t>(sim_top_k)))
                      << '\n';
        } else if (*qasm_emit) {
            grover::GroverInstance instance(emit_n, split_commas(emit_marked));
            const grover::Circuit circuit =
                grover::build_circuit(instance, emit_iterations);
            const grover::QasmStyle style = style_from_name(emit_style);
            grover::QasmDocument doc;
            if (style == grover::QasmStyle::FullListing) {
                doc = grover::emit_full_listing(circuit, instance);
            } else {
                doc = grover::emit_prompt_flat(circuit);
                if (style == grover::QasmStyle::Simplified) {
                    doc = grover::compress_simplified(doc);
                }
            }
            std::cout << doc.text << '\n';
        } else if (*qasm_compress) {
            grover::QasmDocument doc{grover::QasmStyle::PromptFlat,
                                     strip_trailing_newlines(read_text(codec_in)),
                                     0};
            std::cout << grover::compress_simplified(doc).text << '\n';
        } else if (*qasm_expand) {
            grover::QasmDocument doc{grover::QasmStyle::Simplified,
                                     strip_trailing_newlines(read_text(codec_in)),
                                     0};
            std::cout << grover::expand_simplified(doc).text << '\n';
        } else if (*qasm_parse) {
            const grover::QasmStyle style = style_from_name(parse_style);
            std::string text = read_text(codec_in);
            if (style != grover::QasmStyle::FullListing) {
                text = strip_trailing_newlines(text);
            }
            const grover::ParsedQasm parsed =
                grover::parse_qasm({style, text, 0});
            std::cout << "qubits: " << parsed.circuit.n_qubits
                      << "  ops: " << parsed.circuit.ops.size()
                      << "  barrier: " << (parsed.has_barrier ? "yes" : "no")
                      << "  measured: " << parsed.measured_qubits << '\n';
            if (parse_run) {
                const auto dist =
                    grover::probabilities(grover::run_circuit(parsed.circuit));
                std::cout << grover::format_answer(grover::build_answer(
                                 dist, static_cast<std::uint64_t>(parse_top_k)))
                          << '\n';
            }
        } else if (*evaluate) {
            const grover::EvalResult result =
                grover::evaluate_bundle(eval_corpus, eval_predictions);
            std::cout << "scored: " << result.total
                      << "  parse failures: " << result.parse_failures
                      << "  unmatched: " << result.unmatched_predictions << '\n';
            if (!eval_report.empty()) grover::write_report_json(result, eval_report);
            if (!eval_csv.empty()) grover::write_aggregates_csv(result, eval_csv);
            if (!eval_plots.empty()) grover::write_plot_data(result, eval_plots);
        } else if (*plotdata) {
            const grover::EvalResult result =
                grover::evaluate_bundle(plot_corpus, plot_predictions);
            grover::write_plot_data(result, plot_dir);
            std::cout << "plot data written to " << plot_dir << '\n';
        } else if (*query) {
            const grover::QueryStats stats =
                grover::query_model(query_corpus, endpoint, query_out, query_tag);
            std::cout << "records: " << stats.records
                      << "  cache hits: " << stats.cache_hits
                      << "  network calls: " << stats.network_calls
                      << "  retries: " << stats.retries
                      << "  failed: " << stats.failed << '\n';
            if (stats.failed) return kRuntimeError;
        } else if (*baseline) {
            std::ifstream corpus(base_corpus);
            if (!corpus) throw std::runtime_error("cannot open " + base_corpus);
            std::ofstream out(base_out);
            if (!out) throw std::runtime_error("cannot open " + base_out);
            std::string line;
            while (std::getline(corpus, line)) {
                if (line.empty()) continue;
                const grover::PromptRecord record = grover::record_from_jsonl(line);
                grover::GroverInstance instance(record.n_qubits, record.marked);
                const auto guess = grover::uniform_baseline(
                    instance, static_cast<std::uint64_t>(base_top_k));
                std::vector<std::pair<std::string, double>> entries(guess.begin(),
                                                                    guess.end());
                out << nlohmann::ordered_json{
                           {"id", record.id},
                           {"model_tag", "uniform"},
                           {"raw_reply", grover::format_answer(entries)}}
                           .dump()
                    << '\n';
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return 0;
}

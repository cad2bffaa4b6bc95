// Python bindings for the core operations.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <optional>

#include "grover/analytic.hpp"
#include "grover/circuit.hpp"
#include "grover/dataset.hpp"
#include "grover/eval.hpp"
#include "grover/qasm.hpp"
#include "grover/statevector.hpp"

namespace py = pybind11;
using namespace grover;

namespace {

QasmStyle style_from_string(const std::string& name) {
    if (name == "full") return QasmStyle::FullListing;
    if (name == "flat") return QasmStyle::PromptFlat;
    if (name == "simplified") return QasmStyle::Simplified;
    throw std::invalid_argument("style must be 'full', 'flat' or 'simplified'");
}

Distribution dist_from_parts(int n_qubits,
                             const std::map<std::string, double>& entries,
                             double default_prob) {
    return Distribution::two_value(n_qubits, entries, default_prob);
}

}  // namespace

PYBIND11_MODULE(_grover, m) {
    m.doc() = "Grover search ground-truth toolkit";

    py::class_<GroverInstance>(m, "Instance")
        .def(py::init<int, std::vector<std::string>>(), py::arg("n_qubits"),
             py::arg("marked"))
        .def_property_readonly("n_qubits", &GroverInstance::n_qubits)
        .def_property_readonly("marked", &GroverInstance::marked)
        .def_property_readonly("dimension", &GroverInstance::dimension)
        .def("is_marked", &GroverInstance::is_marked);

    m.def("optimal_iterations", &optimal_iterations, py::arg("n_qubits"),
          py::arg("marked_count"));

    m.def(
        "simulate",
        [](const GroverInstance& instance, std::optional<int> iterations) {
            const Distribution dist =
                probabilities(run_circuit(build_circuit(instance, iterations)));
            return dist.entries();
        },
        py::arg("instance"), py::arg("iterations") = std::nullopt,
        "Exact output distribution from the dense state-vector engine");

    m.def(
        "analytic",
        [](const GroverInstance& instance, std::optional<int> iterations) {
            const Distribution dist = analytic_distribution(instance, iterations);
            return py::make_tuple(dist.entries(), dist.default_prob());
        },
        py::arg("instance"), py::arg("iterations") = std::nullopt,
        "Closed-form distribution as (marked entries, shared unmarked "
        "probability); works far beyond the dense-simulation ceiling");

    m.def(
        "sample",
        [](const GroverInstance& instance, std::uint64_t shots, std::uint64_t seed,
           std::optional<int> iterations) {
            const Distribution exact =
                probabilities(run_circuit(build_circuit(instance, iterations)));
            return sample_shots(exact, shots, seed).entries();
        },
        py::arg("instance"), py::arg("shots"), py::arg("seed"),
        py::arg("iterations") = std::nullopt);

    m.def(
        "top_k_answer",
        [](const GroverInstance& instance, std::uint64_t k,
           std::optional<int> iterations) {
            return build_answer(analytic_distribution(instance, iterations), k);
        },
        py::arg("instance"), py::arg("k") = 30,
        py::arg("iterations") = std::nullopt);

    m.def("format_answer", &format_answer, py::arg("entries"));

    m.def(
        "emit_qasm",
        [](const GroverInstance& instance, const std::string& style,
           std::optional<int> iterations) {
            const Circuit circuit = build_circuit(instance, iterations);
            const QasmStyle s = style_from_string(style);
            if (s == QasmStyle::FullListing) {
                return emit_full_listing(circuit, instance).text;
            }
            QasmDocument doc = emit_prompt_flat(circuit);
            if (s == QasmStyle::Simplified) doc = compress_simplified(doc);
            return doc.text;
        },
        py::arg("instance"), py::arg("style") = "flat",
        py::arg("iterations") = std::nullopt);

    m.def(
        "parse_qasm",
        [](const std::string& text, const std::string& style) {
            const ParsedQasm parsed = parse_qasm({style_from_string(style), text, 0});
            py::dict out;
            out["n_qubits"] = parsed.circuit.n_qubits;
            out["n_ops"] = parsed.circuit.ops.size();
            out["has_barrier"] = parsed.has_barrier;
            out["measured_qubits"] = parsed.measured_qubits;
            return out;
        },
        py::arg("text"), py::arg("style") = "flat");

    m.def(
        "run_qasm",
        [](const std::string& text, const std::string& style) {
            const ParsedQasm parsed = parse_qasm({style_from_string(style), text, 0});
            return probabilities(run_circuit(parsed.circuit)).entries();
        },
        py::arg("text"), py::arg("style") = "flat");

    m.def(
        "compress_qasm",
        [](const std::string& flat) {
            return compress_simplified({QasmStyle::PromptFlat, flat, 0}).text;
        },
        py::arg("flat"));
    m.def(
        "expand_qasm",
        [](const std::string& simplified) {
            return expand_simplified({QasmStyle::Simplified, simplified, 0}).text;
        },
        py::arg("simplified"));

    m.def(
        "build_prompt",
        [](const GroverInstance& instance, const std::string& variant, int top_k) {
            const PromptVariant v = variant_from_name(variant);
            const Circuit circuit = v == PromptVariant::Base
                                        ? Circuit{}
                                        : build_circuit(instance);
            return build_prompt(instance, v, circuit, top_k);
        },
        py::arg("instance"), py::arg("variant") = "base", py::arg("top_k") = 30);

    m.def(
        "search_accuracy",
        [](const std::map<std::string, double>& pred, int n_qubits,
           const std::map<std::string, double>& truth_entries,
           double truth_default, const std::vector<std::string>& marked) {
            return search_accuracy(
                pred, dist_from_parts(n_qubits, truth_entries, truth_default),
                marked);
        },
        py::arg("pred"), py::arg("n_qubits"), py::arg("truth_entries"),
        py::arg("truth_default"), py::arg("marked"));

    m.def(
        "infidelity",
        [](const std::map<std::string, double>& pred, int n_qubits,
           const std::map<std::string, double>& truth_entries,
           double truth_default) {
            return infidelity(
                pred, dist_from_parts(n_qubits, truth_entries, truth_default));
        },
        py::arg("pred"), py::arg("n_qubits"), py::arg("truth_entries"),
        py::arg("truth_default"));

    m.def(
        "marked_infidelity",
        [](const std::map<std::string, double>& pred, int n_qubits,
           const std::map<std::string, double>& truth_entries,
           double truth_default, const std::vector<std::string>& marked) {
            return marked_infidelity(
                pred, dist_from_parts(n_qubits, truth_entries, truth_default),
                marked);
        },
        py::arg("pred"), py::arg("n_qubits"), py::arg("truth_entries"),
        py::arg("truth_default"), py::arg("marked"));

    m.def(
        "parse_model_answer",
        [](const std::string& raw, int n_qubits) {
            const Prediction pred = parse_model_answer(raw, n_qubits);
            py::dict out;
            out["status"] = parse_status_name(pred.status);
            out["parsed"] = pred.parsed;
            out["clamped"] = pred.clamped;
            out["dropped_keys"] = pred.dropped_keys;
            return out;
        },
        py::arg("raw"), py::arg("n_qubits"));

    m.def(
        "generate_corpus_file",
        [](const std::string& out_path, const std::string& config_path) {
            CorpusConfig config;
            if (!config_path.empty()) {
                config = corpus_config_from_json_file(config_path);
            }
            std::ofstream out(out_path);
            if (!out) throw std::runtime_error("cannot open " + out_path);
            const CorpusStats stats = generate_corpus(config, out);
            py::dict result;
            result["records"] = stats.records;
            result["resampled"] = stats.resampled;
            return result;
        },
        py::arg("out_path"), py::arg("config_path") = "");

    m.def(
        "evaluate",
        [](const std::string& corpus_path, const std::string& predictions_path) {
            const EvalResult result = evaluate_bundle(corpus_path, predictions_path);
            py::dict out;
            out["total"] = result.total;
            out["parse_failures"] = result.parse_failures;
            out["parse_failure_rate"] = result.parse_failure_rate();
            out["unmatched_predictions"] = result.unmatched_predictions;
            py::list groups;
            for (const auto& [key, stats] : result.groups) {
                py::dict g;
                g["model_tag"] = key.model_tag;
                g["n_qubits"] = key.n_qubits;
                g["variant"] = key.variant;
                g["train_tag"] = key.train_tag;
                g["count"] = stats.count;
                g["failures"] = stats.failures;
                g["alpha_mean"] = stats.alpha_mean;
                g["eps_mean"] = stats.eps_mean;
                g["eps_marked_mean"] = stats.eps_marked_mean;
                groups.append(g);
            }
            out["groups"] = groups;
            return out;
        },
        py::arg("corpus_path"), py::arg("predictions_path"));

    m.def("uniform_baseline", &uniform_baseline, py::arg("instance"),
          py::arg("top_k") = 30);
}

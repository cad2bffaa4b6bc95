#pragma once
#include <stdexcept>
#include <string>

#include "grover/circuit.hpp"
#include "grover/instance.hpp"

namespace grover {

// Three text forms of a circuit:
//  - FullListing: OPENQASM 3.0 header, named U_omega / U_s gate
//    definitions, declarations, applications, barrier and measurements.
//  - PromptFlat: single line of "; "-separated gate statements, MCX as
//    mcx_<label>, no header and no measurements.
//  - Simplified: PromptFlat with runs of the same single-qubit gate on
//    consecutive ascending qubits merged into the end-exclusive range
//    form "g q[a:b]" (a project dialect, not valid OpenQASM).
enum class QasmStyle { FullListing, PromptFlat, Simplified };

struct QasmDocument {
    QasmStyle style = QasmStyle::PromptFlat;
    std::string text;
    int n_qubits = 0;
};

struct QasmParseError : std::runtime_error {
    QasmParseError(const std::string& message, std::size_t statement_index);
    std::size_t statement_index;
};

// Parse result; barrier and measurement statements are metadata, not ops.
struct ParsedQasm {
    Circuit circuit;
    bool has_barrier = false;
    int measured_qubits = 0;
};

QasmDocument emit_full_listing(const Circuit& circuit,
                               const GroverInstance& instance);
QasmDocument emit_prompt_flat(const Circuit& circuit);

QasmDocument compress_simplified(const QasmDocument& flat);
QasmDocument expand_simplified(const QasmDocument& simplified);

ParsedQasm parse_qasm(const QasmDocument& doc);

}  // namespace grover

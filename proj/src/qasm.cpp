#include "grover/qasm.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace grover {

QasmParseError::QasmParseError(const std::string& message, std::size_t index)
    : std::runtime_error("statement " + std::to_string(index) + ": " + message),
      statement_index(index) {}

namespace {

std::string operand(int qubit) { return "q[" + std::to_string(qubit) + "]"; }

std::string mcx_mnemonic(const GateOp& op) {
    return op.label >= 0 ? "mcx_" + std::to_string(op.label) : "mcx";
}

std::string statement_for(const GateOp& op,
                          const std::vector<std::string>* param_names = nullptr) {
    auto name_of = [&](int q) {
        return param_names ? (*param_names)[static_cast<std::size_t>(q)] : operand(q);
    };
    std::string mnemonic = op.kind == GateKind::MCX ? mcx_mnemonic(op)
                                                    : gate_name(op.kind);
    std::string text = mnemonic + " ";
    for (std::size_t i = 0; i < op.qubits.size(); ++i) {
        if (i) text += ", ";
        text += name_of(op.qubits[i]);
    }
    return text;
}

std::string join_flat(const std::vector<std::string>& statements) {
    std::string text;
    for (std::size_t i = 0; i < statements.size(); ++i) {
        if (i) text += ' ';
        text += statements[i];
        text += ';';
    }
    return text;
}

std::vector<std::string> split_statements(const std::string& text) {
    std::vector<std::string> statements;
    std::string current;
    for (char c : text) {
        if (c == ';') {
            statements.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    statements.push_back(current);  // tolerate a missing final ';'
    // trim whitespace; drop empties (trailing separator)
    std::vector<std::string> out;
    for (auto& s : statements) {
        const auto begin = s.find_first_not_of(" \t\r\n");
        if (begin == std::string::npos) continue;
        const auto end = s.find_last_not_of(" \t\r\n");
        out.push_back(s.substr(begin, end - begin + 1));
    }
    return out;
}

}  // namespace

QasmDocument emit_prompt_flat(const Circuit& circuit) {
    std::vector<std::string> statements;
    statements.reserve(circuit.ops.size());
    for (const auto& op : circuit.ops) statements.push_back(statement_for(op));
    return {QasmStyle::PromptFlat, join_flat(statements), circuit.n_qubits};
}

QasmDocument emit_full_listing(const Circuit& circuit,
                               const GroverInstance& instance) {
    const int n = instance.n_qubits();
    if (circuit.n_qubits != n) {
        throw std::invalid_argument("circuit/instance qubit count mismatch");
    }

    const auto oracle = build_oracle(instance);
    const auto diffuser = build_diffuser(n);
    const bool named_style = circuit.iterations >= 1;
    if (named_style) {
        // circuit must have the init + k * (oracle, diffuser) structure
        const Circuit expected = build_circuit(instance, circuit.iterations);
        auto same_ops = [](const std::vector<GateOp>& a, const std::vector<GateOp>& b) {
            if (a.size() != b.size()) return false;
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i].kind != b[i].kind || a[i].qubits != b[i].qubits) return false;
            }
            return true;
        };
        if (!same_ops(circuit.ops, expected.ops)) {
            throw std::invalid_argument(
                "full-listing emission needs a grover-core circuit");
        }
    }

    std::vector<std::string> params;
    for (int j = 0; j < n; ++j) params.push_back("_gate_q_" + std::to_string(j));
    std::string param_list;
    std::string operand_list;
    for (int j = 0; j < n; ++j) {
        if (j) {
            param_list += ", ";
            operand_list += ", ";
        }
        param_list += params[static_cast<std::size_t>(j)];
        operand_list += operand(j);
    }

    std::ostringstream out;
    out << "OPENQASM 3.0;\n";
    out << "include \"stdgates.inc\";\n";
    if (named_style) {
        auto emit_gate = [&](const char* gate, const std::vector<GateOp>& body) {
            out << "gate " << gate << " " << param_list << " {\n";
            for (const auto& op : body) {
                GateOp unlabeled = op;
                unlabeled.label = -1;
                out << "  " << statement_for(unlabeled, &params) << ";\n";
            }
            out << "}\n";
        };
        emit_gate("U_omega", oracle);
        emit_gate("U_s", diffuser);
    }
    out << "bit[" << n << "] meas;\n";
    out << "qubit[" << n << "] q;\n";
    if (named_style) {
        for (int j = 0; j < n; ++j) out << "h " << operand(j) << ";\n";
        for (int it = 0; it < circuit.iterations; ++it) {
            out << "U_omega " << operand_list << ";\n";
            out << "U_s " << operand_list << ";\n";
        }
    } else {
        for (const auto& op : circuit.ops) out << statement_for(op) << ";\n";
    }
    out << "barrier " << operand_list << ";\n";
    for (int j = 0; j < n; ++j) {
        out << "meas[" << j << "] = measure " << operand(j) << ";\n";
    }
    return {QasmStyle::FullListing, out.str(), n};
}

// ---------------------------------------------------------------------------
// Simplified-QASM compression (project dialect, end-exclusive ranges)

namespace {

struct FlatStatement {
    std::string mnemonic;
    std::vector<int> qubits;  // empty for pass-through statements
    std::string raw;
};

bool is_single_qubit_mnemonic(const std::string& m) {
    return m == "h" || m == "x" || m == "z";
}

bool is_mcx_mnemonic(const std::string& m) {
    return m == "mcx" || m.rfind("mcx_", 0) == 0;
}

FlatStatement parse_flat_statement(const std::string& raw, std::size_t index) {
    FlatStatement stmt;
    stmt.raw = raw;
    const auto space = raw.find(' ');
    if (space == std::string::npos) {
        throw QasmParseError("missing operands in '" + raw + "'", index);
    }
    stmt.mnemonic = raw.substr(0, space);
    std::string rest = raw.substr(space + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
        while (pos < rest.size() && (rest[pos] == ' ' || rest[pos] == ',')) ++pos;
        if (pos >= rest.size()) break;
        if (rest.compare(pos, 2, "q[") != 0) {
            throw QasmParseError("expected q[...] operand in '" + raw + "'", index);
        }
        pos += 2;
        const auto close = rest.find(']', pos);
        if (close == std::string::npos) {
            throw QasmParseError("unterminated operand in '" + raw + "'", index);
        }
        const std::string inside = rest.substr(pos, close - pos);
        pos = close + 1;
        const auto colon = inside.find(':');
        try {
            if (colon == std::string::npos) {
                stmt.qubits.push_back(std::stoi(inside));
            } else {
                const int start = std::stoi(inside.substr(0, colon));
                const int end = std::stoi(inside.substr(colon + 1));
                if (start >= end) {
                    throw QasmParseError("empty range q[" + inside + "]", index);
                }
                for (int q = start; q < end; ++q) stmt.qubits.push_back(q);
            }
        } catch (const std::invalid_argument&) {
            throw QasmParseError("bad index in '" + raw + "'", index);
        }
    }
    if (stmt.qubits.empty()) {
        throw QasmParseError("no operands in '" + raw + "'", index);
    }
    return stmt;
}

bool consecutive_ascending(const std::vector<int>& qubits) {
    for (std::size_t i = 1; i < qubits.size(); ++i) {
        if (qubits[i] != qubits[i - 1] + 1) return false;
    }
    return true;
}

std::string range_statement(const std::string& mnemonic, int start, int end) {
    return mnemonic + " q[" + std::to_string(start) + ":" + std::to_string(end) + "]";
}

}  // namespace

QasmDocument compress_simplified(const QasmDocument& flat) {
    if (flat.style != QasmStyle::PromptFlat) {
        throw std::invalid_argument("compress_simplified expects a PromptFlat document");
    }
    const auto raw = split_statements(flat.text);
    std::vector<FlatStatement> statements;
    statements.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        statements.push_back(parse_flat_statement(raw[i], i));
    }

    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < statements.size()) {
        const auto& s = statements[i];
        if (is_single_qubit_mnemonic(s.mnemonic) && s.qubits.size() == 1) {
            // maximal run of the same mnemonic on consecutive ascending qubits
            std::size_t j = i + 1;
            while (j < statements.size() &&
                   statements[j].mnemonic == s.mnemonic &&
                   statements[j].qubits.size() == 1 &&
                   statements[j].qubits[0] == statements[j - 1].qubits[0] + 1) {
                ++j;
            }
            if (j - i >= 2) {
                out.push_back(range_statement(s.mnemonic, s.qubits[0],
                                              statements[j - 1].qubits[0] + 1));
            } else {
                out.push_back(s.raw);
            }
            i = j;
            continue;
        }
        if (is_mcx_mnemonic(s.mnemonic) && s.qubits.size() >= 2 &&
            consecutive_ascending(s.qubits)) {
            out.push_back(range_statement(s.mnemonic, s.qubits.front(),
                                          s.qubits.back() + 1));
        } else {
            out.push_back(s.raw);
        }
        ++i;
    }
    return {QasmStyle::Simplified, join_flat(out), flat.n_qubits};
}

QasmDocument expand_simplified(const QasmDocument& simplified) {
    if (simplified.style != QasmStyle::Simplified) {
        throw std::invalid_argument("expand_simplified expects a Simplified document");
    }
    const auto raw = split_statements(simplified.text);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const FlatStatement stmt = parse_flat_statement(raw[i], i);
        const bool has_range = raw[i].find(':') != std::string::npos;
        if (!has_range) {
            out.push_back(stmt.raw);
            continue;
        }
        if (is_single_qubit_mnemonic(stmt.mnemonic)) {
            for (int q : stmt.qubits) out.push_back(stmt.mnemonic + " " + operand(q));
        } else if (is_mcx_mnemonic(stmt.mnemonic)) {
            std::string line = stmt.mnemonic + " ";
            for (std::size_t k = 0; k < stmt.qubits.size(); ++k) {
                if (k) line += ", ";
                line += operand(stmt.qubits[k]);
            }
            out.push_back(line);
        } else {
            throw QasmParseError("range form not defined for '" + stmt.mnemonic + "'", i);
        }
    }
    return {QasmStyle::PromptFlat, join_flat(out), simplified.n_qubits};
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct GateDef {
    std::vector<std::string> params;
    std::vector<std::pair<std::string, std::vector<std::string>>> body;
    // body entries are (mnemonic, operand names)
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    // token kinds: identifier, number, symbol, string, end
    std::string next() {
        skip_space();
        if (pos_ >= text_.size()) return {};
        const char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_' || text_[pos_] == '.')) {
                ++pos_;
            }
            return text_.substr(start, pos_ - start);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '.')) {
                ++pos_;
            }
            return text_.substr(start, pos_ - start);
        }
        if (c == '"') {
            std::size_t start = pos_++;
            while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
            if (pos_ < text_.size()) ++pos_;
            return text_.substr(start, pos_ - start);
        }
        ++pos_;
        return std::string(1, c);
    }

    std::string peek() {
        const std::size_t save = pos_;
        std::string token = next();
        pos_ = save;
        return token;
    }

    bool done() {
        skip_space();
        return pos_ >= text_.size();
    }

private:
    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

struct ParserState {
    std::map<std::string, GateDef> defs;
    std::vector<GateOp> ops;
    bool has_barrier = false;
    int measured = 0;
    int declared_qubits = 0;
    int max_index = -1;
    std::size_t statement_index = 0;
};

std::optional<GateKind> builtin_kind(const std::string& mnemonic) {
    if (mnemonic == "h") return GateKind::H;
    if (mnemonic == "x") return GateKind::X;
    if (mnemonic == "z") return GateKind::Z;
    if (mnemonic == "cz") return GateKind::CZ;
    if (mnemonic == "ccx") return GateKind::CCX;
    return std::nullopt;
}

int parse_mcx_label(const std::string& mnemonic, std::size_t index) {
    if (mnemonic == "mcx") return -1;
    const std::string suffix = mnemonic.substr(4);
    if (suffix.empty() ||
        !std::all_of(suffix.begin(), suffix.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw QasmParseError("bad mcx label in '" + mnemonic + "'", index);
    }
    return std::stoi(suffix);
}

// Appends the ops of one gate statement, expanding q[a:b] ranges. Inside a
// gate definition, operands are parameter names resolved via `bindings`.
void append_statement(ParserState& state, const std::string& mnemonic,
                      const std::vector<int>& qubits) {
    const std::size_t index = state.statement_index;
    if (auto kind = builtin_kind(mnemonic)) {
        if (*kind == GateKind::H || *kind == GateKind::X || *kind == GateKind::Z) {
            for (int q : qubits) {
                state.ops.push_back({*kind, {q}});
                state.max_index = std::max(state.max_index, q);
            }
            return;
        }
        state.ops.push_back({*kind, qubits});
        for (int q : qubits) state.max_index = std::max(state.max_index, q);
        return;
    }
    if (is_mcx_mnemonic(mnemonic)) {
        if (qubits.size() < 2) {
            throw QasmParseError("mcx needs at least two operands", index);
        }
        state.ops.push_back({GateKind::MCX, qubits, parse_mcx_label(mnemonic, index)});
        for (int q : qubits) state.max_index = std::max(state.max_index, q);
        return;
    }
    auto def = state.defs.find(mnemonic);
    if (def == state.defs.end()) {
        throw QasmParseError("unknown mnemonic '" + mnemonic + "'", index);
    }
    if (qubits.size() != def->second.params.size()) {
        throw QasmParseError("wrong operand count for gate '" + mnemonic + "'", index);
    }
    std::map<std::string, int> bindings;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        bindings[def->second.params[i]] = qubits[i];
    }
    for (const auto& [body_mnemonic, body_operands] : def->second.body) {
        std::vector<int> resolved;
        for (const auto& name : body_operands) {
            auto it = bindings.find(name);
            if (it == bindings.end()) {
                throw QasmParseError("unbound parameter '" + name + "' in gate '" +
                                         mnemonic + "'",
                                     index);
            }
            resolved.push_back(it->second);
        }
        append_statement(state, body_mnemonic, resolved);
    }
}

}  // namespace

ParsedQasm parse_qasm(const QasmDocument& doc) {
    ParserState state;
    Lexer lex(doc.text);

    auto expect = [&](const std::string& want) {
        const std::string got = lex.next();
        if (got != want) {
            throw QasmParseError("expected '" + want + "', got '" + got + "'",
                                 state.statement_index);
        }
    };

    auto parse_int = [&](const std::string& token) {
        if (token.empty() ||
            !std::all_of(token.begin(), token.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
            })) {
            throw QasmParseError("expected integer, got '" + token + "'",
                                 state.statement_index);
        }
        return std::stoi(token);
    };

    // Reads "name[i]" / "name[a:b]" / bare identifiers until ';' and returns
    // either resolved qubit indices or raw names (inside gate bodies).
    auto read_operand_indices = [&]() {
        std::vector<int> qubits;
        while (true) {
            std::string token = lex.next();
            if (token == ";") break;
            if (token == ",") continue;
            if (token.empty()) {
                throw QasmParseError("unterminated statement", state.statement_index);
            }
            if (lex.peek() == "[") {
                lex.next();
                const int first = parse_int(lex.next());
                std::string bracket = lex.next();
                if (bracket == ":") {
                    const int end = parse_int(lex.next());
                    expect("]");
                    if (first >= end) {
                        throw QasmParseError("empty range", state.statement_index);
                    }
                    for (int q = first; q < end; ++q) qubits.push_back(q);
                } else if (bracket == "]") {
                    qubits.push_back(first);
                } else {
                    throw QasmParseError("malformed operand", state.statement_index);
                }
            } else {
                throw QasmParseError("expected indexed operand, got '" + token + "'",
                                     state.statement_index);
            }
        }
        return qubits;
    };

    while (!lex.done()) {
        std::string token = lex.next();
        if (token == "OPENQASM") {
            lex.next();  // version
            expect(";");
        } else if (token == "include") {
            lex.next();  // file string
            expect(";");
        } else if (token == "qubit" || token == "bit") {
            expect("[");
            const int count = parse_int(lex.next());
            expect("]");
            lex.next();  // register name
            expect(";");
            if (token == "qubit") state.declared_qubits = count;
        } else if (token == "gate") {
            const std::string name = lex.next();
            GateDef def;
            std::string t = lex.next();
            while (t != "{") {
                if (t != ",") def.params.push_back(t);
                t = lex.next();
                if (t.empty()) {
                    throw QasmParseError("unbalanced gate definition '" + name + "'",
                                         state.statement_index);
                }
            }
            while (true) {
                std::string mnemonic = lex.next();
                if (mnemonic == "}") break;
                if (mnemonic.empty()) {
                    throw QasmParseError("unbalanced gate definition '" + name + "'",
                                         state.statement_index);
                }
                std::vector<std::string> operands;
                std::string u = lex.next();
                while (u != ";") {
                    if (u != ",") operands.push_back(u);
                    u = lex.next();
                    if (u.empty()) {
                        throw QasmParseError("unterminated statement in gate '" + name +
                                                 "'",
                                             state.statement_index);
                    }
                }
                def.body.emplace_back(std::move(mnemonic), std::move(operands));
            }
            state.defs.emplace(name, std::move(def));
        } else if (token == "barrier") {
            state.has_barrier = true;
            while (true) {
                std::string t = lex.next();
                if (t == ";" || t.empty()) break;
            }
        } else if (token == "measure") {
            // bare "measure q[i];"
            read_operand_indices();
            ++state.measured;
        } else {
            // either "meas[i] = measure q[i];" or a gate statement
            if (lex.peek() == "[") {
                // classical assignment target
                lex.next();
                parse_int(lex.next());
                expect("]");
                expect("=");
                expect("measure");
                read_operand_indices();
                ++state.measured;
                ++state.statement_index;
                continue;
            }
            append_statement(state, token, read_operand_indices());
            ++state.statement_index;
        }
    }

    ParsedQasm parsed;
    parsed.has_barrier = state.has_barrier;
    parsed.measured_qubits = state.measured;
    parsed.circuit.n_qubits = state.declared_qubits > 0 ? state.declared_qubits
                              : doc.n_qubits > 0        ? doc.n_qubits
                                                        : state.max_index + 1;
    parsed.circuit.ops = std::move(state.ops);
    for (const auto& op : parsed.circuit.ops) {
        validate_gate(op, parsed.circuit.n_qubits);
    }

    // Named-gate bodies cannot carry per-application labels; normalize to
    // the grover-core emission-order labelling when none were written.
    const bool any_labeled =
        std::any_of(parsed.circuit.ops.begin(), parsed.circuit.ops.end(),
                    [](const GateOp& op) {
                        return op.kind == GateKind::MCX && op.label >= 0;
                    });
    if (!any_labeled) {
        int next_label = 0;
        for (auto& op : parsed.circuit.ops) {
            if (op.kind == GateKind::MCX) op.label = next_label++;
        }
    }
    return parsed;
}

}  // namespace grover

#include "rqp/circuit.h"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace rqp {

std::vector<uint32_t> Gate::qubits() const {
    std::vector<uint32_t> qs;
    qs.reserve(controls.size() + 1);
    for (const Control& c : controls) {
        qs.push_back(c.qubit);
    }
    qs.push_back(target);
    return qs;
}

bool gate_in_set(GateKind kind, GateSet set) {
    switch (kind) {
        case GateKind::X:
        case GateKind::CX:
        case GateKind::CCX:
        case GateKind::MCX:
            return set == GateSet::CH;
        case GateKind::H:
            return true;
        case GateKind::CZ:
        case GateKind::S:
        case GateKind::T:
            return set == GateSet::CT;
    }
    return false;
}

std::string gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::X: return "x";
        case GateKind::CX: return "cx";
        case GateKind::CCX: return "ccx";
        case GateKind::MCX: return "mcx";
        case GateKind::H: return "h";
        case GateKind::CZ: return "cz";
        case GateKind::S: return "s";
        case GateKind::T: return "t";
    }
    return "?";
}

namespace {

std::size_t required_controls(GateKind kind) {
    switch (kind) {
        case GateKind::CX: return 1;
        case GateKind::CCX: return 2;
        case GateKind::CZ: return 1;  // second participant
        default: return 0;
    }
}

}  // namespace

void Circuit::append(Gate g) {
    if (!gate_in_set(g.kind, gate_set)) {
        throw std::invalid_argument("gate '" + gate_kind_name(g.kind) +
                                    "' not in the declared gate set");
    }
    if (g.kind == GateKind::MCX) {
        if (g.controls.empty()) {
            throw std::invalid_argument("mcx needs at least one control");
        }
    } else if (g.controls.size() != required_controls(g.kind)) {
        throw std::invalid_argument("wrong control count for '" + gate_kind_name(g.kind) + "'");
    }
    if (g.kind == GateKind::CZ && !g.controls[0].on_one) {
        throw std::invalid_argument("cz takes plain participants");
    }
    std::unordered_set<uint32_t> seen;
    for (uint32_t q : g.qubits()) {
        if (q >= width) {
            throw std::invalid_argument("qubit index " + std::to_string(q) +
                                        " out of range for width " + std::to_string(width));
        }
        if (!seen.insert(q).second) {
            throw std::invalid_argument("duplicate qubit index " + std::to_string(q) +
                                        " in '" + gate_kind_name(g.kind) + "'");
        }
    }
    gates.push_back(std::move(g));
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) {
        toks.push_back(t);
    }
    return toks;
}

uint32_t parse_index(const std::string& tok, int line) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError(line, "expected qubit index, got '" + tok + "'");
    }
    if (tok.size() > 9) {
        throw ParseError(line, "qubit index too large: " + tok);
    }
    unsigned long v = std::stoul(tok);
    return static_cast<uint32_t>(v);
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_width = false, have_set = false;
    uint32_t width = 0;
    GateSet set = GateSet::CH;
    std::vector<std::pair<int, std::vector<std::string>>> gate_lines;

    while (std::getline(in, raw)) {
        ++lineno;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) {
            raw.resize(hash);
        }
        std::vector<std::string> toks = tokenize(raw);
        if (toks.empty()) {
            continue;
        }
        if (toks[0] == "qubits") {
            if (have_width) {
                throw ParseError(lineno, "duplicate 'qubits' statement");
            }
            if (toks.size() != 2) {
                throw ParseError(lineno, "usage: qubits <n>");
            }
            width = parse_index(toks[1], lineno);
            if (width == 0) {
                throw ParseError(lineno, "width must be >= 1");
            }
            have_width = true;
        } else if (toks[0] == "gateset") {
            if (have_set) {
                throw ParseError(lineno, "duplicate 'gateset' statement");
            }
            if (toks.size() != 2 || (toks[1] != "ch" && toks[1] != "ct")) {
                throw ParseError(lineno, "usage: gateset ch|ct");
            }
            set = toks[1] == "ch" ? GateSet::CH : GateSet::CT;
            have_set = true;
        } else {
            gate_lines.emplace_back(lineno, std::move(toks));
        }
    }
    if (!have_width) {
        throw ParseError(lineno, "missing 'qubits' statement");
    }
    if (!have_set) {
        throw ParseError(lineno, "missing 'gateset' statement");
    }

    Circuit c(width, set);
    for (auto& [ln, toks] : gate_lines) {
        const std::string& op = toks[0];
        std::size_t argc = toks.size() - 1;
        Gate g;
        if (op == "x" || op == "h" || op == "s" || op == "t") {
            if (argc != 1) {
                throw ParseError(ln, "usage: " + op + " <q>");
            }
            uint32_t q = parse_index(toks[1], ln);
            g = op == "x" ? Gate::x(q) : op == "h" ? Gate::h(q) : op == "s" ? Gate::s(q) : Gate::t(q);
        } else if (op == "cx") {
            if (argc != 2) {
                throw ParseError(ln, "usage: cx <ctrl> <tgt>");
            }
            g = Gate::cx(parse_index(toks[1], ln), parse_index(toks[2], ln));
        } else if (op == "ccx") {
            if (argc != 3) {
                throw ParseError(ln, "usage: ccx <c1> <c2> <tgt>");
            }
            g = Gate::ccx(parse_index(toks[1], ln), parse_index(toks[2], ln), parse_index(toks[3], ln));
        } else if (op == "cz") {
            if (argc != 2) {
                throw ParseError(ln, "usage: cz <q1> <q2>");
            }
            g = Gate::cz(parse_index(toks[1], ln), parse_index(toks[2], ln));
        } else if (op == "mcx") {
            if (argc < 2) {
                throw ParseError(ln, "usage: mcx [+|-]<q> ... <tgt>");
            }
            std::vector<Control> ctrls;
            for (std::size_t i = 1; i + 1 < toks.size(); ++i) {
                std::string tok = toks[i];
                bool on_one = true;
                if (tok[0] == '+' || tok[0] == '-') {
                    on_one = tok[0] == '+';
                    tok.erase(0, 1);
                }
                ctrls.push_back({parse_index(tok, ln), on_one});
            }
            g = Gate::mcx(std::move(ctrls), parse_index(toks.back(), ln));
        } else {
            throw ParseError(ln, "unknown gate '" + op + "'");
        }
        try {
            c.append(std::move(g));
        } catch (const std::invalid_argument& e) {
            throw ParseError(ln, e.what());
        }
    }
    return c;
}

std::string print_circuit(const Circuit& c) {
    std::ostringstream out;
    out << "qubits " << c.width << "\n";
    out << "gateset " << (c.gate_set == GateSet::CH ? "ch" : "ct") << "\n";
    for (const Gate& g : c.gates) {
        out << gate_kind_name(g.kind);
        if (g.kind == GateKind::MCX) {
            for (const Control& ctl : g.controls) {
                out << " " << (ctl.on_one ? '+' : '-') << ctl.qubit;
            }
        } else {
            for (const Control& ctl : g.controls) {
                out << " " << ctl.qubit;
            }
        }
        out << " " << g.target << "\n";
    }
    return out.str();
}

unsigned hadamard_count(const Circuit& c) {
    unsigned h = 0;
    for (const Gate& g : c.gates) {
        h += g.kind == GateKind::H;
    }
    return h;
}

Circuit reverse_self_inverse(const Circuit& c) {
    if (c.gate_set != GateSet::CH) {
        throw std::invalid_argument("only CH circuits are gate-wise self-inverse");
    }
    Circuit r(c.width, c.gate_set);
    r.gates.assign(c.gates.rbegin(), c.gates.rend());
    return r;
}

Circuit build_w_circuit(const Circuit& v, unsigned k, uint64_t z) {
    if (v.gate_set != GateSet::CH) {
        throw std::invalid_argument("probe circuit needs a CH-gate-set source circuit");
    }
    if (k == 0 || k > v.width || k > K_MAX) {
        throw std::invalid_argument("outcome width k out of range");
    }
    if (k < 64 && (z >> k) != 0) {
        throw std::invalid_argument("outcome z has bits beyond width k");
    }
    uint32_t ancilla = v.width;
    Circuit w(v.width + 1, GateSet::CH);
    for (const Gate& g : v.gates) {
        w.append(g);
    }
    w.append(Gate::x(ancilla));
    std::vector<Control> ctrls;
    ctrls.reserve(k);
    for (unsigned i = 0; i < k; ++i) {
        ctrls.push_back({i, ((z >> i) & 1) != 0});
    }
    w.append(Gate::mcx(std::move(ctrls), ancilla));
    for (auto it = v.gates.rbegin(); it != v.gates.rend(); ++it) {
        w.append(*it);
    }
    return w;
}

std::string outcome_bits(uint64_t z, unsigned k) {
    std::string s(k, '0');
    for (unsigned i = 0; i < k; ++i) {
        if ((z >> i) & 1) {
            s[i] = '1';
        }
    }
    return s;
}

uint64_t parse_outcome_bits(const std::string& bits, unsigned k) {
    if (bits.size() != k) {
        throw std::invalid_argument("outcome '" + bits + "' is not " + std::to_string(k) + " bits");
    }
    uint64_t z = 0;
    for (unsigned i = 0; i < k; ++i) {
        if (bits[i] == '1') {
            z |= uint64_t{1} << i;
        } else if (bits[i] != '0') {
            throw std::invalid_argument("outcome '" + bits + "' has non-binary characters");
        }
    }
    return z;
}

std::string circuit_hash(const Circuit& c) {
    std::string text = print_circuit(c);
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

}  // namespace rqp

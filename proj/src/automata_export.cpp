#include "binsq/automata_export.hpp"

namespace binsq {

namespace {

std::string quoted(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

void write_dot(std::ostream& out, const Nfa& m, const SymbolNamer& name_of, std::string_view graph_name) {
    out << "digraph " << quoted(graph_name) << " {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle];\n";
    for (StateId s = 0; s < m.num_states(); ++s) {
        out << "  q" << s;
        if (m.is_final(s)) out << " [shape=doublecircle]";
        out << ";\n";
    }
    std::size_t k = 0;
    for (StateId s : m.initials()) {
        out << "  init" << k << " [shape=point];\n";
        out << "  init" << k++ << " -> q" << s << ";\n";
    }
    for (const Edge& e : m.edges()) {
        out << "  q" << e.from << " -> q" << e.to << " [label=" << quoted(name_of(e.symbol)) << "];\n";
    }
    out << "}\n";
}

void write_ats(std::ostream& out, const Nfa& m, const SymbolNamer& name_of, std::string_view automaton_name) {
    out << "NestedWordAutomaton " << automaton_name << " = (\n";
    out << "    callAlphabet = { },\n";
    out << "    internalAlphabet = {";
    for (std::size_t a = 0; a < m.num_symbols(); ++a) out << ' ' << quoted(name_of(static_cast<SymbolId>(a)));
    out << " },\n";
    out << "    returnAlphabet = { },\n";
    out << "    states = {";
    for (StateId s = 0; s < m.num_states(); ++s) out << " \"q" << s << '"';
    out << " },\n";
    out << "    initialStates = {";
    for (StateId s : m.initials()) out << " \"q" << s << '"';
    out << " },\n";
    out << "    finalStates = {";
    for (StateId s : m.finals()) out << " \"q" << s << '"';
    out << " },\n";
    out << "    callTransitions = { },\n";
    out << "    internalTransitions = {";
    for (const Edge& e : m.edges()) {
        out << "\n        (\"q" << e.from << "\" " << quoted(name_of(e.symbol)) << " \"q" << e.to << "\")";
    }
    out << "\n    },\n";
    out << "    returnTransitions = { }\n";
    out << ");\n";
}

}  // namespace binsq

#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "binsq/automata.hpp"

namespace binsq {

using SymbolNamer = std::function<std::string(SymbolId)>;

// Graphviz digraph, one edge per (state, symbol, state).
void write_dot(std::ostream& out, const Nfa& m, const SymbolNamer& name_of, std::string_view graph_name = "nfa");

// AutomataScript `NestedWordAutomaton` definition with internal transitions only.
void write_ats(std::ostream& out, const Nfa& m, const SymbolNamer& name_of, std::string_view automaton_name);

}  // namespace binsq

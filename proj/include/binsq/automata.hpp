#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace binsq {

using StateId = std::uint32_t;
using SymbolId = std::uint16_t;
// Opaque per-edge payload; generators use it to index side tables.
using EdgeLabel = std::uint32_t;
using Word = std::vector<SymbolId>;

inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();
inline constexpr EdgeLabel kNoLabel = std::numeric_limits<EdgeLabel>::max();

class AlphabetMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ForeignSymbol : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Edge {
    StateId from;
    SymbolId symbol;
    StateId to;
    EdgeLabel label;
};

// Immutable NFA over symbols [0, num_symbols) with a set of initial states.
// Transitions are stored CSR-style indexed by (state, symbol), so a lookup in
// the exploration loops is two array reads.
class Nfa {
public:
    Nfa() = default;
    static Nfa empty(std::size_t num_symbols);

    std::size_t num_states() const { return num_states_; }
    std::size_t num_symbols() const { return num_symbols_; }
    std::size_t num_transitions() const { return targets_.size(); }

    std::span<const StateId> initials() const { return initials_; }
    bool is_final(StateId s) const { return final_[s] != 0; }
    std::vector<StateId> finals() const;

    std::span<const StateId> successors(StateId s, SymbolId a) const {
        const std::size_t slot = static_cast<std::size_t>(s) * num_symbols_ + a;
        return {targets_.data() + offsets_[slot], offsets_[slot + 1] - offsets_[slot]};
    }
    std::span<const EdgeLabel> labels(StateId s, SymbolId a) const {
        const std::size_t slot = static_cast<std::size_t>(s) * num_symbols_ + a;
        return {labels_.data() + offsets_[slot], offsets_[slot + 1] - offsets_[slot]};
    }

    std::vector<Edge> edges() const;

private:
    friend class NfaBuilder;

    std::size_t num_states_ = 0;
    std::size_t num_symbols_ = 0;
    std::vector<std::uint32_t> offsets_{0};
    std::vector<StateId> targets_;
    std::vector<EdgeLabel> labels_;
    std::vector<StateId> initials_;
    std::vector<std::uint8_t> final_;
};

class NfaBuilder {
public:
    explicit NfaBuilder(std::size_t num_symbols) : num_symbols_(num_symbols) {}

    StateId add_state();
    StateId add_states(std::size_t count);
    void add_initial(StateId s);
    void set_final(StateId s, bool final = true);
    // Duplicate (from, symbol, to) triples collapse; the first label wins.
    void add_edge(StateId from, SymbolId symbol, StateId to, EdgeLabel label = kNoLabel);

    std::size_t num_states() const { return final_.size(); }
    std::size_t num_symbols() const { return num_symbols_; }

    Nfa build() const;

private:
    std::size_t num_symbols_;
    std::vector<Edge> edges_;
    std::vector<StateId> initials_;
    std::vector<std::uint8_t> final_;
};

// Disjoint union; initial sets are merged. Labels are carried over unchanged.
Nfa union_of(std::span<const Nfa> machines);

// Reachable part of the product automaton; edges keep the label of `a`.
Nfa intersect(const Nfa& a, const Nfa& b);

bool accepts(const Nfa& m, std::span<const SymbolId> word);

// Shortest accepted word (breadth-first, symbols expanded in ascending id
// order), or nullopt when the language is empty.
std::optional<Word> shortest_word(const Nfa& m);
bool is_empty(const Nfa& m);

struct InclusionOptions {
    // Skip (q, S) when some visited (q, S') has S' a subset of S.
    bool antichain = true;
};

struct InclusionVerdict {
    bool holds = true;
    // Present iff !holds: a shortest word of `contained` rejected by `container`.
    std::optional<Word> counterexample;
    std::size_t product_states = 0;
    std::size_t subset_states = 0;
};

// Decides L(contained) ⊆ L(container) by breadth-first exploration of
// `contained` against the lazily determinized `container`.
InclusionVerdict includes(const Nfa& container, const Nfa& contained, InclusionOptions options = {});

struct TrimResult {
    Nfa nfa;
    // kNoState for dropped states.
    std::vector<StateId> old_to_new;
};

// Keeps only states that are both reachable and co-reachable.
TrimResult trim(const Nfa& m);

// Machine accepting exactly `word`.
Nfa singleton(std::size_t num_symbols, std::span<const SymbolId> word);

// Adds `offset` to every label other than kNoLabel.
Nfa offset_labels(const Nfa& m, EdgeLabel offset);

struct Run {
    std::vector<StateId> states;   // states[0] initial, states.size() == word.size() + 1
    std::vector<EdgeLabel> labels;  // label of the edge taken at each step
    std::size_t product_states = 0; // states materialized in the product with the word
};

// Accepting path for `word`, found by exploring the product of `m` with the
// singleton machine of `word` one symbol at a time. Deterministic: the first
// discovered predecessor is kept.
std::optional<Run> accepting_run(const Nfa& m, std::span<const SymbolId> word);

struct Quotient {
    Nfa nfa;  // edge labels are dropped
    std::vector<StateId> class_of;  // original state -> quotient state
};

// Quotient by the coarsest forward bisimulation, ignoring edge labels.
// Accepts the same language as `m`.
Quotient bisimulation_quotient(const Nfa& m);

// Turns an accepting run of q.nfa into one of `m` over the same word, picking
// at each step the first edge whose target lies in the next class. Every such
// step exists because classes are bisimulation classes.
Run lift_run(const Nfa& m, const Quotient& q, const Run& quotient_run, std::span<const SymbolId> word);

// Same states and edges with every edge reversed and initial/final swapped.
Nfa reverse(const Nfa& m);

// Forward, then backward, then forward bisimulation quotient. The reduced
// machine accepts the same language; runs on it lift back to `m`.
class Reduction {
public:
    Reduction() = default;
    explicit Reduction(const Nfa& m);

    const Nfa& nfa() const { return last_.nfa; }
    // Accepting run of the original machine following `reduced_run`.
    Run lift(const Nfa& original, const Run& reduced_run, std::span<const SymbolId> word) const;

private:
    Quotient first_;      // original -> forward classes
    Nfa first_reversed_;  // predecessor lookup in first_.nfa
    Quotient backward_;   // first_.nfa -> backward classes (class_of only)
    Nfa middle_;          // forward orientation of the backward quotient
    Quotient last_;       // middle_ -> forward classes
};

}  // namespace binsq

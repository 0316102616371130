#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "binsq/automata.hpp"
#include "binsq/automata_export.hpp"

using namespace binsq;

namespace {

Nfa random_nfa(std::mt19937_64& rng, std::size_t states, std::size_t symbols, double density) {
    std::uniform_real_distribution<double> coin(0, 1);
    NfaBuilder b(symbols);
    b.add_states(states);
    b.add_initial(0);
    if (coin(rng) < 0.3) b.add_initial(static_cast<StateId>(rng() % states));
    for (StateId s = 0; s < states; ++s) {
        if (coin(rng) < 0.35) b.set_final(s);
        for (SymbolId a = 0; a < symbols; ++a) {
            for (StateId t = 0; t < states; ++t) {
                if (coin(rng) < density) b.add_edge(s, a, t, static_cast<EdgeLabel>(rng() % 100));
            }
        }
    }
    return b.build();
}

// Every word over `symbols` letters of length <= max_len, shortest first.
std::vector<Word> all_words(std::size_t symbols, std::size_t max_len) {
    std::vector<Word> out{{}};
    for (std::size_t begin = 0, len = 0; len < max_len; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (SymbolId a = 0; a < symbols; ++a) {
                Word w = out[i];
                w.push_back(a);
                out.push_back(std::move(w));
            }
        }
        begin = end;
    }
    return out;
}

// Direct subset simulation, independent of the library.
bool simulate(const Nfa& m, const Word& w) {
    std::vector<char> cur(m.num_states(), 0);
    for (StateId s : m.initials()) cur[s] = 1;
    for (SymbolId a : w) {
        std::vector<char> next(m.num_states(), 0);
        for (const Edge& e : m.edges()) {
            if (e.symbol == a && cur[e.from]) next[e.to] = 1;
        }
        cur = std::move(next);
    }
    for (StateId s = 0; s < m.num_states(); ++s) {
        if (cur[s] && m.is_final(s)) return true;
    }
    return false;
}

bool valid_run(const Nfa& m, const Run& r, const Word& w) {
    if (r.states.size() != w.size() + 1) return false;
    if (std::find(m.initials().begin(), m.initials().end(), r.states[0]) == m.initials().end()) return false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto succ = m.successors(r.states[i], w[i]);
        const auto lab = m.labels(r.states[i], w[i]);
        const auto it = std::find(succ.begin(), succ.end(), r.states[i + 1]);
        if (it == succ.end()) return false;
        if (lab[static_cast<std::size_t>(it - succ.begin())] != r.labels[i]) return false;
    }
    return m.is_final(r.states.back());
}

constexpr std::size_t kMaxLen = 7;

}  // namespace

TEST(Automata, AcceptsMatchesSimulation) {
    std::mt19937_64 rng(1);
    const auto words = all_words(2, kMaxLen);
    for (int trial = 0; trial < 60; ++trial) {
        const Nfa m = random_nfa(rng, 1 + rng() % 6, 2, 0.25);
        for (const Word& w : words) ASSERT_EQ(accepts(m, w), simulate(m, w));
    }
}

TEST(Automata, UnionAndProductSemantics) {
    std::mt19937_64 rng(2);
    const auto words = all_words(2, kMaxLen);
    for (int trial = 0; trial < 60; ++trial) {
        const Nfa a = random_nfa(rng, 1 + rng() % 5, 2, 0.3);
        const Nfa b = random_nfa(rng, 1 + rng() % 5, 2, 0.3);
        const std::vector<Nfa> both{a, b};
        const Nfa u = union_of(both);
        const Nfa p = intersect(a, b);
        for (const Word& w : words) {
            const bool in_a = simulate(a, w), in_b = simulate(b, w);
            ASSERT_EQ(accepts(u, w), in_a || in_b);
            ASSERT_EQ(accepts(p, w), in_a && in_b);
        }
    }
}

TEST(Automata, InclusionAgreesWithEnumeration) {
    std::mt19937_64 rng(3);
    const auto words = all_words(2, kMaxLen);
    int holds = 0, fails = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Nfa container = random_nfa(rng, 1 + rng() % 5, 2, 0.35);
        Nfa contained = random_nfa(rng, 1 + rng() % 4, 2, 0.3);
        if (trial % 3 == 0) contained = intersect(container, contained);  // forces inclusion
        for (const bool antichain : {true, false}) {
            const auto v = includes(container, contained, {antichain});
            ASSERT_EQ(v.holds, !v.counterexample.has_value());
            if (v.holds) {
                for (const Word& w : words) ASSERT_FALSE(simulate(contained, w) && !simulate(container, w));
            } else {
                const Word& cx = *v.counterexample;
                ASSERT_TRUE(simulate(contained, cx));
                ASSERT_FALSE(simulate(container, cx));
                for (const Word& w : words) {
                    if (w.size() >= cx.size()) break;
                    ASSERT_FALSE(simulate(contained, w) && !simulate(container, w)) << "counterexample not shortest";
                }
            }
        }
        (includes(container, contained).holds ? holds : fails)++;
    }
    EXPECT_GT(holds, 20);
    EXPECT_GT(fails, 20);
}

TEST(Automata, ShortestWordAndEmptiness) {
    std::mt19937_64 rng(4);
    const auto words = all_words(3, 5);
    for (int trial = 0; trial < 100; ++trial) {
        const Nfa m = random_nfa(rng, 1 + rng() % 5, 3, 0.15);
        const auto w = shortest_word(m);
        ASSERT_EQ(is_empty(m), !w.has_value());
        const auto first = std::find_if(words.begin(), words.end(), [&](const Word& x) { return simulate(m, x); });
        if (first != words.end()) {
            ASSERT_TRUE(w.has_value());
            ASSERT_EQ(w->size(), first->size());
            ASSERT_TRUE(simulate(m, *w));
        } else if (w) {
            ASSERT_GT(w->size(), 5u);
        }
    }
}

TEST(Automata, TrimQuotientReductionPreserveLanguage) {
    std::mt19937_64 rng(5);
    const auto words = all_words(2, kMaxLen);
    for (int trial = 0; trial < 80; ++trial) {
        const Nfa m = random_nfa(rng, 2 + rng() % 7, 2, 0.25);
        const TrimResult t = trim(m);
        const Quotient q = bisimulation_quotient(m);
        const Reduction r(m);
        ASSERT_LE(q.nfa.num_states(), m.num_states());
        ASSERT_LE(r.nfa().num_states(), m.num_states());
        const Nfa rev = reverse(m);
        for (const Word& w : words) {
            const bool in = simulate(m, w);
            ASSERT_EQ(accepts(t.nfa, w), in);
            ASSERT_EQ(accepts(q.nfa, w), in);
            ASSERT_EQ(accepts(r.nfa(), w), in);
            const Word back(w.rbegin(), w.rend());
            ASSERT_EQ(accepts(rev, back), in);
            const auto run = accepting_run(m, w);
            ASSERT_EQ(run.has_value(), in);
            if (!in) continue;
            ASSERT_TRUE(valid_run(m, *run, w));
            const auto qrun = accepting_run(q.nfa, w);
            ASSERT_TRUE(qrun.has_value());
            ASSERT_TRUE(valid_run(m, lift_run(m, q, *qrun, w), w));
            const auto rrun = accepting_run(r.nfa(), w);
            ASSERT_TRUE(rrun.has_value());
            ASSERT_TRUE(valid_run(m, r.lift(m, *rrun, w), w));
        }
    }
}

TEST(Automata, SingletonAndLabels) {
    const Word w{1, 0, 2, 2};
    const Nfa s = singleton(3, w);
    EXPECT_TRUE(accepts(s, w));
    EXPECT_FALSE(accepts(s, Word{1, 0, 2}));
    EXPECT_EQ(shortest_word(s), w);
    NfaBuilder b(2);
    b.add_states(2);
    b.add_initial(0);
    b.set_final(1);
    b.add_edge(0, 1, 1, 7);
    b.add_edge(0, 1, 1, 9);  // duplicate triple, first label wins
    b.add_edge(0, 0, 0);
    const Nfa m = b.build();
    EXPECT_EQ(m.num_transitions(), 2u);
    EXPECT_EQ(m.labels(0, 1)[0], 7u);
    const Nfa shifted = offset_labels(m, 10);
    EXPECT_EQ(shifted.labels(0, 1)[0], 17u);
    EXPECT_EQ(shifted.labels(0, 0)[0], kNoLabel);
}

TEST(Automata, Errors) {
    const Nfa two = Nfa::empty(2);
    const Nfa three = Nfa::empty(3);
    EXPECT_THROW(intersect(two, three), AlphabetMismatch);
    EXPECT_THROW(includes(two, three), AlphabetMismatch);
    EXPECT_THROW(accepts(two, Word{5}), ForeignSymbol);
    NfaBuilder b(2);
    b.add_state();
    EXPECT_THROW(b.add_edge(0, 2, 0), ForeignSymbol);
    EXPECT_THROW(b.add_edge(0, 0, 4), std::out_of_range);
    EXPECT_TRUE(is_empty(two));
    EXPECT_TRUE(includes(two, two).holds);
}

TEST(Automata, ExportFormats) {
    NfaBuilder b(2);
    b.add_states(2);
    b.add_initial(0);
    b.set_final(1);
    b.add_edge(0, 1, 1);
    b.add_edge(1, 0, 1);
    const Nfa m = b.build();
    const auto name = [](SymbolId a) { return a == 0 ? std::string("x") : std::string("y"); };
    std::ostringstream dot, ats;
    write_dot(dot, m, name, "g");
    write_ats(ats, m, name, "g");
    EXPECT_NE(dot.str().find("digraph"), std::string::npos);
    EXPECT_NE(dot.str().find("\"y\""), std::string::npos);
    EXPECT_NE(ats.str().find("NestedWordAutomaton g"), std::string::npos);
    EXPECT_NE(ats.str().find("internalAlphabet = { \"x\" \"y\" }"), std::string::npos);
    EXPECT_NE(ats.str().find("finalStates"), std::string::npos);
}

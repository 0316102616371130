#include "binsq/automata.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace binsq {

namespace {

void require_same_alphabet(const Nfa& a, const Nfa& b) {
    if (a.num_symbols() != b.num_symbols()) {
        throw AlphabetMismatch("alphabet sizes differ: " + std::to_string(a.num_symbols()) + " vs " +
                               std::to_string(b.num_symbols()));
    }
}

void require_symbol(const Nfa& m, SymbolId a) {
    if (a >= m.num_symbols()) throw ForeignSymbol("symbol " + std::to_string(a) + " not in alphabet");
}

struct VectorHash {
    std::size_t operator()(const std::vector<StateId>& v) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
        for (StateId s : v) {
            h ^= s + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

// Interned sets of container states for the lazy subset construction.
class SubsetTable {
public:
    std::uint32_t intern(std::vector<StateId>&& set) {
        auto [it, inserted] = index_.try_emplace(std::move(set), static_cast<std::uint32_t>(sets_.size()));
        if (inserted) sets_.push_back(&it->first);
        return it->second;
    }
    const std::vector<StateId>& get(std::uint32_t id) const { return *sets_[id]; }
    std::size_t size() const { return sets_.size(); }

private:
    std::unordered_map<std::vector<StateId>, std::uint32_t, VectorHash> index_;
    std::vector<const std::vector<StateId>*> sets_;
};

}  // namespace

Nfa Nfa::empty(std::size_t num_symbols) {
    Nfa m;
    m.num_symbols_ = num_symbols;
    return m;
}

std::vector<StateId> Nfa::finals() const {
    std::vector<StateId> out;
    for (StateId s = 0; s < num_states_; ++s) {
        if (final_[s]) out.push_back(s);
    }
    return out;
}

std::vector<Edge> Nfa::edges() const {
    std::vector<Edge> out;
    out.reserve(targets_.size());
    for (StateId s = 0; s < num_states_; ++s) {
        for (std::size_t a = 0; a < num_symbols_; ++a) {
            const std::size_t slot = static_cast<std::size_t>(s) * num_symbols_ + a;
            for (std::uint32_t i = offsets_[slot]; i < offsets_[slot + 1]; ++i) {
                out.push_back(Edge{s, static_cast<SymbolId>(a), targets_[i], labels_[i]});
            }
        }
    }
    return out;
}

StateId NfaBuilder::add_state() {
    final_.push_back(0);
    return static_cast<StateId>(final_.size() - 1);
}

StateId NfaBuilder::add_states(std::size_t count) {
    const auto first = static_cast<StateId>(final_.size());
    final_.resize(final_.size() + count, 0);
    return first;
}

void NfaBuilder::add_initial(StateId s) {
    if (s >= final_.size()) throw std::out_of_range("initial state not declared");
    initials_.push_back(s);
}

void NfaBuilder::set_final(StateId s, bool final) {
    if (s >= final_.size()) throw std::out_of_range("final state not declared");
    final_[s] = final ? 1 : 0;
}

void NfaBuilder::add_edge(StateId from, SymbolId symbol, StateId to, EdgeLabel label) {
    if (from >= final_.size() || to >= final_.size()) throw std::out_of_range("edge endpoint not declared");
    if (symbol >= num_symbols_) throw ForeignSymbol("edge symbol outside alphabet");
    edges_.push_back(Edge{from, symbol, to, label});
}

Nfa NfaBuilder::build() const {
    Nfa m;
    m.num_states_ = final_.size();
    m.num_symbols_ = num_symbols_;
    m.final_ = final_;
    m.initials_ = initials_;
    std::sort(m.initials_.begin(), m.initials_.end());
    m.initials_.erase(std::unique(m.initials_.begin(), m.initials_.end()), m.initials_.end());

    std::vector<Edge> edges = edges_;
    std::stable_sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
        if (x.from != y.from) return x.from < y.from;
        if (x.symbol != y.symbol) return x.symbol < y.symbol;
        return x.to < y.to;
    });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& x, const Edge& y) {
                                return x.from == y.from && x.symbol == y.symbol && x.to == y.to;
                            }),
                edges.end());

    const std::size_t slots = m.num_states_ * num_symbols_;
    m.offsets_.assign(slots + 1, 0);
    for (const Edge& e : edges) ++m.offsets_[static_cast<std::size_t>(e.from) * num_symbols_ + e.symbol + 1];
    for (std::size_t i = 0; i < slots; ++i) m.offsets_[i + 1] += m.offsets_[i];
    m.targets_.reserve(edges.size());
    m.labels_.reserve(edges.size());
    for (const Edge& e : edges) {
        m.targets_.push_back(e.to);
        m.labels_.push_back(e.label);
    }
    return m;
}

Nfa union_of(std::span<const Nfa> machines) {
    if (machines.empty()) throw std::invalid_argument("union of zero machines");
    for (const Nfa& m : machines) require_same_alphabet(machines.front(), m);
    NfaBuilder b(machines.front().num_symbols());
    for (const Nfa& m : machines) {
        const StateId base = b.add_states(m.num_states());
        for (StateId s : m.initials()) b.add_initial(base + s);
        for (StateId s = 0; s < m.num_states(); ++s) {
            if (m.is_final(s)) b.set_final(base + s);
        }
        for (const Edge& e : m.edges()) b.add_edge(base + e.from, e.symbol, base + e.to, e.label);
    }
    return b.build();
}

Nfa intersect(const Nfa& a, const Nfa& b) {
    require_same_alphabet(a, b);
    NfaBuilder out(a.num_symbols());
    std::unordered_map<std::uint64_t, StateId> index;
    std::deque<std::pair<StateId, StateId>> work;
    auto visit = [&](StateId x, StateId y) {
        const std::uint64_t key = (static_cast<std::uint64_t>(x) << 32) | y;
        auto [it, inserted] = index.try_emplace(key, kNoState);
        if (inserted) {
            it->second = out.add_state();
            if (a.is_final(x) && b.is_final(y)) out.set_final(it->second);
            work.emplace_back(x, y);
        }
        return it->second;
    };
    for (StateId x : a.initials()) {
        for (StateId y : b.initials()) out.add_initial(visit(x, y));
    }
    while (!work.empty()) {
        const auto [x, y] = work.front();
        work.pop_front();
        const StateId from = index.at((static_cast<std::uint64_t>(x) << 32) | y);
        for (std::size_t sym = 0; sym < a.num_symbols(); ++sym) {
            const auto symbol = static_cast<SymbolId>(sym);
            const auto xs = a.successors(x, symbol);
            if (xs.empty()) continue;
            const auto ys = b.successors(y, symbol);
            const auto xl = a.labels(x, symbol);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                for (StateId y2 : ys) out.add_edge(from, symbol, visit(xs[i], y2), xl[i]);
            }
        }
    }
    return out.build();
}

bool accepts(const Nfa& m, std::span<const SymbolId> word) {
    for (SymbolId a : word) require_symbol(m, a);
    std::vector<StateId> current(m.initials().begin(), m.initials().end());
    std::vector<std::uint8_t> mark(m.num_states(), 0);
    std::vector<StateId> next;
    for (SymbolId a : word) {
        next.clear();
        for (StateId s : current) {
            for (StateId t : m.successors(s, a)) {
                if (!mark[t]) {
                    mark[t] = 1;
                    next.push_back(t);
                }
            }
        }
        for (StateId t : next) mark[t] = 0;
        current.swap(next);
        if (current.empty()) return false;
    }
    return std::any_of(current.begin(), current.end(), [&](StateId s) { return m.is_final(s); });
}

std::optional<Word> shortest_word(const Nfa& m) {
    struct Parent {
        StateId prev;
        SymbolId symbol;
    };
    std::vector<Parent> parent(m.num_states(), Parent{kNoState, 0});
    std::vector<std::uint8_t> seen(m.num_states(), 0);
    std::deque<StateId> queue;
    for (StateId s : m.initials()) {
        if (!seen[s]) {
            seen[s] = 1;
            queue.push_back(s);
        }
    }
    auto rebuild = [&](StateId s) {
        Word w;
        while (parent[s].prev != kNoState) {
            w.push_back(parent[s].symbol);
            s = parent[s].prev;
        }
        std::reverse(w.begin(), w.end());
        return w;
    };
    while (!queue.empty()) {
        const StateId s = queue.front();
        queue.pop_front();
        if (m.is_final(s)) return rebuild(s);
        for (std::size_t a = 0; a < m.num_symbols(); ++a) {
            for (StateId t : m.successors(s, static_cast<SymbolId>(a))) {
                if (!seen[t]) {
                    seen[t] = 1;
                    parent[t] = Parent{s, static_cast<SymbolId>(a)};
                    queue.push_back(t);
                }
            }
        }
    }
    return std::nullopt;
}

bool is_empty(const Nfa& m) { return !shortest_word(m).has_value(); }

InclusionVerdict includes(const Nfa& container, const Nfa& contained, InclusionOptions options) {
    require_same_alphabet(container, contained);
    const std::size_t nsym = container.num_symbols();

    SubsetTable subsets;
    std::unordered_map<std::uint64_t, std::uint32_t> post_cache;
    std::vector<std::uint8_t> mark(container.num_states(), 0);
    std::vector<std::uint8_t> accepting_subset;  // by subset id

    auto subset_accepts = [&](std::uint32_t id) -> bool {
        if (id >= accepting_subset.size()) accepting_subset.resize(id + 1, 2);
        if (accepting_subset[id] == 2) {
            const auto& set = subsets.get(id);
            accepting_subset[id] =
                std::any_of(set.begin(), set.end(), [&](StateId s) { return container.is_final(s); }) ? 1 : 0;
        }
        return accepting_subset[id] == 1;
    };

    auto post = [&](std::uint32_t id, SymbolId a) -> std::uint32_t {
        const std::uint64_t key = static_cast<std::uint64_t>(id) * nsym + a;
        if (auto it = post_cache.find(key); it != post_cache.end()) return it->second;
        std::vector<StateId> next;
        for (StateId s : subsets.get(id)) {
            for (StateId t : container.successors(s, a)) {
                if (!mark[t]) {
                    mark[t] = 1;
                    next.push_back(t);
                }
            }
        }
        for (StateId t : next) mark[t] = 0;
        std::sort(next.begin(), next.end());
        const std::uint32_t out = subsets.intern(std::move(next));
        post_cache.emplace(key, out);
        return out;
    };

    struct Node {
        StateId q;
        std::uint32_t subset;
        std::uint32_t parent;
        SymbolId symbol;
    };
    std::vector<Node> nodes;
    std::unordered_set<std::uint64_t> visited;
    std::vector<std::vector<std::uint32_t>> frontier_sets(contained.num_states());

    auto rebuild = [&](std::uint32_t idx) {
        Word w;
        while (nodes[idx].parent != kNoState) {
            w.push_back(nodes[idx].symbol);
            idx = nodes[idx].parent;
        }
        std::reverse(w.begin(), w.end());
        return w;
    };

    // Returns false when the pair is already covered.
    auto admit = [&](StateId q, std::uint32_t subset) -> bool {
        const std::uint64_t key = (static_cast<std::uint64_t>(q) << 32) | subset;
        if (!visited.insert(key).second) return false;
        if (!options.antichain) return true;
        const auto& set = subsets.get(subset);
        auto& chain = frontier_sets[q];
        for (std::uint32_t other : chain) {
            const auto& o = subsets.get(other);
            if (o.size() <= set.size() && std::includes(set.begin(), set.end(), o.begin(), o.end())) {
                return false;
            }
        }
        std::erase_if(chain, [&](std::uint32_t other) {
            const auto& o = subsets.get(other);
            return o.size() >= set.size() && std::includes(o.begin(), o.end(), set.begin(), set.end());
        });
        chain.push_back(subset);
        return true;
    };

    InclusionVerdict verdict;
    std::vector<StateId> init(container.initials().begin(), container.initials().end());
    const std::uint32_t init_id = subsets.intern(std::move(init));

    std::size_t head = 0;
    for (StateId q : contained.initials()) {
        if (!admit(q, init_id)) continue;
        nodes.push_back(Node{q, init_id, kNoState, 0});
        if (contained.is_final(q) && !subset_accepts(init_id)) {
            verdict.holds = false;
            verdict.counterexample = Word{};
            verdict.product_states = nodes.size();
            verdict.subset_states = subsets.size();
            return verdict;
        }
    }
    while (head < nodes.size()) {
        const Node node = nodes[head];
        const auto idx = static_cast<std::uint32_t>(head++);
        for (std::size_t sym = 0; sym < nsym; ++sym) {
            const auto a = static_cast<SymbolId>(sym);
            const auto qs = contained.successors(node.q, a);
            if (qs.empty()) continue;
            const std::uint32_t next = post(node.subset, a);
            for (StateId q2 : qs) {
                if (!admit(q2, next)) continue;
                nodes.push_back(Node{q2, next, idx, a});
                if (contained.is_final(q2) && !subset_accepts(next)) {
                    verdict.holds = false;
                    verdict.counterexample = rebuild(static_cast<std::uint32_t>(nodes.size() - 1));
                    verdict.product_states = nodes.size();
                    verdict.subset_states = subsets.size();
                    return verdict;
                }
            }
        }
    }
    verdict.product_states = nodes.size();
    verdict.subset_states = subsets.size();
    return verdict;
}

TrimResult trim(const Nfa& m) {
    const std::size_t n = m.num_states();
    std::vector<std::uint8_t> fwd(n, 0), bwd(n, 0);
    std::vector<StateId> stack;
    for (StateId s : m.initials()) {
        if (!fwd[s]) {
            fwd[s] = 1;
            stack.push_back(s);
        }
    }
    const std::vector<Edge> edges = m.edges();
    while (!stack.empty()) {
        const StateId s = stack.back();
        stack.pop_back();
        for (std::size_t a = 0; a < m.num_symbols(); ++a) {
            for (StateId t : m.successors(s, static_cast<SymbolId>(a))) {
                if (!fwd[t]) {
                    fwd[t] = 1;
                    stack.push_back(t);
                }
            }
        }
    }
    std::vector<std::uint32_t> rev_offsets(n + 1, 0);
    for (const Edge& e : edges) ++rev_offsets[e.to + 1];
    for (std::size_t i = 0; i < n; ++i) rev_offsets[i + 1] += rev_offsets[i];
    std::vector<StateId> rev(edges.size());
    {
        std::vector<std::uint32_t> fill(rev_offsets.begin(), rev_offsets.end() - 1);
        for (const Edge& e : edges) rev[fill[e.to]++] = e.from;
    }
    for (StateId s = 0; s < n; ++s) {
        if (m.is_final(s)) {
            bwd[s] = 1;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        const StateId s = stack.back();
        stack.pop_back();
        for (std::uint32_t i = rev_offsets[s]; i < rev_offsets[s + 1]; ++i) {
            if (!bwd[rev[i]]) {
                bwd[rev[i]] = 1;
                stack.push_back(rev[i]);
            }
        }
    }

    TrimResult result;
    result.old_to_new.assign(n, kNoState);
    NfaBuilder b(m.num_symbols());
    for (StateId s = 0; s < n; ++s) {
        if (fwd[s] && bwd[s]) {
            result.old_to_new[s] = b.add_state();
            if (m.is_final(s)) b.set_final(result.old_to_new[s]);
        }
    }
    for (StateId s : m.initials()) {
        if (result.old_to_new[s] != kNoState) b.add_initial(result.old_to_new[s]);
    }
    for (const Edge& e : edges) {
        const StateId from = result.old_to_new[e.from];
        const StateId to = result.old_to_new[e.to];
        if (from != kNoState && to != kNoState) b.add_edge(from, e.symbol, to, e.label);
    }
    result.nfa = b.build();
    return result;
}

Nfa singleton(std::size_t num_symbols, std::span<const SymbolId> word) {
    NfaBuilder b(num_symbols);
    StateId s = b.add_state();
    b.add_initial(s);
    for (SymbolId a : word) {
        const StateId t = b.add_state();
        b.add_edge(s, a, t);
        s = t;
    }
    b.set_final(s);
    return b.build();
}

Nfa offset_labels(const Nfa& m, EdgeLabel offset) {
    NfaBuilder b(m.num_symbols());
    b.add_states(m.num_states());
    for (StateId s : m.initials()) b.add_initial(s);
    for (StateId s = 0; s < m.num_states(); ++s) {
        if (m.is_final(s)) b.set_final(s);
    }
    for (const Edge& e : m.edges()) {
        b.add_edge(e.from, e.symbol, e.to, e.label == kNoLabel ? kNoLabel : e.label + offset);
    }
    return b.build();
}

std::optional<Run> accepting_run(const Nfa& m, std::span<const SymbolId> word) {
    for (SymbolId a : word) require_symbol(m, a);
    struct Entry {
        StateId state;
        std::uint32_t parent;  // index into previous layer
        EdgeLabel label;
    };
    std::vector<std::vector<Entry>> layers(word.size() + 1);
    std::vector<std::uint32_t> stamp(m.num_states(), kNoState);
    for (StateId s : m.initials()) {
        if (stamp[s] != 0) {
            stamp[s] = 0;
            layers[0].push_back(Entry{s, kNoState, kNoLabel});
        }
    }
    std::size_t product_states = layers[0].size();
    for (std::size_t j = 0; j < word.size(); ++j) {
        const auto layer_id = static_cast<std::uint32_t>(j + 1);
        const auto& cur = layers[j];
        auto& next = layers[j + 1];
        for (std::uint32_t i = 0; i < cur.size(); ++i) {
            const auto succ = m.successors(cur[i].state, word[j]);
            const auto labs = m.labels(cur[i].state, word[j]);
            for (std::size_t e = 0; e < succ.size(); ++e) {
                if (stamp[succ[e]] != layer_id) {
                    stamp[succ[e]] = layer_id;
                    next.push_back(Entry{succ[e], i, labs[e]});
                }
            }
        }
        product_states += next.size();
        if (next.empty()) return std::nullopt;
    }
    const auto& last = layers.back();
    auto hit = std::find_if(last.begin(), last.end(), [&](const Entry& e) { return m.is_final(e.state); });
    if (hit == last.end()) return std::nullopt;

    Run run;
    run.product_states = product_states;
    run.states.resize(word.size() + 1);
    run.labels.resize(word.size());
    auto idx = static_cast<std::uint32_t>(hit - last.begin());
    for (std::size_t j = word.size() + 1; j-- > 0;) {
        const Entry& e = layers[j][idx];
        run.states[j] = e.state;
        if (j > 0) run.labels[j - 1] = e.label;
        idx = e.parent;
    }
    return run;
}

}  // namespace binsq

namespace binsq {

namespace {

struct SignatureHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ull ^ v.size();
        for (std::uint64_t x : v) h = (h ^ x) * 0x100000001b3ull + (h >> 29);
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

Quotient bisimulation_quotient(const Nfa& m) {
    const std::size_t n = m.num_states();
    std::vector<StateId> cls(n);
    for (StateId s = 0; s < n; ++s) cls[s] = m.is_final(s) ? 1 : 0;
    std::size_t classes = 0;
    std::vector<std::uint64_t> sig, moves;
    while (true) {
        std::unordered_map<std::vector<std::uint64_t>, StateId, SignatureHash> index;
        std::vector<StateId> next(n);
        for (StateId s = 0; s < n; ++s) {
            sig.assign(1, cls[s]);
            for (SymbolId a = 0; a < m.num_symbols(); ++a) {
                moves.clear();
                for (StateId t : m.successors(s, a)) moves.push_back(std::uint64_t{a} << 32 | cls[t]);
                std::sort(moves.begin(), moves.end());
                moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
                sig.insert(sig.end(), moves.begin(), moves.end());
            }
            next[s] = index.try_emplace(sig, static_cast<StateId>(index.size())).first->second;
        }
        // Each round refines the previous partition, so an unchanged count is a fixed point.
        const bool stable = index.size() == classes;
        classes = index.size();
        cls = std::move(next);
        if (stable) break;
    }
    NfaBuilder b(m.num_symbols());
    b.add_states(classes);
    for (StateId s : m.initials()) b.add_initial(cls[s]);
    for (StateId s = 0; s < n; ++s) {
        if (m.is_final(s)) b.set_final(cls[s]);
    }
    for (const Edge& e : m.edges()) b.add_edge(cls[e.from], e.symbol, cls[e.to]);
    return {b.build(), std::move(cls)};
}

Run lift_run(const Nfa& m, const Quotient& q, const Run& quotient_run, std::span<const SymbolId> word) {
    if (quotient_run.states.size() != word.size() + 1) throw std::invalid_argument("run and word lengths differ");
    Run run;
    run.product_states = quotient_run.product_states;
    StateId cur = kNoState;
    for (StateId s : m.initials()) {
        if (q.class_of[s] == quotient_run.states[0]) {
            cur = s;
            break;
        }
    }
    if (cur == kNoState) throw std::logic_error("quotient run does not start in an initial class");
    run.states.push_back(cur);
    for (std::size_t j = 0; j < word.size(); ++j) {
        const auto succ = m.successors(cur, word[j]);
        const auto labs = m.labels(cur, word[j]);
        std::size_t e = 0;
        while (e < succ.size() && q.class_of[succ[e]] != quotient_run.states[j + 1]) ++e;
        if (e == succ.size()) throw std::logic_error("quotient run leaves its bisimulation class");
        cur = succ[e];
        run.states.push_back(cur);
        run.labels.push_back(labs[e]);
    }
    if (!m.is_final(cur)) throw std::logic_error("lifted run does not end in a final state");
    return run;
}

}  // namespace binsq

namespace binsq {

Nfa reverse(const Nfa& m) {
    NfaBuilder b(m.num_symbols());
    b.add_states(m.num_states());
    for (StateId s : m.finals()) b.add_initial(s);
    for (StateId s : m.initials()) b.set_final(s);
    for (const Edge& e : m.edges()) b.add_edge(e.to, e.symbol, e.from, e.label);
    return b.build();
}

Reduction::Reduction(const Nfa& m) : first_(bisimulation_quotient(m)) {
    first_reversed_ = reverse(first_.nfa);
    backward_ = bisimulation_quotient(first_reversed_);
    middle_ = reverse(backward_.nfa);
    backward_.nfa = Nfa();
    last_ = bisimulation_quotient(middle_);
}

Run Reduction::lift(const Nfa& original, const Run& reduced_run, std::span<const SymbolId> word) const {
    const Run middle = lift_run(middle_, last_, reduced_run, word);

    // Backward classes: walk predecessors from a final state of the first quotient.
    const std::size_t len = word.size();
    std::vector<StateId> states(len + 1, kNoState);
    for (StateId s : first_reversed_.initials()) {
        if (backward_.class_of[s] == middle.states[len]) {
            states[len] = s;
            break;
        }
    }
    if (states[len] == kNoState) throw std::logic_error("reduced run does not end in a final class");
    for (std::size_t j = len; j-- > 0;) {
        StateId pick = kNoState;
        for (StateId p : first_reversed_.successors(states[j + 1], word[j])) {
            if (backward_.class_of[p] == middle.states[j]) {
                pick = p;
                break;
            }
        }
        if (pick == kNoState) throw std::logic_error("reduced run leaves its backward class");
        states[j] = pick;
    }
    if (!first_reversed_.is_final(states[0])) throw std::logic_error("lifted run does not start initially");

    Run first;
    first.states = std::move(states);
    first.labels.assign(len, kNoLabel);
    Run out = lift_run(original, first_, first, word);
    out.product_states = reduced_run.product_states;
    return out;
}

}  // namespace binsq

#include "binsq/lemma_machines.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

#include "json.hpp"

namespace binsq {

unsigned SummandProfile::total_count() const {
    unsigned total = 0;
    for (const auto& g : groups) total += g.count;
    return total;
}

std::pair<unsigned, unsigned> digit_step(std::span<const unsigned> addends, unsigned carry_in) {
    const unsigned sum = std::accumulate(addends.begin(), addends.end(), carry_in);
    return {sum & 1u, sum >> 1};
}

int group_shift(Parity parity, int length_offset) {
    if (parity == Parity::Odd) {
        if (length_offset % 2 == 0) throw std::invalid_argument("odd inputs take odd length offsets");
        return (length_offset - 1) / 2;
    }
    if (length_offset % 2 != 0) throw std::invalid_argument("even inputs take even length offsets");
    return length_offset / 2 - 2;
}

namespace {

// Largest shift whose wrap and zero regions the parity's end tags can see.
int max_shift(Parity parity) { return parity == Parity::Odd ? 2 : 1; }

unsigned columns_for_length(Parity parity, unsigned n) {
    if (parity == Parity::Odd) return n / 2;
    return n > 4 ? (n - 3) / 2 : 0;
}

unsigned length_for_columns(Parity parity, unsigned h) {
    return parity == Parity::Odd ? 2 * h + 1 : 2 * h + 4;
}

struct Group {
    int shift;
    std::uint8_t count;
};

struct Geometry {
    Parity parity;
    bool pin_top;
    std::vector<Group> groups;
    unsigned powers;
    unsigned carry;
    unsigned bound;
    unsigned min_columns;
    unsigned phase_cap;
};

Geometry geometry_of(const MachineSpec& spec) {
    Geometry geo{};
    geo.parity = spec.parity;
    geo.pin_top = spec.kind == SquareKind::Binary;
    geo.powers = spec.max_powers;
    geo.carry = spec.profile.carry;
    if (spec.profile.groups.size() > kMaxGroups) throw std::invalid_argument("too many summand groups");
    unsigned min_columns = std::max(1u, columns_for_length(spec.parity, spec.min_source_length));
    int cap = 0;
    for (const auto& g : spec.profile.groups) {
        if (g.count == 0) continue;
        if (g.count > 15) throw std::invalid_argument("summand count too large");
        const int s = group_shift(spec.parity, g.length_offset);
        if (s > max_shift(spec.parity) || s < -2) throw std::invalid_argument("summand length outside the supported band");
        geo.groups.push_back({s, static_cast<std::uint8_t>(g.count)});
        if (s > 0) min_columns = std::max(min_columns, 2u * s);
        if (s < 0) min_columns = std::max(min_columns, static_cast<unsigned>(-s));
        cap = std::max(cap, std::abs(s));
    }
    geo.bound = spec.addend_bound();
    if (geo.bound == 0) throw std::invalid_argument("profile has no summands");
    if (geo.carry >= geo.bound) throw std::invalid_argument("carry must be below the number of addends");
    if (geo.powers > 15) throw std::invalid_argument("too many powers of two");
    geo.min_columns = min_columns;
    geo.phase_cap = std::max<unsigned>(cap, min_columns);
    if (geo.phase_cap > 250) throw std::invalid_argument("minimum length too large");
    return geo;
}

struct StateHash {
    std::size_t operator()(const GuessState& s) const noexcept {
        static_assert(sizeof(GuessState) == 5 + kMaxGroups * sizeof(GroupMemory));
        return std::hash<std::string_view>{}(
            std::string_view(reinterpret_cast<const char*>(&s), sizeof(GuessState)));
    }
};

std::uint64_t pack(const EdgeGuess& g) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < kMaxGroups; ++i) key = key << 4 | g.low[i];
    for (std::size_t i = 0; i < kMaxGroups; ++i) key = key << 4 | g.high[i];
    return key << 8 | std::uint64_t{g.power_low} << 4 | g.power_high;
}

void push(std::uint8_t& len, std::array<std::uint8_t, 2>& buf, std::uint8_t v) { buf[len++] = v; }

std::uint8_t pop_front(std::uint8_t& len, std::array<std::uint8_t, 2>& buf) {
    const std::uint8_t v = buf[0];
    buf[0] = buf[1];
    buf[1] = 0;
    --len;
    return v;
}

struct Option {
    std::uint8_t low;
    std::uint8_t high;
    GroupMemory memory;
};

class Generator {
public:
    explicit Generator(const MachineSpec& spec) : spec_(spec), geo_(geometry_of(spec)), builder_(kFoldedAlphabetSize) {}

    LemmaMachine run() {
        GuessState init{};
        init.carry_high = static_cast<std::uint8_t>(geo_.carry);
        builder_.add_initial(intern(init));
        GuessState accept{};
        accept.section = done_section();
        accept_ = intern(accept);
        builder_.set_final(accept_);
        while (!work_.empty()) {
            const StateId id = work_.front();
            work_.pop_front();
            const GuessState s = states_[id];
            if (id == accept_) continue;
            if (tag_grammar::in_columns(geo_.parity, s.section)) expand_pair(id, s);
            expand_single(id, s);
        }
        LemmaMachine out;
        out.nfa = builder_.build();
        out.members = {spec_};
        out.guesses = std::move(guesses_);
        out.states = std::move(states_);
        out.state_member.assign(out.states.size(), 0);
        return out;
    }

private:
    std::uint8_t done_section() const {
        for (std::uint8_t s = 0;; ++s) {
            if (tag_grammar::is_done(geo_.parity, s)) return s;
        }
    }

    StateId intern(const GuessState& s) {
        auto [it, fresh] = ids_.try_emplace(s, static_cast<StateId>(states_.size()));
        if (fresh) {
            states_.push_back(s);
            builder_.add_state();
            work_.push_back(it->second);
        }
        return it->second;
    }

    EdgeLabel label_of(const EdgeGuess& g) {
        auto [it, fresh] = guess_ids_.try_emplace(pack(g), static_cast<EdgeLabel>(guesses_.size()));
        if (fresh) guesses_.push_back(g);
        return it->second;
    }

    // Digit options of one group on pair column k.
    std::vector<Option> pair_options(const Group& g, const GroupMemory& mem, unsigned k, bool k_exact,
                                     const EndDistance& ed) const {
        std::vector<Option> out;
        const auto t = g.count;
        const auto d = ed.exact;
        if (g.shift == 0) {
            const bool pin = geo_.pin_top && d && *d == 0;
            for (std::uint8_t v = pin ? t : 0; v <= t; ++v) out.push_back({v, v, mem});
            return out;
        }
        if (g.shift > 0) {
            const unsigned s = static_cast<unsigned>(g.shift);
            const bool pin = geo_.pin_top && d && *d == s;
            std::vector<std::pair<std::uint8_t, GroupMemory>> lows;
            if (d && *d + 1 <= s) {
                const unsigned idx = s - 1 - *d;
                if (idx >= mem.stored_len) return out;
                lows.push_back({mem.stored[idx], mem});
            } else if (k_exact && k < s) {
                if (mem.stored_len >= 2) return out;
                for (std::uint8_t v = 0; v <= t; ++v) {
                    GroupMemory m = mem;
                    push(m.stored_len, m.stored, v);
                    lows.push_back({v, m});
                }
            } else {
                if (mem.pending_len == 0) return out;
                GroupMemory m = mem;
                const std::uint8_t v = pop_front(m.pending_len, m.pending);
                lows.push_back({v, m});
            }
            const bool high_zero = d ? *d < 2 * s : ed.at_least < 2 * s;
            for (auto& [v, m] : lows) {
                if (pin && v != t) continue;
                if (high_zero) {
                    out.push_back({v, 0, m});
                    continue;
                }
                if (m.pending_len >= 2) continue;
                for (std::uint8_t w = 0; w <= t; ++w) {
                    GroupMemory m2 = m;
                    push(m2.pending_len, m2.pending, w);
                    out.push_back({v, w, m2});
                }
            }
            return out;
        }
        const unsigned u = static_cast<unsigned>(-g.shift);
        std::vector<std::pair<std::uint8_t, GroupMemory>> highs;
        if (k_exact && k < u) {
            const bool pin = geo_.pin_top && k + 1 == u;
            for (std::uint8_t v = pin ? t : 0; v <= t; ++v) {
                GroupMemory m = mem;
                push(m.stored_len, m.stored, v);
                highs.push_back({v, m});
            }
        } else {
            if (mem.pending_len == 0) return out;
            GroupMemory m = mem;
            const std::uint8_t v = pop_front(m.pending_len, m.pending);
            highs.push_back({v, m});
        }
        for (auto& [w, m] : highs) {
            if (m.pending_len >= 2) continue;
            for (std::uint8_t v = 0; v <= t; ++v) {
                GroupMemory m2 = m;
                push(m2.pending_len, m2.pending, v);
                out.push_back({v, w, m2});
            }
        }
        return out;
    }

    // Digit of one group on single j; nullopt when the memory cannot supply it.
    std::optional<Option> single_option(const Group& g, const GroupMemory& mem, unsigned j) const {
        if (g.shift >= 0) return Option{0, 0, {}};
        const unsigned u = static_cast<unsigned>(-g.shift);
        GroupMemory m = mem;
        if (j < u) {
            if (m.pending_len == 0) return std::nullopt;
            const std::uint8_t v = pop_front(m.pending_len, m.pending);
            return Option{0, v, m};
        }
        if (j < 2 * u) {
            if (j - u >= m.stored_len) return std::nullopt;
            return Option{0, m.stored[j - u], m};
        }
        return Option{0, 0, m};
    }

    // Digits the singles never reached must be zero.
    bool leftovers_zero(const Group& g, const GroupMemory& mem, unsigned singles) const {
        if (g.shift >= 0) return true;
        const unsigned u = static_cast<unsigned>(-g.shift);
        for (unsigned i = 0; i < mem.pending_len; ++i) {
            if (mem.pending[i] != 0) return false;
        }
        for (unsigned i = 0; i < mem.stored_len; ++i) {
            if (u + i >= singles && mem.stored[i] != 0) return false;
        }
        return true;
    }

    template <class Fn>
    void product(const std::vector<std::vector<Option>>& options, Fn&& fn) const {
        std::vector<std::size_t> pick(options.size(), 0);
        for (const auto& o : options) {
            if (o.empty()) return;
        }
        while (true) {
            fn(pick);
            std::size_t i = 0;
            for (; i < pick.size(); ++i) {
                if (++pick[i] < options[i].size()) break;
                pick[i] = 0;
            }
            if (i == pick.size()) return;
        }
    }

    void expand_pair(StateId from, const GuessState& s) {
        static constexpr Tag kPairTags[] = {Tag::A, Tag::B, Tag::C, Tag::D, Tag::E};
        const unsigned k = s.phase;
        const bool k_exact = k < geo_.phase_cap;
        for (Tag tag : kPairTags) {
            const auto section = tag_grammar::step(geo_.parity, s.section, tag);
            if (!section) continue;
            const EndDistance ed = end_distance(geo_.parity, tag);
            if (k_exact && ed.exact && k + *ed.exact + 1 < geo_.min_columns) continue;
            std::vector<std::vector<Option>> options;
            for (std::size_t g = 0; g < geo_.groups.size(); ++g) {
                options.push_back(pair_options(geo_.groups[g], s.groups[g], k, k_exact, ed));
            }
            const bool last = ed.exact && *ed.exact == 0;
            const unsigned free = geo_.powers - s.powers_used;
            product(options, [&](const std::vector<std::size_t>& pick) {
                unsigned low_sum = s.carry_low, high_sum = s.carry_high;
                EdgeGuess guess;
                GuessState next = s;
                next.section = *section;
                next.phase = static_cast<std::uint8_t>(std::min(k + 1, geo_.phase_cap));
                for (std::size_t g = 0; g < pick.size(); ++g) {
                    const Option& o = options[g][pick[g]];
                    low_sum += o.low;
                    high_sum += o.high;
                    guess.low[g] = o.low;
                    guess.high[g] = o.high;
                    next.groups[g] = o.memory;
                }
                for (unsigned pl = 0; pl <= free; ++pl) {
                    for (unsigned ph = 0; pl + ph <= free; ++ph) {
                        const unsigned lo = low_sum + pl, hi = high_sum + ph;
                        GuessState t = next;
                        t.carry_low = static_cast<std::uint8_t>(lo >> 1);
                        t.carry_high = static_cast<std::uint8_t>(hi >> 1);
                        t.powers_used = static_cast<std::uint8_t>(s.powers_used + pl + ph);
                        if (last) {
                            if (t.carry_low != geo_.carry) continue;
                            t.carry_low = 0;
                            t.phase = 0;
                            for (std::size_t g = 0; g < geo_.groups.size(); ++g) {
                                if (geo_.groups[g].shift >= 0) t.groups[g] = {};
                            }
                        }
                        EdgeGuess eg = guess;
                        eg.power_low = static_cast<std::uint8_t>(pl);
                        eg.power_high = static_cast<std::uint8_t>(ph);
                        const auto sym = symbol_id(Symbol::pair(hi & 1u, lo & 1u, tag));
                        builder_.add_edge(from, sym, intern(t), label_of(eg));
                    }
                }
            });
        }
    }

    void expand_single(StateId from, const GuessState& s) {
        static constexpr Tag kSingleTags[] = {Tag::F, Tag::G, Tag::H, Tag::I};
        // The empty column run only exists for words shorter than every machine.
        if (s.section == tag_grammar::kStart) return;
        const unsigned singles = geo_.parity == Parity::Odd ? 1 : 4;
        for (Tag tag : kSingleTags) {
            const auto section = tag_grammar::step(geo_.parity, s.section, tag);
            if (!section) continue;
            const unsigned j = static_cast<unsigned>(tag) - static_cast<unsigned>(Tag::F);
            const bool last = tag_grammar::is_done(geo_.parity, *section);
            GuessState next = s;
            next.section = *section;
            EdgeGuess guess;
            unsigned sum = s.carry_high;
            bool ok = true;
            for (std::size_t g = 0; g < geo_.groups.size() && ok; ++g) {
                auto o = single_option(geo_.groups[g], s.groups[g], j);
                if (!o) {
                    ok = false;
                    break;
                }
                sum += o->high;
                guess.high[g] = o->high;
                next.groups[g] = o->memory;
                if (last) ok = leftovers_zero(geo_.groups[g], o->memory, singles);
            }
            if (!ok) continue;
            const unsigned free = geo_.powers - s.powers_used;
            for (unsigned p = 0; p <= free; ++p) {
                const unsigned total = sum + p;
                GuessState t = next;
                t.carry_high = static_cast<std::uint8_t>(total >> 1);
                t.powers_used = static_cast<std::uint8_t>(s.powers_used + p);
                EdgeGuess eg = guess;
                eg.power_high = static_cast<std::uint8_t>(p);
                const std::uint8_t bit = total & 1u;
                StateId to;
                if (last) {
                    if (t.carry_high != 0 || bit != 1) continue;
                    to = accept_;
                } else {
                    to = intern(t);
                }
                builder_.add_edge(from, symbol_id(Symbol::single(bit, tag)), to, label_of(eg));
            }
        }
    }

    MachineSpec spec_;
    Geometry geo_;
    NfaBuilder builder_;
    std::vector<GuessState> states_;
    std::unordered_map<GuessState, StateId, StateHash> ids_;
    std::deque<StateId> work_;
    std::vector<EdgeGuess> guesses_;
    std::unordered_map<std::uint64_t, EdgeLabel> guess_ids_;
    StateId accept_ = kNoState;
};

std::vector<SummandGroup> normalized(std::vector<SummandGroup> groups) {
    std::erase_if(groups, [](const SummandGroup& g) { return g.count == 0; });
    std::sort(groups.begin(), groups.end(),
              [](const SummandGroup& a, const SummandGroup& b) { return a.length_offset < b.length_offset; });
    return groups;
}

}  // namespace

unsigned min_source_length_for(const MachineSpec& spec) {
    const Geometry geo = geometry_of(spec);
    return std::max(spec.min_source_length, length_for_columns(spec.parity, geo.min_columns));
}

LemmaMachine generate(const MachineSpec& spec) {
    return Generator(spec).run();
}

LemmaMachine unite(std::vector<LemmaMachine> parts, std::string name) {
    std::vector<Nfa> nfas;
    LemmaMachine out;
    out.name = std::move(name);
    EdgeLabel label_base = 0;
    for (auto& p : parts) {
        const auto member_base = static_cast<std::uint16_t>(out.members.size());
        nfas.push_back(offset_labels(p.nfa, label_base));
        label_base += static_cast<EdgeLabel>(p.guesses.size());
        for (auto g : p.guesses) {
            g.member = static_cast<std::uint16_t>(g.member + member_base);
            out.guesses.push_back(g);
        }
        out.states.insert(out.states.end(), p.states.begin(), p.states.end());
        for (auto m : p.state_member) out.state_member.push_back(static_cast<std::uint16_t>(m + member_base));
        out.members.insert(out.members.end(), p.members.begin(), p.members.end());
    }
    TrimResult trimmed = trim(union_of(nfas));
    std::vector<GuessState> states(trimmed.nfa.num_states());
    std::vector<std::uint16_t> members(trimmed.nfa.num_states());
    for (std::size_t old = 0; old < trimmed.old_to_new.size(); ++old) {
        const StateId now = trimmed.old_to_new[old];
        if (now == kNoState) continue;
        states[now] = out.states[old];
        members[now] = out.state_member[old];
    }
    out.nfa = std::move(trimmed.nfa);
    out.states = std::move(states);
    out.state_member = std::move(members);
    out.reduced = Reduction(out.nfa);
    return out;
}

LemmaMachine carry_union(const MachineSpec& base, std::string name) {
    std::vector<LemmaMachine> parts;
    for (unsigned m = 0; m < base.addend_bound(); ++m) {
        MachineSpec spec = base;
        spec.profile.carry = m;
        parts.push_back(generate(spec));
    }
    return unite(std::move(parts), std::move(name));
}

namespace {

MachineSpec odd_spec(std::vector<SummandGroup> groups, unsigned m) {
    MachineSpec spec;
    spec.parity = Parity::Odd;
    spec.profile.groups = normalized(std::move(groups));
    spec.profile.carry = m;
    return spec;
}

LemmaMachine single_member(const MachineSpec& spec, std::string name) {
    LemmaMachine m = generate(spec);
    m.name = std::move(name);
    m.reduced = Reduction(m.nfa);
    return m;
}

std::string profile_name(std::string_view head, std::initializer_list<unsigned> params) {
    std::string out(head);
    out += '(';
    bool first = true;
    for (unsigned p : params) {
        if (!first) out += ',';
        out += std::to_string(p);
        first = false;
    }
    return out + ')';
}

}  // namespace

LemmaMachine odd_machine_A(unsigned t1, unsigned t3, unsigned m) {
    if (t1 + t3 == 0) throw std::invalid_argument("A needs at least one summand");
    if (m >= t1 + t3) throw std::invalid_argument("carry must be below t1 + t3");
    return single_member(odd_spec({{1, t1}, {3, t3}}, m), profile_name("A", {t1, t3, m}));
}

LemmaMachine odd_machine_B(unsigned t1, unsigned t3, unsigned t5, unsigned m) {
    if (t5 == 0) throw std::invalid_argument("B needs a summand of length n-5");
    if (m >= t1 + t3 + t5) throw std::invalid_argument("carry must be below t1 + t3 + t5");
    return single_member(odd_spec({{1, t1}, {3, t3}, {5, t5}}, m), profile_name("B", {t1, t3, t5, m}));
}

LemmaMachine even_machine(unsigned tn, unsigned tn2, unsigned tn4, unsigned tn6, unsigned m) {
    const unsigned total = tn + tn2 + tn4 + tn6;
    if (total == 0 || total > 4) throw std::invalid_argument("even machines take one to four summands");
    if (m >= total) throw std::invalid_argument("carry must be below the summand count");
    MachineSpec spec;
    spec.parity = Parity::Even;
    spec.profile.groups = normalized({{0, tn}, {2, tn2}, {4, tn4}, {6, tn6}});
    spec.profile.carry = m;
    return single_member(spec, profile_name("A", {tn, tn2, tn4, tn6, m}));
}

std::vector<SummandProfile> four_square_profiles(Parity parity) {
    std::vector<SummandProfile> out;
    auto add = [&](std::vector<SummandGroup> groups) { out.push_back({normalized(std::move(groups)), 0}); };
    if (parity == Parity::Odd) {
        add({{1, 1}, {3, 1}});
        add({{1, 2}, {3, 1}});
        add({{1, 1}, {3, 2}});
        add({{1, 1}, {3, 1}, {5, 1}});
        add({{1, 2}, {3, 2}});
        add({{1, 2}, {3, 1}, {5, 1}});
    } else {
        add({{2, 2}, {4, 2}});
        add({{2, 3}, {4, 1}});
        add({{0, 1}, {4, 1}, {6, 1}});
        add({{2, 2}, {4, 1}, {6, 1}});
    }
    return out;
}

namespace {

LemmaMachine profile_union(Parity parity, SquareKind kind, const std::vector<SummandProfile>& profiles,
                           unsigned powers, std::string name) {
    std::vector<LemmaMachine> parts;
    for (const auto& p : profiles) {
        MachineSpec spec;
        spec.parity = parity;
        spec.kind = kind;
        spec.profile = p;
        spec.max_powers = powers;
        if (spec.addend_bound() == 0) continue;
        for (unsigned m = 0; m < spec.addend_bound(); ++m) {
            spec.profile.carry = m;
            parts.push_back(generate(spec));
        }
    }
    return unite(std::move(parts), std::move(name));
}

}  // namespace

LemmaMachine build_A_odd() {
    return profile_union(Parity::Odd, SquareKind::Binary, four_square_profiles(Parity::Odd), 0, "A_odd");
}

LemmaMachine build_A_even() {
    return profile_union(Parity::Even, SquareKind::Binary, four_square_profiles(Parity::Even), 0, "A_even");
}

std::vector<SummandProfile> at_most_expansion(const std::vector<SummandGroup>& groups) {
    std::vector<SummandProfile> out;
    std::vector<unsigned> counts(groups.size(), 0);
    while (true) {
        std::vector<SummandGroup> g;
        for (std::size_t i = 0; i < groups.size(); ++i) g.push_back({groups[i].length_offset, counts[i]});
        out.push_back({normalized(std::move(g)), 0});
        std::size_t i = 0;
        for (; i < counts.size(); ++i) {
            if (++counts[i] <= groups[i].count) break;
            counts[i] = 0;
        }
        if (i == counts.size()) break;
    }
    return out;
}

LemmaMachine build_square_power_machines(Parity parity) {
    std::vector<SummandProfile> profiles;
    auto merge = [&](const std::vector<SummandGroup>& groups) {
        for (auto& p : at_most_expansion(groups)) {
            if (std::find(profiles.begin(), profiles.end(), p) == profiles.end()) profiles.push_back(std::move(p));
        }
    };
    if (parity == Parity::Odd) {
        merge({{1, 2}});
        merge({{1, 1}, {3, 1}});
    } else {
        merge({{0, 1}, {4, 1}});
        merge({{2, 1}, {4, 1}});
    }
    const std::string name = parity == Parity::Odd ? "square_power_odd" : "square_power_even";
    return profile_union(parity, SquareKind::Binary, profiles, 2, name);
}

LemmaMachine build_generalized_machines(Parity parity) {
    SummandProfile p;
    if (parity == Parity::Odd) {
        p.groups = {{-1, 1}, {1, 1}, {3, 1}};
    } else {
        p.groups = {{0, 1}, {2, 1}, {4, 1}};
    }
    const std::string name = parity == Parity::Odd ? "generalized_odd" : "generalized_even";
    return profile_union(parity, SquareKind::Generalized, {p}, 0, name);
}

std::vector<DecodedSummand> decode_run(const LemmaMachine& machine, const Run& run, const FoldLayout& layout) {
    if (run.labels.empty() || run.labels.size() != layout.word_length()) {
        throw std::invalid_argument("run does not match the layout");
    }
    const EdgeGuess& first = machine.guesses.at(run.labels.front());
    const MachineSpec& spec = machine.members.at(first.member);
    const Geometry geo = geometry_of(spec);
    const unsigned h = layout.columns;
    std::vector<DecodedSummand> out;
    for (std::size_t g = 0; g < geo.groups.size(); ++g) {
        const int s = geo.groups[g].shift;
        const unsigned half = static_cast<unsigned>(static_cast<int>(h) - s);
        std::vector<unsigned> y(half, 0);
        auto place = [&](unsigned pos, unsigned v) {
            if (pos < half) y[pos] = v;
        };
        for (unsigned i = 0; i < run.labels.size(); ++i) {
            const EdgeGuess& eg = machine.guesses.at(run.labels[i]);
            if (i < h) {
                place(i, eg.low[g]);
                place(h + i, eg.high[g]);
            } else {
                place(2 * h + (i - h), eg.high[g]);
            }
        }
        const Natural scale = (Natural(1) << half) + 1;
        for (unsigned u = 0; u < geo.groups[g].count; ++u) {
            Natural half_value = 0;
            for (unsigned j = 0; j < half; ++j) {
                if (u < y[j]) half_value |= Natural(1) << j;
            }
            out.push_back({half_value * scale, false, 2 * half});
        }
    }
    for (unsigned i = 0; i < run.labels.size(); ++i) {
        const EdgeGuess& eg = machine.guesses.at(run.labels[i]);
        const unsigned lo_pos = i < h ? i : 2 * h + (i - h);
        for (unsigned c = 0; c < eg.power_low; ++c) out.push_back({Natural(1) << lo_pos, true, lo_pos});
        const unsigned hi_pos = i < h ? h + i : lo_pos;
        for (unsigned c = 0; c < eg.power_high; ++c) out.push_back({Natural(1) << hi_pos, true, hi_pos});
    }
    return out;
}

std::vector<std::uint64_t> accept_set(const Nfa& machine, unsigned n) {
    const auto layout = layout_for_length(n);
    if (!layout || n > 63) throw std::invalid_argument("no folded layout for this length");
    const unsigned h = layout->columns;
    const unsigned len = layout->word_length();
    std::vector<Tag> tags(len);
    for (unsigned k = 0; k < h; ++k) tags[k] = column_tag(*layout, k);
    for (unsigned j = 0; j < layout->singles(); ++j) tags[h + j] = single_tag(layout->parity, j);

    // Branch on the first two pair columns up front so the searches are independent.
    const unsigned split = std::min(h, 2u);
    const unsigned branches = 1u << (2 * split);
    std::vector<std::vector<std::uint64_t>> found(branches);

    auto step_set = [&](const std::vector<StateId>& from, SymbolId a, std::vector<StateId>& to,
                        std::vector<std::uint8_t>& mark) {
        to.clear();
        for (StateId q : from) {
            for (StateId r : machine.successors(q, a)) {
                if (!mark[r]) {
                    mark[r] = 1;
                    to.push_back(r);
                }
            }
        }
        for (StateId r : to) mark[r] = 0;
    };

#pragma omp parallel for schedule(dynamic)
    for (int b = 0; b < static_cast<int>(branches); ++b) {
        std::vector<std::vector<StateId>> level(len + 1);
        std::vector<std::uint8_t> mark(machine.num_states(), 0);
        level[0].assign(machine.initials().begin(), machine.initials().end());
        std::vector<std::uint64_t>& hits = found[static_cast<std::size_t>(b)];
        auto symbol_at = [&](unsigned i, unsigned choice) -> std::pair<SymbolId, std::uint64_t> {
            if (i < h) {
                const unsigned hi = choice >> 1, lo = choice & 1u;
                const std::uint64_t bits = (std::uint64_t{hi} << (h + i)) | (std::uint64_t{lo} << i);
                return {symbol_id(Symbol::pair(static_cast<std::uint8_t>(hi), static_cast<std::uint8_t>(lo), tags[i])),
                        bits};
            }
            return {symbol_id(Symbol::single(static_cast<std::uint8_t>(choice), tags[i])),
                    std::uint64_t{choice} << (2 * h + (i - h))};
        };
        std::uint64_t prefix = 0;
        bool alive = true;
        for (unsigned i = 0; i < split; ++i) {
            const unsigned choice = (static_cast<unsigned>(b) >> (2 * i)) & 3u;
            auto [sym, bits] = symbol_at(i, choice);
            step_set(level[i], sym, level[i + 1], mark);
            prefix |= bits;
            if (level[i + 1].empty()) {
                alive = false;
                break;
            }
        }
        if (!alive) continue;
        std::function<void(unsigned, std::uint64_t)> dfs = [&](unsigned i, std::uint64_t value) {
            if (i == len) {
                for (StateId q : level[i]) {
                    if (machine.is_final(q)) {
                        hits.push_back(value);
                        return;
                    }
                }
                return;
            }
            const unsigned choices = i < h ? 4 : 2;
            const unsigned first = i + 1 == len ? 1 : 0;  // leading bit
            for (unsigned c = first; c < choices; ++c) {
                auto [sym, bits] = symbol_at(i, c);
                step_set(level[i], sym, level[i + 1], mark);
                if (!level[i + 1].empty()) dfs(i + 1, value | bits);
            }
        };
        dfs(split, prefix);
    }
    std::vector<std::uint64_t> out;
    for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::string manifest(const LemmaMachine& machine) {
    using nlohmann::json;
    json members = json::array();
    std::map<std::string, std::vector<unsigned>> carries;
    for (const auto& m : machine.members) {
        json groups = json::array();
        std::string key = std::string(to_string(m.parity)) + (m.kind == SquareKind::Binary ? ":binary" : ":generalized");
        for (const auto& g : m.profile.groups) {
            groups.push_back({{"length_offset", g.length_offset}, {"count", g.count}});
            key += ":" + std::to_string(g.length_offset) + "x" + std::to_string(g.count);
        }
        key += ":p" + std::to_string(m.max_powers);
        carries[key].push_back(m.profile.carry);
        members.push_back({{"parity", to_string(m.parity)},
                           {"kind", m.kind == SquareKind::Binary ? "binary" : "generalized"},
                           {"groups", groups},
                           {"carry", m.profile.carry},
                           {"max_powers", m.max_powers},
                           {"min_source_length", min_source_length_for(m)}});
    }
    json carry_ranges = json::object();
    for (auto& [k, v] : carries) carry_ranges[k] = v;
    json doc = {{"name", machine.name},
                {"states", machine.nfa.num_states()},
                {"transitions", machine.nfa.num_transitions()},
                {"members", members},
                {"carry_ranges", carry_ranges}};
    return doc.dump(2);
}

}  // namespace binsq

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "json.hpp"

#include "binsq/lemma_machines.hpp"
#include "binsq/oracle.hpp"

using namespace binsq;

namespace {

std::vector<LengthCount> exact_lengths(const SummandProfile& p, unsigned n) {
    std::vector<LengthCount> out;
    for (const auto& g : p.groups) out.push_back({static_cast<unsigned>(static_cast<int>(n) - g.length_offset), g.count, false});
    return out;
}

MachineSpec spec_for(Parity parity, const SummandProfile& p, SquareKind kind = SquareKind::Binary, unsigned powers = 0) {
    MachineSpec s;
    s.parity = parity;
    s.kind = kind;
    s.profile = p;
    s.max_powers = powers;
    return s;
}

}  // namespace

TEST(DigitStep, MatchesArithmetic) {
    for (unsigned a = 0; a < 6; ++a)
        for (unsigned b = 0; b < 6; ++b)
            for (unsigned c = 0; c < 6; ++c)
                for (unsigned carry = 0; carry < 8; ++carry) {
                    const std::vector<unsigned> addends{a, b, c};
                    const auto [digit, out] = digit_step(addends, carry);
                    ASSERT_EQ(digit, (a + b + c + carry) % 2);
                    ASSERT_EQ(out, (a + b + c + carry) / 2);
                    ASSERT_EQ(digit + 2 * out, a + b + c + carry);
                }
}

TEST(LemmaMachines, GroupShifts) {
    EXPECT_EQ(group_shift(Parity::Odd, 1), 0);
    EXPECT_EQ(group_shift(Parity::Odd, 3), 1);
    EXPECT_EQ(group_shift(Parity::Odd, -1), -1);
    EXPECT_EQ(group_shift(Parity::Even, 4), 0);
    EXPECT_EQ(group_shift(Parity::Even, 0), -2);
}

// Each exact-count member with all its carries accepts exactly the integers
// the oracle produces for that profile, at every length its geometry supports.
TEST(LemmaMachines, FourSquareMembersMatchOracle) {
    for (const Parity parity : {Parity::Odd, Parity::Even}) {
        for (const auto& p : four_square_profiles(parity)) {
            const MachineSpec base = spec_for(parity, p);
            const LemmaMachine m = carry_union(base, "member");
            const unsigned lo = std::max(min_source_length_for(base), parity == Parity::Odd ? 7u : 8u);
            for (unsigned n = lo; n <= lo + 4; n += 2) {
                const auto got = accept_set(m.nfa, n);
                const auto want = profile_sumset(n, exact_lengths(p, n), GroundSetKind::BinarySquare, 0);
                ASSERT_EQ(got, want) << m.name << " n=" << n << " offsets " << p.groups.front().length_offset;
            }
        }
    }
}

TEST(LemmaMachines, SquarePowerAndGeneralizedMembersMatchOracle) {
    for (const Parity parity : {Parity::Odd, Parity::Even}) {
        for (const auto* which : {"square-power", "generalized"}) {
            const bool gen = std::string(which) == "generalized";
            const LemmaMachine all = gen ? build_generalized_machines(parity) : build_square_power_machines(parity);
            for (const auto& member : all.members) {
                const unsigned lo = std::max(min_source_length_for(member), parity == Parity::Odd ? 7u : 8u);
                const unsigned n = lo + (lo % 2 == (parity == Parity::Odd ? 1u : 0u) ? 0 : 1);
                MachineSpec one = member;
                const LemmaMachine m = generate(one);
                const auto got = accept_set(m.nfa, n);
                const auto want = profile_sumset(n, exact_lengths(member.profile, n),
                                                 gen ? GroundSetKind::GeneralizedBinarySquare : GroundSetKind::BinarySquare,
                                                 member.max_powers);
                // A single carry accepts a subset of the profile's sums.
                ASSERT_TRUE(std::includes(want.begin(), want.end(), got.begin(), got.end())) << which << " n=" << n;
            }
        }
    }
}

TEST(LemmaMachines, UnionsCoverEveryLengthAboveThreshold) {
    struct Case {
        LemmaMachine m;
        unsigned threshold;
        GroundSetKind kind;
    };
    const Case cases[] = {{build_A_odd(), 13, GroundSetKind::BinarySquare},
                          {build_A_even(), 18, GroundSetKind::BinarySquare},
                          {build_generalized_machines(Parity::Odd), 7, GroundSetKind::GeneralizedBinarySquare},
                          {build_generalized_machines(Parity::Even), 8, GroundSetKind::GeneralizedBinarySquare}};
    for (const auto& c : cases) {
        for (unsigned n = c.threshold; n <= c.threshold + 2; n += 2) {
            EXPECT_EQ(accept_set(c.m.nfa, n).size(), std::size_t{1} << (n - 1)) << c.m.name << " n=" << n;
        }
    }
}

TEST(LemmaMachines, InclusionsHold) {
    const std::pair<LemmaMachine, unsigned> cases[] = {
        {build_A_odd(), 13},
        {build_A_even(), 18},
        {build_square_power_machines(Parity::Odd), 7},
        {build_square_power_machines(Parity::Even), 10},
        {build_generalized_machines(Parity::Odd), 7},
        {build_generalized_machines(Parity::Even), 8},
    };
    for (const auto& [m, threshold] : cases) {
        const Parity parity = threshold % 2 ? Parity::Odd : Parity::Even;
        const auto v = includes(m.nfa, syntax_checker(parity, threshold));
        EXPECT_TRUE(v.holds) << m.name;
        EXPECT_TRUE(includes(m.reduced.nfa(), syntax_checker(parity, threshold)).holds) << m.name;
    }
}

TEST(LemmaMachines, WeakProfileFailsWithGenuineCounterexample) {
    // Two squares of length n-1 cannot cover every odd length.
    const MachineSpec base = spec_for(Parity::Odd, {{{1, 2}}, 0});
    const LemmaMachine m = carry_union(base, "weak");
    const auto v = includes(m.nfa, syntax_checker(Parity::Odd, 13));
    ASSERT_FALSE(v.holds);
    const Natural n = unfold(folded_from_ids(*v.counterexample));
    const unsigned len = bit_length(n);
    const auto sums = profile_sumset(len, {{len - 1, 2, false}}, GroundSetKind::BinarySquare, 0);
    EXPECT_FALSE(std::binary_search(sums.begin(), sums.end(), static_cast<std::uint64_t>(n)));
}

TEST(LemmaMachines, ReductionKeepsAcceptSets) {
    const LemmaMachine m = build_A_odd();
    EXPECT_LT(m.reduced.nfa().num_states(), m.nfa.num_states());
    EXPECT_EQ(accept_set(m.reduced.nfa(), 13), accept_set(m.nfa, 13));
    const LemmaMachine e = build_A_even();
    EXPECT_EQ(accept_set(e.reduced.nfa(), 18), accept_set(e.nfa, 18));
}

TEST(LemmaMachines, DecodedRunsSumToInput) {
    std::mt19937_64 rng(31);
    const LemmaMachine odd = build_A_odd();
    const LemmaMachine even = build_A_even();
    for (int i = 0; i < 100; ++i) {
        const unsigned len = 18 + static_cast<unsigned>(rng() % 60);
        Natural n = Natural(1) << (len - 1);
        for (unsigned b = 0; b + 1 < len; ++b) {
            if (rng() & 1) n |= Natural(1) << b;
        }
        const LemmaMachine& m = len % 2 ? odd : even;
        const Word w = fold_relaxed(n).ids();
        const auto run = accepting_run(m.nfa, w);
        ASSERT_TRUE(run);
        Natural sum = 0;
        for (const auto& s : decode_run(m, *run, *layout_for_length(len))) {
            ASSERT_TRUE(s.power_of_two ? is_power_of_two(s.value) : is_binary_square(s.value));
            sum += s.value;
        }
        ASSERT_EQ(sum, n);
    }
}

TEST(LemmaMachines, AtMostExpansion) {
    const auto e = at_most_expansion({{1, 2}, {3, 1}});
    // Every (a, b) with a <= 2 and b <= 1, the empty profile included;
    // zero-count groups are dropped.
    std::set<std::pair<unsigned, unsigned>> seen;
    for (const auto& p : e) {
        unsigned a = 0, b = 0;
        for (const auto& g : p.groups) {
            ASSERT_GT(g.count, 0u);
            (g.length_offset == 1 ? a : b) += g.count;
        }
        seen.insert({a, b});
    }
    EXPECT_EQ(e.size(), 6u);
    EXPECT_EQ(seen.size(), 6u);
    for (const auto& [a, b] : seen) EXPECT_TRUE(a <= 2 && b <= 1);
}

TEST(LemmaMachines, GeneratorRejectsBadProfiles) {
    EXPECT_THROW(generate(spec_for(Parity::Odd, {{{2, 1}}, 0})), std::invalid_argument);   // even offset on odd input
    EXPECT_THROW(generate(spec_for(Parity::Odd, {{{9, 1}}, 0})), std::invalid_argument);   // shift out of range
    EXPECT_THROW(generate(spec_for(Parity::Odd, {{{1, 1}}, 5})), std::invalid_argument);   // carry too large
}

TEST(LemmaMachines, ManifestIsJson) {
    const LemmaMachine m = build_generalized_machines(Parity::Odd);
    const auto j = nlohmann::json::parse(manifest(m));
    EXPECT_EQ(j.at("members").size(), m.members.size());
    EXPECT_EQ(j.at("states").get<std::size_t>(), m.nfa.num_states());
}

TEST(LemmaMachines, NamedOddMachines) {
    // A(t1, t3, m): t1 squares of length n-1 and t3 of length n-3.
    const LemmaMachine a = odd_machine_A(2, 1, 1);
    const auto got = accept_set(a.nfa, 13);
    const auto want = profile_sumset(13, {{12, 2, false}, {10, 1, false}}, GroundSetKind::BinarySquare, 0);
    EXPECT_TRUE(std::includes(want.begin(), want.end(), got.begin(), got.end()));
    EXPECT_FALSE(got.empty());
}

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "binsq/automata.hpp"
#include "binsq/folding.hpp"
#include "binsq/numberforms.hpp"

namespace binsq {

inline constexpr std::size_t kMaxGroups = 4;

enum class SquareKind : std::uint8_t { Binary, Generalized };

// `count` summands of length n - length_offset, where n is the input length.
// Offsets are odd for odd n and even for even n; -1 (length n + 1) is allowed.
struct SummandGroup {
    int length_offset = 0;
    unsigned count = 0;
    bool operator==(const SummandGroup&) const = default;
};

// Summand lengths with multiplicities plus the guessed carry m flowing from
// the low half into the high half at the fold point.
struct SummandProfile {
    std::vector<SummandGroup> groups;
    unsigned carry = 0;

    unsigned total_count() const;
    bool operator==(const SummandProfile&) const = default;
};

// Everything that determines one generated machine.
struct MachineSpec {
    Parity parity = Parity::Odd;
    SquareKind kind = SquareKind::Binary;
    SummandProfile profile;
    unsigned max_powers = 0;
    // Inputs shorter than this are rejected; raised to the smallest length the
    // summand geometry supports.
    unsigned min_source_length = 0;

    // Bound on the digit sum of one half-column; carries stay below it.
    unsigned addend_bound() const { return profile.total_count() + max_powers; }
};

// Half-length of a summand group relative to the fold: half = columns - shift.
int group_shift(Parity parity, int length_offset);
unsigned min_source_length_for(const MachineSpec& spec);

// Digit guesses behind one edge: digit sums per group on the low and high
// track of a pair column (single symbols use `high` only) and the power-of-two
// digits placed there.
struct EdgeGuess {
    std::uint16_t member = 0;
    std::array<std::uint8_t, kMaxGroups> low{};
    std::array<std::uint8_t, kMaxGroups> high{};
    std::uint8_t power_low = 0;
    std::uint8_t power_high = 0;
    bool operator==(const EdgeGuess&) const = default;
};

// Digits a group has guessed but not yet placed on both tracks.
//  shift > 0: `pending` holds high-track guesses awaiting their low-track
//             position, `stored` the first low digits that reappear at the end.
//  shift < 0: `pending` holds low-track guesses awaiting their high-track
//             position, `stored` the top digits guessed on the first columns.
struct GroupMemory {
    std::uint8_t pending_len = 0;
    std::uint8_t stored_len = 0;
    std::array<std::uint8_t, 2> pending{};
    std::array<std::uint8_t, 2> stored{};
    bool operator==(const GroupMemory&) const = default;
};

struct GuessState {
    std::uint8_t section = 0;  // tag-grammar state
    std::uint8_t phase = 0;    // pair columns read, saturating
    std::uint8_t carry_low = 0;
    std::uint8_t carry_high = 0;
    std::uint8_t powers_used = 0;
    std::array<GroupMemory, kMaxGroups> groups{};
    bool operator==(const GuessState&) const = default;
};

struct LemmaMachine {
    std::string name;
    Nfa nfa;
    std::vector<MachineSpec> members;
    std::vector<EdgeGuess> guesses;        // indexed by edge label
    std::vector<GuessState> states;        // indexed by state id
    std::vector<std::uint16_t> state_member;
    // Label-free reduction used for path search; runs lift back to nfa.
    Reduction reduced;
};

// (sum + carry_in) mod 2 and its carry.
std::pair<unsigned, unsigned> digit_step(std::span<const unsigned> addends, unsigned carry_in);

// Builds the machine for one spec. Throws std::invalid_argument when the
// profile is malformed or its geometry is unsupported by the parity's tags.
LemmaMachine generate(const MachineSpec& spec);

// Disjoint union of machines, trimmed; member ids and labels are rebased.
LemmaMachine unite(std::vector<LemmaMachine> parts, std::string name);

// Union over every carry m in [0, addend_bound) of the spec's profile.
LemmaMachine carry_union(const MachineSpec& base, std::string name);

LemmaMachine odd_machine_A(unsigned t1, unsigned t3, unsigned m);
LemmaMachine odd_machine_B(unsigned t1, unsigned t3, unsigned t5, unsigned m);
LemmaMachine even_machine(unsigned tn, unsigned tn2, unsigned tn4, unsigned tn6, unsigned m);

// Summand profiles (carry left 0) of the four-squares lemma.
std::vector<SummandProfile> four_square_profiles(Parity parity);

LemmaMachine build_A_odd();
LemmaMachine build_A_even();
LemmaMachine build_square_power_machines(Parity parity);
LemmaMachine build_generalized_machines(Parity parity);

// Exact-count profiles covered by "at most count" for every group.
std::vector<SummandProfile> at_most_expansion(const std::vector<SummandGroup>& groups);

// Summands read back from an accepting run over fold_relaxed(N).
struct DecodedSummand {
    Natural value;
    bool power_of_two = false;
    unsigned length = 0;  // padded square length, or bit position for powers
};

std::vector<DecodedSummand> decode_run(const LemmaMachine& machine, const Run& run, const FoldLayout& layout);

// All N of bit length n whose relaxed fold the machine accepts, ascending.
std::vector<std::uint64_t> accept_set(const Nfa& machine, unsigned n);

// Structured text (JSON) listing members, carries and sizes.
std::string manifest(const LemmaMachine& machine);

}  // namespace binsq

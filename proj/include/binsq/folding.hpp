#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binsq/automata.hpp"
#include "binsq/numberforms.hpp"
#include "binsq/symbol.hpp"

namespace binsq {

enum class Parity : std::uint8_t { Odd, Even };

std::string_view to_string(Parity p);

// Smallest source lengths with a fully populated tag layout (odd: at least
// one a-column; even: three pair columns).
inline constexpr unsigned kStrictMinOdd = 11;
inline constexpr unsigned kStrictMinEven = 10;
// Smallest lengths the relaxed layouts accept.
inline constexpr unsigned kRelaxedMinOdd = 1;
inline constexpr unsigned kRelaxedMinEven = 4;

// Shape of the folded word for a source length n: `columns` pair symbols
// followed by `singles` single-bit symbols.
//   odd  n = 2h + 1: one single (f)
//   even n = 2h + 4: four singles (f, g, h, i)
struct FoldLayout {
    Parity parity;
    unsigned columns;
    unsigned source_length;

    unsigned singles() const { return parity == Parity::Odd ? 1 : 4; }
    unsigned word_length() const { return columns + singles(); }
};

// Relaxed layout for n, or nullopt when n has no folded form (n = 0, 2).
std::optional<FoldLayout> layout_for_length(unsigned n);

// Tag of pair column k. The last two columns are always d, e; odd words then
// carry c, b before them and a elsewhere; even words start a, b and fill with c.
Tag column_tag(const FoldLayout& layout, unsigned k);
Tag single_tag(Parity parity, unsigned j);

struct FoldedWord {
    std::vector<Symbol> symbols;
    Parity parity = Parity::Odd;
    unsigned source_length = 0;

    Word ids() const;
    bool operator==(const FoldedWord&) const = default;
};

// Strict folds: odd length >= 11, even length >= 10. Throw std::invalid_argument otherwise.
FoldedWord fold_odd(const Natural& n);
FoldedWord fold_even(const Natural& n);
// Any N whose length has a relaxed layout.
FoldedWord fold_relaxed(const Natural& n);

// Validates the tag sequence against the layout and returns sum a_j 2^j.
Natural unfold(const FoldedWord& w);
// Rebuilds a FoldedWord from raw symbols, inferring parity and length.
FoldedWord folded_from_symbols(std::vector<Symbol> symbols);
FoldedWord folded_from_ids(const Word& ids);

// "[1,0]a [0,1]b 1f"
std::string render(const FoldedWord& w);
// Accepts the render() format; the tag may be preceded by '_'.
FoldedWord parse_folded(std::string_view text);

// Relaxed tag grammar as a DFA over tags, shared with the machine generators.
namespace tag_grammar {
inline constexpr std::uint8_t kStart = 0;
std::optional<std::uint8_t> step(Parity parity, std::uint8_t state, Tag tag);
bool is_done(Parity parity, std::uint8_t state);
// True while pair columns may still follow.
bool in_columns(Parity parity, std::uint8_t state);
}  // namespace tag_grammar

// What a pair tag reveals about the distance d = columns - 1 - k to the last
// column: exact for the end tags, otherwise only a lower bound.
struct EndDistance {
    std::optional<unsigned> exact;
    unsigned at_least = 0;
};
EndDistance end_distance(Parity parity, Tag tag);

// Deterministic machine accepting fold(N) for every N of the given parity
// with length >= min_source_length (relaxed layouts below the strict minimum).
Nfa syntax_checker(Parity parity, unsigned min_source_length);

}  // namespace binsq

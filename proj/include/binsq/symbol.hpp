#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace binsq {

// Position tags of the folded alphabet. Pair symbols carry a..e, single-bit
// symbols carry f..i.
enum class Tag : std::uint8_t { A, B, C, D, E, F, G, H, I };

constexpr bool is_pair_tag(Tag t) { return t <= Tag::E; }
char tag_letter(Tag t);
std::optional<Tag> tag_from_letter(char c);

// One letter of the folded alphabet: [hi,lo]_tag for pair tags, bit_tag for
// single tags (lo is unused and zero).
struct Symbol {
    Tag tag = Tag::A;
    std::uint8_t hi = 0;
    std::uint8_t lo = 0;

    static Symbol pair(std::uint8_t hi, std::uint8_t lo, Tag tag);
    static Symbol single(std::uint8_t bit, Tag tag);

    bool operator==(const Symbol&) const = default;
};

// Dense interning: pairs occupy ids 0..19 (tag*4 + hi*2 + lo), singles 20..27.
inline constexpr std::size_t kFoldedAlphabetSize = 28;

std::uint16_t symbol_id(Symbol s);
Symbol symbol_from_id(std::uint16_t id);

// "[1,0]_c" / "1_f".
std::string symbol_label(std::uint16_t id);

}  // namespace binsq

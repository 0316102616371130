#include "binsq/symbol.hpp"

#include <stdexcept>

namespace binsq {

char tag_letter(Tag t) { return static_cast<char>('a' + static_cast<int>(t)); }

std::optional<Tag> tag_from_letter(char c) {
    if (c < 'a' || c > 'i') return std::nullopt;
    return static_cast<Tag>(c - 'a');
}

Symbol Symbol::pair(std::uint8_t hi, std::uint8_t lo, Tag tag) {
    if (!is_pair_tag(tag) || hi > 1 || lo > 1) throw std::invalid_argument("malformed pair symbol");
    return Symbol{tag, hi, lo};
}

Symbol Symbol::single(std::uint8_t bit, Tag tag) {
    if (is_pair_tag(tag) || bit > 1) throw std::invalid_argument("malformed single symbol");
    return Symbol{tag, bit, 0};
}

std::uint16_t symbol_id(Symbol s) {
    const auto t = static_cast<std::uint16_t>(s.tag);
    if (is_pair_tag(s.tag)) return static_cast<std::uint16_t>(t * 4 + s.hi * 2 + s.lo);
    return static_cast<std::uint16_t>(20 + (t - 5) * 2 + s.hi);
}

Symbol symbol_from_id(std::uint16_t id) {
    if (id < 20) {
        return Symbol{static_cast<Tag>(id / 4), static_cast<std::uint8_t>((id >> 1) & 1),
                      static_cast<std::uint8_t>(id & 1)};
    }
    if (id < kFoldedAlphabetSize) {
        return Symbol{static_cast<Tag>(5 + (id - 20) / 2), static_cast<std::uint8_t>((id - 20) & 1), 0};
    }
    throw std::out_of_range("symbol id outside the folded alphabet");
}

std::string symbol_label(std::uint16_t id) {
    const Symbol s = symbol_from_id(id);
    std::string out;
    if (is_pair_tag(s.tag)) {
        out = "[";
        out += static_cast<char>('0' + s.hi);
        out += ',';
        out += static_cast<char>('0' + s.lo);
        out += "]_";
    } else {
        out += static_cast<char>('0' + s.hi);
        out += '_';
    }
    out += tag_letter(s.tag);
    return out;
}

}  // namespace binsq

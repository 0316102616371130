#include "binsq/folding.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace binsq {

std::string_view to_string(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

std::optional<FoldLayout> layout_for_length(unsigned n) {
    if (n % 2 == 1) return FoldLayout{Parity::Odd, (n - 1) / 2, n};
    if (n >= 4) return FoldLayout{Parity::Even, (n - 4) / 2, n};
    return std::nullopt;
}

Tag column_tag(const FoldLayout& layout, unsigned k) {
    const unsigned d = layout.columns - 1 - k;
    if (d == 0) return Tag::E;
    if (d == 1) return Tag::D;
    if (layout.parity == Parity::Odd) {
        if (d == 2) return Tag::C;
        if (d == 3) return Tag::B;
        return Tag::A;
    }
    if (k == 0) return Tag::A;
    if (k == 1) return Tag::B;
    return Tag::C;
}

Tag single_tag(Parity parity, unsigned j) {
    if (parity == Parity::Odd) {
        if (j != 0) throw std::out_of_range("odd words have one single");
        return Tag::F;
    }
    if (j > 3) throw std::out_of_range("even words have four singles");
    return static_cast<Tag>(static_cast<unsigned>(Tag::F) + j);
}

Word FoldedWord::ids() const {
    Word out;
    out.reserve(symbols.size());
    for (const Symbol& s : symbols) out.push_back(symbol_id(s));
    return out;
}

namespace {

FoldedWord fold_with_layout(const Natural& n, const FoldLayout& layout) {
    const Bits bits = to_bits(n);
    const unsigned h = layout.columns;
    FoldedWord w;
    w.parity = layout.parity;
    w.source_length = layout.source_length;
    w.symbols.reserve(layout.word_length());
    for (unsigned k = 0; k < h; ++k) {
        w.symbols.push_back(Symbol::pair(bits.digits[h + k], bits.digits[k], column_tag(layout, k)));
    }
    for (unsigned j = 0; j < layout.singles(); ++j) {
        w.symbols.push_back(Symbol::single(bits.digits[2 * h + j], single_tag(layout.parity, j)));
    }
    return w;
}

}  // namespace

FoldedWord fold_odd(const Natural& n) {
    const unsigned len = bit_length(n);
    if (len % 2 == 0) throw std::invalid_argument("fold_odd: length is even");
    if (len < kStrictMinOdd) throw std::invalid_argument("fold_odd: length below 11");
    return fold_with_layout(n, *layout_for_length(len));
}

FoldedWord fold_even(const Natural& n) {
    const unsigned len = bit_length(n);
    if (len % 2 == 1) throw std::invalid_argument("fold_even: length is odd");
    if (len < kStrictMinEven) throw std::invalid_argument("fold_even: length below 10");
    return fold_with_layout(n, *layout_for_length(len));
}

FoldedWord fold_relaxed(const Natural& n) {
    const auto layout = layout_for_length(bit_length(n));
    if (!layout) throw std::invalid_argument("fold_relaxed: length has no folded layout");
    return fold_with_layout(n, *layout);
}

FoldedWord folded_from_symbols(std::vector<Symbol> symbols) {
    unsigned pairs = 0;
    while (pairs < symbols.size() && is_pair_tag(symbols[pairs].tag)) ++pairs;
    const std::size_t singles = symbols.size() - pairs;
    FoldedWord w;
    if (singles == 1) {
        w.parity = Parity::Odd;
        w.source_length = 2 * pairs + 1;
    } else if (singles == 4) {
        w.parity = Parity::Even;
        w.source_length = 2 * pairs + 4;
    } else {
        throw std::invalid_argument("folded word must end with one or four single symbols");
    }
    w.symbols = std::move(symbols);
    return w;
}

FoldedWord folded_from_ids(const Word& ids) {
    std::vector<Symbol> symbols;
    symbols.reserve(ids.size());
    for (SymbolId id : ids) symbols.push_back(symbol_from_id(id));
    return folded_from_symbols(std::move(symbols));
}

Natural unfold(const FoldedWord& w) {
    const auto layout = layout_for_length(w.source_length);
    if (!layout || layout->parity != w.parity || layout->word_length() != w.symbols.size()) {
        throw std::invalid_argument("unfold: word length does not match its source length");
    }
    const unsigned h = layout->columns;
    Bits bits;
    bits.digits.assign(w.source_length, 0);
    for (unsigned k = 0; k < h; ++k) {
        const Symbol& s = w.symbols[k];
        if (s.tag != column_tag(*layout, k)) throw std::invalid_argument("unfold: malformed tag sequence");
        bits.digits[h + k] = s.hi;
        bits.digits[k] = s.lo;
    }
    for (unsigned j = 0; j < layout->singles(); ++j) {
        const Symbol& s = w.symbols[h + j];
        if (s.tag != single_tag(w.parity, j)) throw std::invalid_argument("unfold: malformed tag sequence");
        bits.digits[2 * h + j] = s.hi;
    }
    if (bits.digits.back() != 1) throw std::invalid_argument("unfold: leading bit is zero");
    return from_bits(bits);
}

std::string render(const FoldedWord& w) {
    std::string out;
    for (const Symbol& s : w.symbols) {
        if (!out.empty()) out += ' ';
        if (is_pair_tag(s.tag)) {
            out += '[';
            out += static_cast<char>('0' + s.hi);
            out += ',';
            out += static_cast<char>('0' + s.lo);
            out += ']';
        } else {
            out += static_cast<char>('0' + s.hi);
        }
        out += tag_letter(s.tag);
    }
    return out;
}

FoldedWord parse_folded(std::string_view text) {
    std::vector<Symbol> symbols;
    std::istringstream in{std::string(text)};
    std::string tok;
    auto bad = [&]() { return std::invalid_argument("parse_folded: bad token '" + tok + "'"); };
    while (in >> tok) {
        std::size_t i = 0;
        auto bit = [&]() -> std::uint8_t {
            if (i >= tok.size() || (tok[i] != '0' && tok[i] != '1')) throw bad();
            return static_cast<std::uint8_t>(tok[i++] - '0');
        };
        auto tag = [&]() -> Tag {
            if (i < tok.size() && tok[i] == '_') ++i;
            if (i + 1 != tok.size()) throw bad();
            const auto t = tag_from_letter(tok[i]);
            if (!t) throw bad();
            return *t;
        };
        if (tok[0] == '[') {
            ++i;
            const auto hi = bit();
            if (i >= tok.size() || tok[i++] != ',') throw bad();
            const auto lo = bit();
            if (i >= tok.size() || tok[i++] != ']') throw bad();
            const Tag t = tag();
            if (!is_pair_tag(t)) throw bad();
            symbols.push_back(Symbol::pair(hi, lo, t));
        } else {
            const auto b = bit();
            const Tag t = tag();
            if (is_pair_tag(t)) throw bad();
            symbols.push_back(Symbol::single(b, t));
        }
    }
    return folded_from_symbols(std::move(symbols));
}

namespace tag_grammar {

namespace {
// Odd: 0 start, 1 after a, 2 after b, 3 after c, 4 after d, 5 after e, 6 done.
// Even: 0 start, 1 after a, 2 after b, 3 after c, 4 after d, 5 after e,
//       6 after f, 7 after g, 8 after h, 9 done.
constexpr std::uint8_t kOddDone = 6;
constexpr std::uint8_t kEvenDone = 9;
}  // namespace

std::optional<std::uint8_t> step(Parity parity, std::uint8_t state, Tag tag) {
    if (parity == Parity::Odd) {
        switch (tag) {
            case Tag::A: if (state <= 1) return 1; break;
            case Tag::B: if (state <= 1) return 2; break;
            case Tag::C: if (state == 0 || state == 2) return 3; break;
            case Tag::D: if (state == 0 || state == 3) return 4; break;
            case Tag::E: if (state == 0 || state == 4) return 5; break;
            case Tag::F: if (state == 0 || state == 5) return kOddDone; break;
            default: break;
        }
        return std::nullopt;
    }
    switch (tag) {
        case Tag::A: if (state == 0) return 1; break;
        case Tag::B: if (state == 1) return 2; break;
        case Tag::C: if (state == 2 || state == 3) return 3; break;
        case Tag::D: if (state <= 3) return 4; break;
        case Tag::E: if (state == 0 || state == 4) return 5; break;
        case Tag::F: if (state == 0 || state == 5) return 6; break;
        case Tag::G: if (state == 6) return 7; break;
        case Tag::H: if (state == 7) return 8; break;
        case Tag::I: if (state == 8) return kEvenDone; break;
    }
    return std::nullopt;
}

bool is_done(Parity parity, std::uint8_t state) {
    return state == (parity == Parity::Odd ? kOddDone : kEvenDone);
}

bool in_columns(Parity parity, std::uint8_t state) {
    (void)parity;
    return state <= 4;
}

}  // namespace tag_grammar

EndDistance end_distance(Parity parity, Tag tag) {
    switch (tag) {
        case Tag::E: return {0u, 0};
        case Tag::D: return {1u, 1};
        default: break;
    }
    if (parity == Parity::Odd) {
        if (tag == Tag::C) return {2u, 2};
        if (tag == Tag::B) return {3u, 3};
        return {std::nullopt, 4};
    }
    return {std::nullopt, 2};
}

namespace {

void add_pair_edges(NfaBuilder& b, StateId from, Tag tag, StateId to) {
    for (std::uint8_t hi = 0; hi < 2; ++hi) {
        for (std::uint8_t lo = 0; lo < 2; ++lo) b.add_edge(from, symbol_id(Symbol::pair(hi, lo, tag)), to);
    }
}

void add_single_edges(NfaBuilder& b, StateId from, Tag tag, StateId to, bool only_one) {
    if (!only_one) b.add_edge(from, symbol_id(Symbol::single(0, tag)), to);
    b.add_edge(from, symbol_id(Symbol::single(1, tag)), to);
}

Nfa odd_checker(unsigned min_columns) {
    NfaBuilder b(kFoldedAlphabetSize);
    const unsigned run = min_columns > 4 ? min_columns - 4 : 0;  // required a-columns
    const unsigned chain = run > 0 ? run : 1;
    const StateId start = b.add_state();
    const StateId first_a = b.add_states(chain);
    const StateId sb = b.add_state(), sc = b.add_state(), sd = b.add_state(), se = b.add_state();
    const StateId done = b.add_state();
    b.add_initial(start);
    b.set_final(done);

    add_pair_edges(b, start, Tag::A, first_a);
    for (unsigned j = 0; j + 1 < chain; ++j) add_pair_edges(b, first_a + j, Tag::A, first_a + j + 1);
    add_pair_edges(b, first_a + chain - 1, Tag::A, first_a + chain - 1);
    for (unsigned j = 1; j <= chain; ++j) {
        if (j >= run) add_pair_edges(b, first_a + j - 1, Tag::B, sb);
    }
    if (min_columns <= 4) add_pair_edges(b, start, Tag::B, sb);
    if (min_columns <= 3) add_pair_edges(b, start, Tag::C, sc);
    if (min_columns <= 2) add_pair_edges(b, start, Tag::D, sd);
    if (min_columns <= 1) add_pair_edges(b, start, Tag::E, se);
    add_pair_edges(b, sb, Tag::C, sc);
    add_pair_edges(b, sc, Tag::D, sd);
    add_pair_edges(b, sd, Tag::E, se);
    add_single_edges(b, se, Tag::F, done, true);
    if (min_columns == 0) add_single_edges(b, start, Tag::F, done, true);
    return trim(b.build()).nfa;
}

Nfa even_checker(unsigned min_columns) {
    NfaBuilder b(kFoldedAlphabetSize);
    const unsigned run = min_columns > 4 ? min_columns - 4 : 0;  // required c-columns
    const unsigned chain = run > 0 ? run : 1;
    const StateId start = b.add_state();
    const StateId sa = b.add_state(), sb = b.add_state();
    const StateId first_c = b.add_states(chain);
    const StateId sd = b.add_state(), se = b.add_state();
    const StateId sf = b.add_state(), sg = b.add_state(), sh = b.add_state();
    const StateId done = b.add_state();
    b.add_initial(start);
    b.set_final(done);

    add_pair_edges(b, start, Tag::A, sa);
    add_pair_edges(b, sa, Tag::B, sb);
    add_pair_edges(b, sb, Tag::C, first_c);
    for (unsigned j = 0; j + 1 < chain; ++j) add_pair_edges(b, first_c + j, Tag::C, first_c + j + 1);
    add_pair_edges(b, first_c + chain - 1, Tag::C, first_c + chain - 1);
    for (unsigned j = 1; j <= chain; ++j) {
        if (j >= run) add_pair_edges(b, first_c + j - 1, Tag::D, sd);
    }
    if (min_columns <= 4) add_pair_edges(b, sb, Tag::D, sd);
    if (min_columns <= 3) add_pair_edges(b, sa, Tag::D, sd);
    if (min_columns <= 2) add_pair_edges(b, start, Tag::D, sd);
    if (min_columns <= 1) add_pair_edges(b, start, Tag::E, se);
    add_pair_edges(b, sd, Tag::E, se);
    add_single_edges(b, se, Tag::F, sf, false);
    if (min_columns == 0) add_single_edges(b, start, Tag::F, sf, false);
    add_single_edges(b, sf, Tag::G, sg, false);
    add_single_edges(b, sg, Tag::H, sh, false);
    add_single_edges(b, sh, Tag::I, done, true);
    return trim(b.build()).nfa;
}

}  // namespace

Nfa syntax_checker(Parity parity, unsigned min_source_length) {
    if (parity == Parity::Odd) {
        return odd_checker(min_source_length / 2);
    }
    const unsigned min_columns = min_source_length > 4 ? (min_source_length - 3) / 2 : 0;
    return even_checker(min_columns);
}

}  // namespace binsq

#include "binsq/witness.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "binsq/folding.hpp"
#include "binsq/oracle.hpp"

namespace binsq {

namespace {

constexpr std::uint64_t kTableBound = std::uint64_t{1} << 17;

struct SquareTable {
    SumsetTable table = sumset_table(GroundSetKind::BinarySquare, kTableBound, 4);
    std::vector<std::uint64_t> ground = ground_set_upto(GroundSetKind::BinarySquare, kTableBound);
};

const SquareTable& square_table() {
    static const SquareTable t;
    return t;
}

bool fits_u64(const Natural& n) { return n <= Natural(std::numeric_limits<std::uint64_t>::max()); }

Decomposition from_table(std::uint64_t n) {
    const auto& t = square_table();
    if (!t.table.at(4).test(n)) throw NotRepresentable(std::to_string(n) + " is not a sum of four binary squares");
    Decomposition d;
    d.target = n;
    d.source = WitnessSource::Table;
    std::uint64_t rest = n;
    for (unsigned k = 4; k > 0; --k) {
        // Largest square that leaves a remainder reachable with k-1 squares.
        auto it = std::upper_bound(t.ground.begin(), t.ground.end(), rest);
        while (it != t.ground.begin()) {
            --it;
            if (t.table.at(k - 1).test(rest - *it)) break;
        }
        d.parts.push_back({*it, GroundSetKind::BinarySquare});
        rest -= *it;
    }
    return d;
}

Decomposition from_machine(const LemmaMachine& m, const Natural& n, GroundSetKind square_role) {
    const FoldedWord w = fold_relaxed(n);
    const auto layout = layout_for_length(bit_length(n));
    const Word word = w.ids();
    const auto path = accepting_run(m.reduced.nfa(), word);
    if (!path) throw NotRepresentable("no accepting path for " + n.str());
    const auto run = std::optional<Run>(m.reduced.lift(m.nfa, *path, word));
    Decomposition d;
    d.target = n;
    d.source = WitnessSource::Machine;
    d.product_states = run->product_states;
    d.profile = m.members.at(m.guesses.at(run->labels.front()).member).profile;
    for (auto& s : decode_run(m, *run, *layout)) {
        d.parts.push_back({std::move(s.value), s.power_of_two ? GroundSetKind::PowerOfTwo : square_role});
    }
    return d;
}

Decomposition checked(Decomposition d) {
    if (!is_valid(d)) throw std::logic_error("decoded parts do not reproduce " + d.target.str());
    return d;
}

Parity parity_of(const Natural& n) { return bit_length(n) % 2 == 1 ? Parity::Odd : Parity::Even; }

}  // namespace

bool is_valid(const Decomposition& d) {
    Natural sum = 0;
    for (const auto& p : d.parts) {
        if (p.role == GroundSetKind::PowerOfTwo ? !is_power_of_two(p.value) : !is_member(p.role, p.value)) return false;
        sum += p.value;
    }
    return sum == d.target;
}

const LemmaMachine& cached_four_square_machine(Parity parity) {
    static const LemmaMachine odd = build_A_odd();
    static const LemmaMachine even = build_A_even();
    return parity == Parity::Odd ? odd : even;
}

const LemmaMachine& cached_square_power_machine(Parity parity) {
    static const LemmaMachine odd = build_square_power_machines(Parity::Odd);
    static const LemmaMachine even = build_square_power_machines(Parity::Even);
    return parity == Parity::Odd ? odd : even;
}

const LemmaMachine& cached_generalized_machine(Parity parity) {
    static const LemmaMachine odd = build_generalized_machines(Parity::Odd);
    static const LemmaMachine even = build_generalized_machines(Parity::Even);
    return parity == Parity::Odd ? odd : even;
}

Decomposition decompose(const Natural& n) {
    if (n < 0) throw std::invalid_argument("decompose: negative input");
    if (n < kTableBound) return checked(from_table(static_cast<std::uint64_t>(n)));
    Decomposition d = from_machine(cached_four_square_machine(parity_of(n)), n, GroundSetKind::BinarySquare);
    while (d.parts.size() < 4) d.parts.push_back({0, GroundSetKind::BinarySquare});
    return checked(std::move(d));
}

Decomposition decompose_square_power(const Natural& n) {
    if (n < 0) throw std::invalid_argument("decompose_square_power: negative input");
    Decomposition d;
    d.target = n;
    if (n == 0) return d;
    if (fits_u64(n) && std::popcount(static_cast<std::uint64_t>(n)) <= 2) {
        auto v = static_cast<std::uint64_t>(n);
        while (v != 0) {
            const std::uint64_t low = v & (~v + 1);
            d.parts.push_back({Natural(low), GroundSetKind::PowerOfTwo});
            v &= v - 1;
        }
        return checked(std::move(d));
    }
    if (n < 512) {
        const auto v = static_cast<std::uint64_t>(n);
        const auto squares = ground_set_upto(GroundSetKind::BinarySquare, v + 1);
        d.source = WitnessSource::Table;
        for (std::size_t i = 0; i < squares.size(); ++i) {
            for (std::size_t j = i; j < squares.size() && squares[i] + squares[j] <= v; ++j) {
                const std::uint64_t r = v - squares[i] - squares[j];
                if (std::popcount(r) > 2) continue;
                for (std::uint64_t s : {squares[j], squares[i]}) {
                    if (s != 0) d.parts.push_back({s, GroundSetKind::BinarySquare});
                }
                for (std::uint64_t rest = r; rest != 0; rest &= rest - 1) {
                    d.parts.push_back({Natural(rest & (~rest + 1)), GroundSetKind::PowerOfTwo});
                }
                return checked(std::move(d));
            }
        }
        throw std::logic_error("no square-power decomposition below 512");
    }
    return checked(from_machine(cached_square_power_machine(parity_of(n)), n, GroundSetKind::BinarySquare));
}

Decomposition decompose_generalized(const Natural& n) {
    if (n < 0) throw std::invalid_argument("decompose_generalized: negative input");
    if (n < 64) {
        const auto v = static_cast<std::uint64_t>(n);
        const auto g = ground_set_upto(GroundSetKind::GeneralizedBinarySquare, v + 1);
        for (std::size_t i = 0; i < g.size(); ++i) {
            for (std::size_t j = i; j < g.size() && g[i] + g[j] <= v; ++j) {
                const std::uint64_t r = v - g[i] - g[j];
                if (r < g[j] || !is_generalized_binary_square(r)) continue;
                Decomposition d;
                d.target = n;
                d.source = WitnessSource::Table;
                for (std::uint64_t s : {r, g[j], g[i]}) d.parts.push_back({s, GroundSetKind::GeneralizedBinarySquare});
                return checked(std::move(d));
            }
        }
        throw NotRepresentable(n.str() + " is not a sum of three generalized binary squares");
    }
    return checked(from_machine(cached_generalized_machine(parity_of(n)), n, GroundSetKind::GeneralizedBinarySquare));
}

std::string describe(const Part& p) {
    const std::string bits = to_binary_string(p.value);
    const std::string head = p.value.str();
    if (p.value == 0) return head;
    if (p.role == GroundSetKind::PowerOfTwo) return head + " = 2^" + std::to_string(bits.size() - 1);
    const unsigned len = static_cast<unsigned>(bits.size());
    for (unsigned half = (len + 1) / 2; half <= len; ++half) {
        const Natural mod = (Natural(1) << half) + 1;
        if (p.value % mod != 0) continue;
        const Natural y = p.value / mod;
        if (y >= (Natural(1) << half)) continue;
        std::string block = to_binary_string(y);
        block.insert(0, half - block.size(), '0');
        return head + " = " + bits + " = (" + block + ")(" + block + ")";
    }
    return head + " = " + bits;
}

}  // namespace binsq

#include "binsq/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace binsq {

namespace {

BitVector bits_of(std::span<const std::uint64_t> values, std::size_t size) {
    BitVector out(size);
    for (std::uint64_t v : values) {
        if (v < size) out.set(v);
    }
    return out;
}

std::vector<std::uint64_t> ground(GroundSetKind kind, std::uint64_t bound, bool positive_only) {
    auto g = ground_set_upto(kind, bound);
    if (positive_only) std::erase(g, 0);
    return g;
}

}  // namespace

SumsetTable sumset_table(GroundSetKind kind, std::uint64_t bound, unsigned max_k, bool positive_only, bool parallel) {
    if (bound == 0) throw std::invalid_argument("sumset_table: bound must be positive");
    SumsetTable t;
    t.bound = bound;
    t.kind = kind;
    t.positive_only = positive_only;
    const auto g = ground(kind, bound, positive_only);
    BitVector zero(bound);
    zero.set(0);
    t.reach.push_back(std::move(zero));
    for (unsigned k = 1; k <= max_k; ++k) t.reach.push_back(sumset(t.reach.back(), g, parallel));
    return t;
}

std::vector<std::uint64_t> exceptions_four_squares(std::uint64_t bound) {
    if (bound < 687) throw std::invalid_argument("exceptions_four_squares: bound must be at least 687");
    const auto t = sumset_table(GroundSetKind::BinarySquare, bound, 4);
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = 0; v < bound; ++v) {
        if (!t.at(4).test(v)) out.push_back(v);
    }
    return out;
}

std::vector<std::uint64_t> exceptions_exact_four_positive(std::uint64_t bound) {
    if (bound < 1773) throw std::invalid_argument("exceptions_exact_four_positive: bound must be at least 1773");
    const auto t = sumset_table(GroundSetKind::BinarySquare, bound, 4, true);
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = 0; v < bound; ++v) {
        if (!t.at(4).test(v)) out.push_back(v);
    }
    return out;
}

TwoSquaresCounter::TwoSquaresCounter(std::uint64_t max_m) : max_m_(max_m), prefix_(max_m + 1, 0) {
    const auto t = sumset_table(GroundSetKind::BinarySquare, max_m + 1, 2);
    for (std::uint64_t v = 1; v <= max_m; ++v) prefix_[v] = prefix_[v - 1] + (t.at(2).test(v) ? 1 : 0);
}

std::uint64_t TwoSquaresCounter::count(std::uint64_t m) const {
    if (m > max_m_) throw std::out_of_range("TwoSquaresCounter: m beyond table");
    return prefix_[m];
}

Rational TwoSquaresCounter::density(std::uint64_t m) const {
    if (m == 0) throw std::invalid_argument("density of an empty range");
    return {static_cast<std::int64_t>(count(m)), static_cast<std::int64_t>(m)};
}

Rational two_squares_density(std::uint64_t m) {
    if (m < 14) throw std::invalid_argument("two_squares_density: m must be at least 14");
    return TwoSquaresCounter(m).density(m);
}

std::uint64_t sumset_uniqueness(unsigned n) {
    if (n < 1 || n > 12) throw std::invalid_argument("sumset_uniqueness: n must be in [1, 12]");
    const auto a = squares_of_length(2 * n);
    const auto b = squares_of_length(2 * n + 2);
    BitVector seen(std::size_t{1} << (2 * n + 3));
    for (std::uint64_t x : a) {
        for (std::uint64_t y : b) seen.set(x + y);
    }
    return seen.count();
}

std::vector<OptimalityRow> optimality_check(unsigned n_max) {
    if (n_max > 25) throw std::invalid_argument("optimality_check: n_max must be at most 25");
    std::vector<OptimalityRow> rows;
    for (unsigned n = 1; n <= n_max; n += 2) {
        const std::uint64_t target = std::uint64_t{1} << n;
        auto g = ground(GroundSetKind::BinarySquare, target + 1, true);
        const std::unordered_set<std::uint64_t> members(g.begin(), g.end());
        OptimalityRow row;
        row.n = n;
        if (members.contains(target)) row.witnesses.push_back({target});
        for (std::size_t i = 0; i < g.size(); ++i) {
            const std::uint64_t a = g[i];
            if (2 * a > target) break;
            if (members.contains(target - a) && target - a >= a) row.witnesses.push_back({target - a, a});
            for (std::size_t j = i; j < g.size(); ++j) {
                const std::uint64_t b = g[j];
                if (a + 2 * b > target) break;
                const std::uint64_t c = target - a - b;
                if (members.contains(c)) row.witnesses.push_back({c, b, a});
            }
        }
        row.representable = !row.witnesses.empty();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::uint64_t residue_formula(unsigned m, unsigned g, std::uint64_t c) {
    if (m > 40 || 2 * g <= m || g >= m) throw std::invalid_argument("residue_formula: need m/2 < g < m <= 40");
    if (c < (std::uint64_t{1} << (g - 1)) || c >= (std::uint64_t{1} << g)) {
        throw std::invalid_argument("residue_formula: need 2^(g-1) <= c < 2^g");
    }
    const unsigned low = m - g;
    const std::uint64_t t = c >> low;
    const std::uint64_t u = c & ((std::uint64_t{1} << low) - 1);
    return t * ((std::uint64_t{1} << low) - 1) + u * ((std::uint64_t{1} << g) + 1);
}

std::optional<std::vector<std::uint64_t>> decompose_brute(std::uint64_t n, GroundSetKind kind, unsigned k) {
    if (n >= (std::uint64_t{1} << 24)) throw std::invalid_argument("decompose_brute: N must be below 2^24");
    if (k < 1 || k > 4) throw std::invalid_argument("decompose_brute: k must be in [1, 4]");
    const auto g = ground_set_upto(kind, n + 1);
    const BitVector one = bits_of(g, n + 1);

    auto two = [&](std::uint64_t r) -> std::optional<std::vector<std::uint64_t>> {
        for (std::uint64_t a : g) {
            if (2 * a > r) break;
            if (one.test(r - a)) return std::vector<std::uint64_t>{r - a, a};
        }
        return std::nullopt;
    };
    auto sorted_desc = [](std::vector<std::uint64_t> v) {
        std::sort(v.rbegin(), v.rend());
        return v;
    };

    switch (k) {
        case 1:
            if (one.test(n)) return std::vector<std::uint64_t>{n};
            return std::nullopt;
        case 2:
            return two(n);
        case 3:
            for (std::uint64_t a : g) {
                if (3 * a > n) break;
                if (auto rest = two(n - a)) {
                    rest->push_back(a);
                    return sorted_desc(*rest);
                }
            }
            return std::nullopt;
        default:
            break;
    }
    // Meet in the middle: pairs a <= b, then a two-sum lookup for the rest.
    BitVector zero(n + 1);
    zero.set(0);
    const BitVector pairs = sumset(sumset(zero, g), g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const std::uint64_t a = g[i];
        if (4 * a > n) break;
        for (std::size_t j = i; j < g.size(); ++j) {
            const std::uint64_t b = g[j];
            if (a + 3 * b > n) break;
            const std::uint64_t r = n - a - b;
            if (!pairs.test(r)) continue;
            if (auto rest = two(r)) {
                rest->push_back(a);
                rest->push_back(b);
                return sorted_desc(*rest);
            }
        }
    }
    return std::nullopt;
}

std::vector<std::uint64_t> profile_sumset(unsigned n, const std::vector<LengthCount>& parts, GroundSetKind square_kind,
                                          unsigned max_powers) {
    if (n == 0 || n > 26) throw std::invalid_argument("profile_sumset: n must be in [1, 26]");
    const std::size_t size = std::size_t{1} << n;
    BitVector acc(size);
    acc.set(0);
    for (const auto& p : parts) {
        if (p.length == 0 || p.length % 2 != 0) throw std::invalid_argument("profile_sumset: bad summand length");
        if (p.length > n + 2) {
            if (p.count > 0 && !p.at_most && square_kind == GroundSetKind::BinarySquare) return {};
            if (p.count > 0) continue;  // only y = 0 stays below 2^n
        }
        std::vector<std::uint64_t> values = square_kind == GroundSetKind::BinarySquare
                                                ? squares_of_length(p.length)
                                                : generalized_squares_of_length(p.length);
        std::erase_if(values, [&](std::uint64_t v) { return v >= size; });
        if (p.at_most && (values.empty() || values.front() != 0)) values.insert(values.begin(), 0);
        for (unsigned c = 0; c < p.count; ++c) acc = sumset(acc, values);
    }
    std::vector<std::uint64_t> powers{0};
    for (unsigned i = 0; i < n; ++i) powers.push_back(std::uint64_t{1} << i);
    for (unsigned c = 0; c < max_powers; ++c) acc = sumset(acc, powers);
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = size / 2; v < size; ++v) {
        if (acc.test(v)) out.push_back(v);
    }
    return out;
}

}  // namespace binsq

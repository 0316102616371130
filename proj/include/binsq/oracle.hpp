#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "binsq/bitvector.hpp"
#include "binsq/numberforms.hpp"

namespace binsq {

// reach[k] marks the v < bound that are sums of exactly k members of the
// ground set. With 0 in the ground set (squares) that is "at most k".
struct SumsetTable {
    std::uint64_t bound = 0;
    GroundSetKind kind = GroundSetKind::BinarySquare;
    bool positive_only = false;
    std::vector<BitVector> reach;  // reach[0] = {0}

    const BitVector& at(unsigned k) const { return reach.at(k); }
    unsigned max_k() const { return static_cast<unsigned>(reach.size()) - 1; }
};

// positive_only drops 0 from the ground set.
SumsetTable sumset_table(GroundSetKind kind, std::uint64_t bound, unsigned max_k, bool positive_only = false,
                         bool parallel = true);

// v < bound that are not a sum of four binary squares. Requires bound >= 687.
std::vector<std::uint64_t> exceptions_four_squares(std::uint64_t bound);
// v < bound that are not a sum of exactly four positive binary squares. Requires bound >= 1773.
std::vector<std::uint64_t> exceptions_exact_four_positive(std::uint64_t bound);

using Rational = boost::rational<std::int64_t>;

// |{x in S_2 : 1 <= x <= m}| / m, S_2 the sums of two binary squares.
Rational two_squares_density(std::uint64_t m);

// Prefix counts of S_2 for answering many density queries at once.
class TwoSquaresCounter {
public:
    explicit TwoSquaresCounter(std::uint64_t max_m);
    std::uint64_t max_m() const { return max_m_; }
    std::uint64_t count(std::uint64_t m) const;  // |S_2 ∩ [1, m]|
    Rational density(std::uint64_t m) const;

private:
    std::uint64_t max_m_;
    std::vector<std::uint32_t> prefix_;
};

// |C_n + C_{n+1}|, 1 <= n <= 12.
std::uint64_t sumset_uniqueness(unsigned n);

struct OptimalityRow {
    unsigned n = 0;
    bool representable = false;
    // Every multiset of at most three positive binary squares summing to 2^n,
    // each listed in descending order.
    std::vector<std::vector<std::uint64_t>> witnesses;
};

// Rows for every odd n <= n_max (n_max <= 25).
std::vector<OptimalityRow> optimality_check(unsigned n_max);

// t(2^{m-g} - 1) + u(2^g + 1) with c = t 2^{m-g} + u. Requires m/2 < g < m,
// 2^{g-1} <= c < 2^g and m <= 40.
std::uint64_t residue_formula(unsigned m, unsigned g, std::uint64_t c);

// k members summing to N (zeros allowed where the ground set has them), in
// descending order, or nullopt. Requires N < 2^24 and 1 <= k <= 4.
std::optional<std::vector<std::uint64_t>> decompose_brute(std::uint64_t n, GroundSetKind kind, unsigned k);

// Summand lengths are padded lengths: squares of length L are y(2^{L/2}+1).
struct LengthCount {
    unsigned length = 0;
    unsigned count = 0;
    bool at_most = false;  // count is an upper bound (zero summands allowed)
};

// N of bit length exactly n that are sums of exactly (or at most) `count` squares of each
// listed length (positive squares of that exact length for BinarySquare,
// any y < 2^{L/2} for GeneralizedBinarySquare) plus at most max_powers powers
// of two. Ascending. Requires n <= 26.
std::vector<std::uint64_t> profile_sumset(unsigned n, const std::vector<LengthCount>& parts, GroundSetKind square_kind,
                                          unsigned max_powers);

}  // namespace binsq

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "binsq/bitvector.hpp"
#include "binsq/oracle.hpp"

using namespace binsq;

namespace {

std::vector<std::uint64_t> read_golden(const std::string& name) {
    std::ifstream in(std::string(BINSQ_TEST_DATA) + "/" + name);
    std::vector<std::uint64_t> out;
    for (std::uint64_t v; in >> v;) out.push_back(v);
    return out;
}

std::vector<std::uint64_t> naive_squares(std::uint64_t bound) {
    std::vector<std::uint64_t> out{0};
    for (unsigned h = 1; h < 32; ++h) {
        for (std::uint64_t x = std::uint64_t{1} << (h - 1); x < (std::uint64_t{1} << h); ++x) {
            const std::uint64_t v = (x << h) | x;
            if (v < bound) out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

BitVector random_bits(std::mt19937_64& rng, std::size_t n, double p) {
    std::bernoulli_distribution coin(p);
    BitVector b(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (coin(rng)) b.set(i);
    }
    return b;
}

}  // namespace

TEST(Kernels, SerialParallelAndNaiveAgree) {
    std::mt19937_64 rng(21);
    for (const std::size_t n : {1ul, 63ul, 64ul, 65ul, 1000ul, 4096ul, 70001ul}) {
        for (int trial = 0; trial < 5; ++trial) {
            const BitVector src = random_bits(rng, n, 0.05);
            std::vector<std::uint64_t> shifts;
            for (int k = 0; k < 12; ++k) shifts.push_back(rng() % (n + 70));
            BitVector naive(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (!src.test(i)) continue;
                for (std::uint64_t s : shifts) {
                    if (i + s < n) naive.set(i + s);
                }
            }
            BitVector serial(n), parallel(n);
            kernels::shift_or_serial(serial.words(), src.words(), shifts, n);
            kernels::shift_or_parallel(parallel.words(), src.words(), shifts, n);
            ASSERT_EQ(serial, naive) << n;
            ASSERT_EQ(parallel, naive) << n;
            ASSERT_EQ(sumset(src, shifts, false), naive);
            ASSERT_EQ(sumset(src, shifts, true), naive);
        }
    }
}

TEST(Kernels, ThreadCountSetting) {
    set_kernel_threads(2);
    EXPECT_EQ(kernel_threads(), 2);
    set_kernel_threads(0);
    EXPECT_GE(kernel_threads(), 1);
}

TEST(SumsetTable, MatchesNestedLoops) {
    const std::uint64_t bound = 1u << 10;
    const auto g = naive_squares(bound);
    std::set<std::uint64_t> one(g.begin(), g.end()), two, three, four;
    for (auto a : g)
        for (auto b : g)
            if (a + b < bound) two.insert(a + b);
    for (auto a : two)
        for (auto b : g)
            if (a + b < bound) three.insert(a + b);
    for (auto a : two)
        for (auto b : two)
            if (a + b < bound) four.insert(a + b);
    const auto t = sumset_table(GroundSetKind::BinarySquare, bound, 4);
    const std::set<std::uint64_t>* expect[] = {&one, &two, &three, &four};
    for (unsigned k = 1; k <= 4; ++k) {
        const auto got = t.at(k).members();
        ASSERT_EQ(std::set<std::uint64_t>(got.begin(), got.end()), *expect[k - 1]) << k;
    }
    const auto serial = sumset_table(GroundSetKind::BinarySquare, bound, 4, false, false);
    for (unsigned k = 0; k <= 4; ++k) ASSERT_EQ(serial.at(k), t.at(k));
}

TEST(SumsetTable, PositiveOnlyMatchesNestedLoops) {
    const std::uint64_t bound = 600;
    auto g = naive_squares(bound);
    g.erase(g.begin());
    std::set<std::uint64_t> exact;
    for (auto a : g)
        for (auto b : g)
            for (auto c : g)
                for (auto d : g)
                    if (a + b + c + d < bound) exact.insert(a + b + c + d);
    const auto got = sumset_table(GroundSetKind::BinarySquare, bound, 4, true).at(4).members();
    EXPECT_EQ(std::set<std::uint64_t>(got.begin(), got.end()), exact);
}

TEST(SumsetTable, CountsBelowTwoToSeventeen) {
    const auto t = sumset_table(GroundSetKind::BinarySquare, 1u << 17, 4);
    EXPECT_EQ(t.at(1).count(), 256u);
    EXPECT_EQ(t.at(2).count(), 19542u);
    EXPECT_EQ(t.at(3).count(), 95422u);
    EXPECT_EQ(t.at(4).count(), 131016u);
}

TEST(Exceptions, MatchGoldenLists) {
    const auto four = exceptions_four_squares(1u << 17);
    EXPECT_EQ(four, read_golden("exceptions_131072.golden"));
    EXPECT_EQ(four.size(), 56u);
    EXPECT_EQ(four.back(), 686u);
    const auto positive = exceptions_exact_four_positive(1u << 17);
    EXPECT_EQ(positive, read_golden("exact_four_positive_131072.golden"));
    EXPECT_EQ(positive.size(), 112u);
    EXPECT_EQ(positive.back(), 1772u);
    EXPECT_THROW(exceptions_four_squares(686), std::invalid_argument);
    EXPECT_THROW(exceptions_exact_four_positive(1772), std::invalid_argument);
}

TEST(Density, PrefixCountsMatchNaive) {
    const auto g = naive_squares(5000);
    std::vector<char> in_s2(5000, 0);
    for (auto a : g)
        for (auto b : g)
            if (a + b < 5000) in_s2[a + b] = 1;
    const TwoSquaresCounter counter(4999);
    std::uint64_t running = 0;
    for (std::uint64_t m = 1; m < 5000; ++m) {
        running += in_s2[m];
        ASSERT_EQ(counter.count(m), running);
        ASSERT_EQ(counter.density(m), Rational(static_cast<std::int64_t>(running), static_cast<std::int64_t>(m)));
    }
    EXPECT_EQ(two_squares_density(4999), counter.density(4999));
    EXPECT_THROW(two_squares_density(13), std::invalid_argument);
}

TEST(Density, LowerBoundAndOscillation) {
    const TwoSquaresCounter counter(1u << 20);
    for (std::uint64_t m = 14; m < (1u << 17); ++m) ASSERT_GE(counter.density(m), Rational(1, 40)) << m;
    auto as_double = [](const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); };
    // Peaks near even powers of two, troughs near odd ones.
    EXPECT_NEAR(as_double(counter.density(1u << 20)), 0.23897, 1e-4);
    EXPECT_NEAR(as_double(counter.density(1u << 19)), 0.14600, 1e-4);
    double trough = 1;
    for (std::uint64_t m = 1u << 19; m <= (1u << 20); ++m) trough = std::min(trough, as_double(counter.density(m)));
    EXPECT_GE(trough, 0.12);
    EXPECT_LE(trough, 0.16);
}

TEST(Uniqueness, SumsetSizeIsTwoToTwoNMinusOne) {
    for (unsigned n = 1; n <= 10; ++n) EXPECT_EQ(sumset_uniqueness(n), std::uint64_t{1} << (2 * n - 1)) << n;
    for (unsigned n = 1; n <= 6; ++n) {
        std::set<std::uint64_t> sums;
        const std::uint64_t lo = std::uint64_t{1} << (n - 1), hi = std::uint64_t{1} << n;
        for (std::uint64_t x = lo; x < hi; ++x)
            for (std::uint64_t y = 2 * lo; y < 2 * hi; ++y) sums.insert(x * (hi + 1) + y * (2 * hi + 1));
        EXPECT_EQ(sumset_uniqueness(n), sums.size());
    }
    EXPECT_THROW(sumset_uniqueness(0), std::invalid_argument);
    EXPECT_THROW(sumset_uniqueness(13), std::invalid_argument);
}

TEST(Optimality, OnlyTwoToTheNinth) {
    const auto rows = optimality_check(25);
    ASSERT_EQ(rows.size(), 13u);
    for (const auto& row : rows) {
        EXPECT_EQ(row.representable, row.n == 9) << row.n;
        for (const auto& w : row.witnesses) {
            std::uint64_t sum = 0;
            for (auto v : w) {
                EXPECT_TRUE(v > 0 && is_binary_square(v));
                sum += v;
            }
            EXPECT_EQ(sum, std::uint64_t{1} << row.n);
        }
    }
    const std::vector<std::vector<std::uint64_t>> expect{{255, 221, 36}, {238, 238, 36}};
    auto got = rows[4].witnesses;
    std::sort(got.begin(), got.end());
    auto want = expect;
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want);
    // Naive triple loop over odd n <= 15.
    for (unsigned n = 1; n <= 15; n += 2) {
        const std::uint64_t target = std::uint64_t{1} << n;
        auto g = naive_squares(target + 1);
        bool found = false;
        for (auto a : g)
            for (auto b : g)
                for (auto c : g) {
                    if (a + b + c == target && (a > 0 || b > 0 || c > 0)) found = true;
                }
        EXPECT_EQ(found, n == 9) << n;
    }
}

TEST(Residue, FormulaMatchesModularArithmetic) {
    std::set<std::tuple<unsigned, unsigned, std::uint64_t>> solutions;
    std::size_t cases = 0;
    for (unsigned m = 1; m <= 16; ++m) {
        const std::uint64_t mod = (std::uint64_t{1} << m) + 1;
        for (unsigned g = 1; g < m; ++g) {
            if (2 * g <= m) {
                EXPECT_THROW(residue_formula(m, g, std::uint64_t{1} << (g - 1)), std::invalid_argument);
                continue;
            }
            for (std::uint64_t c = std::uint64_t{1} << (g - 1); c < (std::uint64_t{1} << g); ++c) {
                const std::uint64_t direct = c * ((std::uint64_t{1} << g) + 1) % mod;
                ASSERT_EQ(residue_formula(m, g, c), direct) << m << ' ' << g << ' ' << c;
                if (direct == 2) solutions.insert({m, g, c});
                ++cases;
            }
        }
    }
    EXPECT_GT(cases, 0u);
    const std::set<std::tuple<unsigned, unsigned, std::uint64_t>> only{{4, 3, 4}};
    EXPECT_EQ(solutions, only);
}

TEST(DecomposeBrute, AgreesWithTables) {
    const std::uint64_t bound = 1u << 12;
    const auto t = sumset_table(GroundSetKind::BinarySquare, bound, 4);
    for (std::uint64_t n = 0; n < bound; ++n) {
        for (unsigned k = 1; k <= 4; ++k) {
            const auto d = decompose_brute(n, GroundSetKind::BinarySquare, k);
            ASSERT_EQ(d.has_value(), t.at(k).test(n)) << n << ' ' << k;
            if (!d) continue;
            ASSERT_EQ(d->size(), k);
            std::uint64_t sum = 0;
            for (auto v : *d) {
                ASSERT_TRUE(is_binary_square(v));
                sum += v;
            }
            ASSERT_EQ(sum, n);
            ASSERT_TRUE(std::is_sorted(d->rbegin(), d->rend()));
        }
    }
    EXPECT_FALSE(decompose_brute(7, GroundSetKind::GeneralizedBinarySquare, 3));
    EXPECT_THROW(decompose_brute(1u << 24, GroundSetKind::BinarySquare, 4), std::invalid_argument);
    EXPECT_THROW(decompose_brute(5, GroundSetKind::BinarySquare, 5), std::invalid_argument);
}

TEST(ProfileSumset, MatchesNaiveEnumeration) {
    // Length 8: at most 3 squares of length 4 plus at most 4 of length 6.
    std::vector<std::uint64_t> c4{0}, c6{0};
    for (auto v : squares_of_length(4)) c4.push_back(v);
    for (auto v : squares_of_length(6)) c6.push_back(v);
    std::set<std::uint64_t> sums{0};
    auto extend = [](const std::set<std::uint64_t>& s, const std::vector<std::uint64_t>& g) {
        std::set<std::uint64_t> out;
        for (auto a : s)
            for (auto b : g) out.insert(a + b);
        return out;
    };
    for (int i = 0; i < 3; ++i) sums = extend(sums, c4);
    for (int i = 0; i < 4; ++i) sums = extend(sums, c6);
    std::vector<std::uint64_t> naive;
    for (auto v : sums) {
        if (v >= 128 && v < 256) naive.push_back(v);
    }
    const auto got = profile_sumset(8, {{4, 3, true}, {6, 4, true}}, GroundSetKind::BinarySquare, 0);
    EXPECT_EQ(got, naive);

    // Exact counts with one power of two.
    std::set<std::uint64_t> exact;
    for (auto a : squares_of_length(6))
        for (auto b : squares_of_length(4))
            for (unsigned p = 0; p <= 9; ++p) {
                const std::uint64_t v = a + b + (p == 9 ? 0 : std::uint64_t{1} << p);
                if (v >= 128 && v < 256) exact.insert(v);
            }
    const auto got2 = profile_sumset(8, {{6, 1, false}, {4, 1, false}}, GroundSetKind::BinarySquare, 1);
    EXPECT_EQ(got2, std::vector<std::uint64_t>(exact.begin(), exact.end()));
}

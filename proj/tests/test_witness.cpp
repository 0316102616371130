#include <gtest/gtest.h>

#include <random>

#include "binsq/oracle.hpp"
#include "binsq/witness.hpp"

using namespace binsq;

namespace {

Natural random_of_length(std::mt19937_64& rng, unsigned len) {
    Natural n = Natural(1) << (len - 1);
    for (unsigned b = 0; b + 1 < len; ++b) {
        if (rng() & 1) n |= Natural(1) << b;
    }
    return n;
}

// Independent check: recompute the sum and every membership by string halves.
void expect_sound(const Decomposition& d, GroundSetKind square_role) {
    Natural sum = 0;
    for (const auto& p : d.parts) {
        sum += p.value;
        if (p.role == GroundSetKind::PowerOfTwo) {
            EXPECT_TRUE(p.value > 0 && (p.value & (p.value - 1)) == 0);
            continue;
        }
        EXPECT_EQ(p.role, square_role);
        if (p.value == 0) continue;
        std::string s = to_binary_string(p.value);
        if (square_role == GroundSetKind::GeneralizedBinarySquare && s.size() % 2) s.insert(0, "0");
        bool ok = false;
        for (std::size_t pad = 0; pad <= s.size() && !ok; pad += 2) {
            const std::string t = std::string(pad, '0') + s;
            ok = t.substr(0, t.size() / 2) == t.substr(t.size() / 2);
            if (square_role == GroundSetKind::BinarySquare) break;
        }
        EXPECT_TRUE(ok) << p.value.str();
    }
    EXPECT_EQ(sum, d.target);
    EXPECT_TRUE(is_valid(d));
}

}  // namespace

TEST(Witness, TableRangeMatchesExceptions) {
    const auto exceptions = exceptions_four_squares(1u << 14);
    for (std::uint64_t v = 0; v < (1u << 14); ++v) {
        if (std::binary_search(exceptions.begin(), exceptions.end(), v)) {
            ASSERT_THROW(decompose(Natural(v)), NotRepresentable) << v;
            continue;
        }
        const Decomposition d = decompose(Natural(v));
        ASSERT_EQ(d.parts.size(), 4u);
        ASSERT_TRUE(is_valid(d)) << v;
    }
}

TEST(Witness, FourSquaresForLargeInputs) {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 60; ++i) {
        const unsigned len = 18 + static_cast<unsigned>(rng() % 300);
        const Decomposition d = decompose(random_of_length(rng, len));
        EXPECT_EQ(d.source, WitnessSource::Machine);
        EXPECT_EQ(d.parts.size(), 4u);
        EXPECT_TRUE(d.profile.has_value());
        EXPECT_GT(d.product_states, 0u);
        expect_sound(d, GroundSetKind::BinarySquare);
    }
    expect_sound(decompose((Natural(1) << 101) + 17), GroundSetKind::BinarySquare);
    expect_sound(decompose(Natural(1) << 200), GroundSetKind::BinarySquare);
    expect_sound(decompose((Natural(1) << 64) - 1), GroundSetKind::BinarySquare);
}

TEST(Witness, ProductStatesGrowWithLength) {
    std::mt19937_64 rng(42);
    const auto small = decompose(random_of_length(rng, 41)).product_states;
    const auto large = decompose(random_of_length(rng, 401)).product_states;
    EXPECT_GT(large, 5 * small);
}

TEST(Witness, SquarePowerBelowAndAbove512) {
    for (std::uint64_t v = 0; v < 512; ++v) {
        const Decomposition d = decompose_square_power(Natural(v));
        ASSERT_TRUE(is_valid(d)) << v;
        unsigned squares = 0, powers = 0;
        for (const auto& p : d.parts) (p.role == GroundSetKind::PowerOfTwo ? powers : squares)++;
        ASSERT_LE(squares, 2u);
        ASSERT_LE(powers, 2u);
    }
    std::mt19937_64 rng(43);
    for (int i = 0; i < 40; ++i) {
        const Decomposition d = decompose_square_power(random_of_length(rng, 10 + static_cast<unsigned>(rng() % 200)));
        expect_sound(d, GroundSetKind::BinarySquare);
        unsigned squares = 0, powers = 0;
        for (const auto& p : d.parts) (p.role == GroundSetKind::PowerOfTwo ? powers : squares)++;
        EXPECT_LE(squares, 2u);
        EXPECT_LE(powers, 2u);
    }
}

TEST(Witness, GeneralizedTriples) {
    for (std::uint64_t v = 0; v <= 7; ++v) {
        const bool exists = decompose_brute(v, GroundSetKind::GeneralizedBinarySquare, 3).has_value();
        if (exists) {
            EXPECT_TRUE(is_valid(decompose_generalized(Natural(v))));
        } else {
            EXPECT_THROW(decompose_generalized(Natural(v)), NotRepresentable) << v;
        }
    }
    EXPECT_THROW(decompose_generalized(Natural(7)), NotRepresentable);
    for (std::uint64_t v = 8; v < 2000; ++v) {
        const Decomposition d = decompose_generalized(Natural(v));
        ASSERT_EQ(d.parts.size(), 3u) << v;
        ASSERT_TRUE(is_valid(d)) << v;
    }
    std::mt19937_64 rng(44);
    for (int i = 0; i < 40; ++i) {
        const Decomposition d = decompose_generalized(random_of_length(rng, 7 + static_cast<unsigned>(rng() % 200)));
        EXPECT_EQ(d.parts.size(), 3u);
        expect_sound(d, GroundSetKind::GeneralizedBinarySquare);
    }
}

TEST(Witness, ValidityRejectsBadParts) {
    Decomposition d;
    d.target = 10;
    d.parts = {{9, GroundSetKind::BinarySquare}, {1, GroundSetKind::PowerOfTwo}};
    EXPECT_FALSE(is_valid(d));  // 9 is not a binary square
    d.parts[0].role = GroundSetKind::GeneralizedBinarySquare;
    EXPECT_TRUE(is_valid(d));
    d.target = 11;
    EXPECT_FALSE(is_valid(d));
}

TEST(Witness, Describe) {
    EXPECT_EQ(describe({221, GroundSetKind::BinarySquare}), "221 = 11011101 = (1101)(1101)");
    EXPECT_EQ(describe({64, GroundSetKind::PowerOfTwo}), "64 = 2^6");
    EXPECT_EQ(describe({9, GroundSetKind::GeneralizedBinarySquare}), "9 = 1001 = (001)(001)");
    EXPECT_EQ(describe({0, GroundSetKind::BinarySquare}), "0");
}

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace binsq {

using Natural = boost::multiprecision::cpp_int;

// Base-2 digits, least significant first. The empty sequence is 0 and the
// last entry, when present, is always 1.
struct Bits {
    std::vector<std::uint8_t> digits;

    std::size_t length() const { return digits.size(); }
    bool operator==(const Bits&) const = default;
};

enum class GroundSetKind { BinarySquare, GeneralizedBinarySquare, PowerOfTwo };

std::string_view to_string(GroundSetKind kind);

Bits to_bits(const Natural& n);
Natural from_bits(const Bits& bits);

// Number of digits of (N)_2; 0 for N = 0.
unsigned bit_length(const Natural& n);
unsigned bit_length(std::uint64_t n);

// Canonical most-significant-first rendering, "" for 0.
std::string to_binary_string(const Natural& n);

Natural parse_natural(std::string_view text);

bool is_binary_square(const Natural& n);
bool is_binary_square(std::uint64_t n);

bool is_generalized_binary_square(const Natural& n);
bool is_generalized_binary_square(std::uint64_t n);

bool is_power_of_two(const Natural& n);
bool is_power_of_two(std::uint64_t n);

bool is_member(GroundSetKind kind, const Natural& n);
bool is_member(GroundSetKind kind, std::uint64_t n);

// C_n for n = two_n / 2, ascending. Throws std::invalid_argument on odd or
// zero two_n, or when the values would not fit in 64 bits.
std::vector<std::uint64_t> squares_of_length(unsigned two_n);

// Generalized binary squares of padded length two_n: y * (2^n + 1) for
// 0 <= y < 2^n, ascending.
std::vector<std::uint64_t> generalized_squares_of_length(unsigned two_n);

// Sorted members of the ground set strictly below bound.
std::vector<std::uint64_t> ground_set_upto(GroundSetKind kind, std::uint64_t bound);

}  // namespace binsq

#include "binsq/numberforms.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace binsq {

std::string_view to_string(GroundSetKind kind) {
    switch (kind) {
        case GroundSetKind::BinarySquare: return "binary-square";
        case GroundSetKind::GeneralizedBinarySquare: return "generalized-binary-square";
        case GroundSetKind::PowerOfTwo: return "power-of-two";
    }
    return "?";
}

unsigned bit_length(const Natural& n) {
    if (n.is_zero()) return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
}

unsigned bit_length(std::uint64_t n) {
    return static_cast<unsigned>(std::bit_width(n));
}

Bits to_bits(const Natural& n) {
    Bits out;
    const unsigned len = bit_length(n);
    out.digits.resize(len);
    for (unsigned i = 0; i < len; ++i) {
        out.digits[i] = boost::multiprecision::bit_test(n, i) ? 1 : 0;
    }
    return out;
}

Natural from_bits(const Bits& bits) {
    Natural n = 0;
    for (std::size_t i = bits.digits.size(); i-- > 0;) {
        if (bits.digits[i] > 1) throw std::invalid_argument("from_bits: digit is not binary");
        n <<= 1;
        n += bits.digits[i];
    }
    return n;
}

std::string to_binary_string(const Natural& n) {
    const unsigned len = bit_length(n);
    std::string s(len, '0');
    for (unsigned i = 0; i < len; ++i) {
        if (boost::multiprecision::bit_test(n, i)) s[len - 1 - i] = '1';
    }
    return s;
}

Natural parse_natural(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    Natural n = 0;
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("not a natural number: " + std::string(text));
        }
        n *= 10;
        n += c - '0';
    }
    return n;
}

bool is_binary_square(const Natural& n) {
    if (n.is_zero()) return true;
    const unsigned len = bit_length(n);
    if (len % 2 != 0) return false;
    const unsigned half = len / 2;
    const Natural mask = (Natural(1) << half) - 1;
    return (n >> half) == (n & mask);
}

bool is_binary_square(std::uint64_t n) {
    if (n == 0) return true;
    const unsigned len = bit_length(n);
    if (len % 2 != 0) return false;
    const unsigned half = len / 2;
    return (n >> half) == (n & ((std::uint64_t{1} << half) - 1));
}

bool is_generalized_binary_square(const Natural& n) {
    if (n.is_zero()) return true;
    const unsigned len = bit_length(n);
    // Padded to 2L digits with L in [ceil(len/2), len]; a nonzero y forces L < len.
    for (unsigned half = (len + 1) / 2; half <= len; ++half) {
        const Natural mask = (Natural(1) << half) - 1;
        if ((n >> half) == (n & mask)) return true;
    }
    return false;
}

bool is_generalized_binary_square(std::uint64_t n) {
    if (n == 0) return true;
    const unsigned len = bit_length(n);
    for (unsigned half = (len + 1) / 2; half <= len && half < 64; ++half) {
        if ((n >> half) == (n & ((std::uint64_t{1} << half) - 1))) return true;
    }
    return false;
}

bool is_power_of_two(const Natural& n) {
    if (n.is_zero()) return false;
    return boost::multiprecision::lsb(n) == boost::multiprecision::msb(n);
}

bool is_power_of_two(std::uint64_t n) {
    return std::has_single_bit(n);
}

bool is_member(GroundSetKind kind, const Natural& n) {
    switch (kind) {
        case GroundSetKind::BinarySquare: return is_binary_square(n);
        case GroundSetKind::GeneralizedBinarySquare: return is_generalized_binary_square(n);
        case GroundSetKind::PowerOfTwo: return is_power_of_two(n);
    }
    return false;
}

bool is_member(GroundSetKind kind, std::uint64_t n) {
    switch (kind) {
        case GroundSetKind::BinarySquare: return is_binary_square(n);
        case GroundSetKind::GeneralizedBinarySquare: return is_generalized_binary_square(n);
        case GroundSetKind::PowerOfTwo: return is_power_of_two(n);
    }
    return false;
}

std::vector<std::uint64_t> squares_of_length(unsigned two_n) {
    if (two_n == 0 || two_n % 2 != 0) {
        throw std::invalid_argument("squares_of_length: length must be even and positive");
    }
    if (two_n > 62) throw std::invalid_argument("squares_of_length: length exceeds 62 bits");
    const unsigned n = two_n / 2;
    const std::uint64_t mult = (std::uint64_t{1} << n) + 1;
    std::vector<std::uint64_t> out;
    out.reserve(std::size_t{1} << (n - 1));
    for (std::uint64_t a = std::uint64_t{1} << (n - 1); a < (std::uint64_t{1} << n); ++a) {
        out.push_back(a * mult);
    }
    return out;
}

std::vector<std::uint64_t> generalized_squares_of_length(unsigned two_n) {
    if (two_n == 0 || two_n % 2 != 0) {
        throw std::invalid_argument("generalized_squares_of_length: length must be even and positive");
    }
    if (two_n > 62) throw std::invalid_argument("generalized_squares_of_length: length exceeds 62 bits");
    const unsigned n = two_n / 2;
    const std::uint64_t mult = (std::uint64_t{1} << n) + 1;
    std::vector<std::uint64_t> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) out.push_back(y * mult);
    return out;
}

std::vector<std::uint64_t> ground_set_upto(GroundSetKind kind, std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    switch (kind) {
        case GroundSetKind::BinarySquare: {
            if (bound > 0) out.push_back(0);
            for (unsigned n = 1; 2 * n <= 62; ++n) {
                const std::uint64_t mult = (std::uint64_t{1} << n) + 1;
                const std::uint64_t lo = std::uint64_t{1} << (n - 1);
                if (lo * mult >= bound) break;
                for (std::uint64_t a = lo; a < (std::uint64_t{1} << n) && a * mult < bound; ++a) {
                    out.push_back(a * mult);
                }
            }
            break;
        }
        case GroundSetKind::GeneralizedBinarySquare: {
            if (bound > 0) out.push_back(0);
            for (unsigned n = 1; 2 * n <= 62; ++n) {
                const std::uint64_t mult = (std::uint64_t{1} << n) + 1;
                if (mult >= bound) break;
                for (std::uint64_t y = 1; y < (std::uint64_t{1} << n) && y * mult < bound; ++y) {
                    out.push_back(y * mult);
                }
            }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            break;
        }
        case GroundSetKind::PowerOfTwo: {
            for (std::uint64_t p = 1; p < bound && p != 0; p <<= 1) out.push_back(p);
            break;
        }
    }
    return out;
}

}  // namespace binsq

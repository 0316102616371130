#include "binsq/bitvector.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace binsq {

BitVector::BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

std::size_t BitVector::count() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::size_t BitVector::count_range(std::size_t lo, std::size_t hi) const {
    hi = std::min(hi, size_);
    std::size_t total = 0;
    for (std::size_t i = lo; i < hi && (i & 63) != 0; ++i) total += test(i);
    std::size_t i = lo;
    if ((i & 63) != 0) i = (i | 63) + 1;
    for (; i + 64 <= hi; i += 64) total += static_cast<std::size_t>(std::popcount(words_[i >> 6]));
    for (; i < hi; ++i) total += test(i);
    return total;
}

std::vector<std::uint64_t> BitVector::members() const {
    std::vector<std::uint64_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits != 0) {
            out.push_back(w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

void BitVector::clear_tail() {
    if (size_ % 64 != 0 && !words_.empty()) {
        words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }
}

namespace {

int g_kernel_threads = 0;

inline std::uint64_t shifted_word(std::span<const std::uint64_t> src, std::size_t w,
                                  std::size_t word_shift, unsigned bit_shift) {
    if (w < word_shift) return 0;
    const std::size_t from = w - word_shift;
    std::uint64_t v = src[from] << bit_shift;
    if (bit_shift != 0 && from > 0) v |= src[from - 1] >> (64 - bit_shift);
    return v;
}

void clip(std::span<std::uint64_t> dst, std::size_t nbits) {
    const std::size_t full = nbits / 64;
    if (nbits % 64 != 0 && full < dst.size()) {
        dst[full] &= (std::uint64_t{1} << (nbits % 64)) - 1;
    }
}

void check_sizes(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::size_t nbits) {
    const std::size_t need = (nbits + 63) / 64;
    if (dst.size() < need || src.size() < need) {
        throw std::invalid_argument("shift_or: word spans shorter than nbits");
    }
}

}  // namespace

namespace kernels {

void shift_or_serial(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
                     std::span<const std::uint64_t> shifts, std::size_t nbits) {
    check_sizes(dst, src, nbits);
    const std::size_t nwords = (nbits + 63) / 64;
    for (std::uint64_t s : shifts) {
        if (s >= nbits) continue;
        const std::size_t word_shift = s / 64;
        const unsigned bit_shift = static_cast<unsigned>(s % 64);
        for (std::size_t w = word_shift; w < nwords; ++w) {
            dst[w] |= shifted_word(src, w, word_shift, bit_shift);
        }
    }
    clip(dst, nbits);
}

void shift_or_parallel(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
                       std::span<const std::uint64_t> shifts, std::size_t nbits) {
    check_sizes(dst, src, nbits);
    const std::ptrdiff_t nwords = static_cast<std::ptrdiff_t>((nbits + 63) / 64);
    constexpr std::ptrdiff_t kBlock = 256;
    const std::ptrdiff_t nblocks = (nwords + kBlock - 1) / kBlock;
    const int threads = kernel_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b * kBlock);
        const std::size_t hi = std::min(static_cast<std::size_t>(nwords), lo + kBlock);
        for (std::uint64_t s : shifts) {
            if (s >= nbits) continue;
            const std::size_t word_shift = s / 64;
            const unsigned bit_shift = static_cast<unsigned>(s % 64);
            for (std::size_t w = std::max(lo, word_shift); w < hi; ++w) {
                dst[w] |= shifted_word(src, w, word_shift, bit_shift);
            }
        }
    }
    clip(dst, nbits);
}

}  // namespace kernels

BitVector sumset(const BitVector& src, std::span<const std::uint64_t> shifts, bool parallel) {
    BitVector out(src.size());
    if (parallel) {
        kernels::shift_or_parallel(out.words(), src.words(), shifts, src.size());
    } else {
        kernels::shift_or_serial(out.words(), src.words(), shifts, src.size());
    }
    return out;
}

void set_kernel_threads(int threads) { g_kernel_threads = threads; }

int kernel_threads() {
    if (g_kernel_threads > 0) return g_kernel_threads;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace binsq

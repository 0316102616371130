#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace binsq {

// Fixed-length bitvector over [0, size) backed by 64-bit words. Bits past
// size() in the last word are kept clear.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size);

    std::size_t size() const { return size_; }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    std::size_t count() const;
    // Set bits in [lo, hi).
    std::size_t count_range(std::size_t lo, std::size_t hi) const;
    std::vector<std::uint64_t> members() const;

    std::span<std::uint64_t> words() { return words_; }
    std::span<const std::uint64_t> words() const { return words_; }

    void clear_tail();
    bool operator==(const BitVector&) const = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

namespace kernels {

// dst |= OR over s in shifts of (src << s), truncated to nbits.
// All three spans index the same bit universe [0, nbits).
void shift_or_serial(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
                     std::span<const std::uint64_t> shifts, std::size_t nbits);

// Same contract; destination words are partitioned across OpenMP threads.
void shift_or_parallel(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
                       std::span<const std::uint64_t> shifts, std::size_t nbits);

}  // namespace kernels

// Minkowski sum of the set `src` with `shifts`, clipped to src.size().
BitVector sumset(const BitVector& src, std::span<const std::uint64_t> shifts, bool parallel = true);

// Number of threads parallel kernels will use; 0 restores the runtime default.
void set_kernel_threads(int threads);
int kernel_threads();

}  // namespace binsq

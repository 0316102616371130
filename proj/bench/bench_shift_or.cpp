// Serial vs OpenMP shift-OR on the 4-squares table sizes.

#include <benchmark/benchmark.h>

#include <random>

#include "binsq/bitvector.hpp"
#include "binsq/numberforms.hpp"

using namespace binsq;

namespace {

struct Fixture {
    BitVector src;
    std::vector<std::uint64_t> shifts;
};

Fixture make(std::size_t nbits) {
    Fixture f{BitVector(nbits), ground_set_upto(GroundSetKind::BinarySquare, nbits)};
    std::mt19937_64 rng(9);
    for (std::size_t i = 0; i < nbits; i += 1 + rng() % 16) f.src.set(i);
    return f;
}

template <auto Kernel>
void run(benchmark::State& state) {
    const auto nbits = static_cast<std::size_t>(state.range(0));
    const Fixture f = make(nbits);
    BitVector dst(nbits);
    for (auto _ : state) {
        Kernel(dst.words(), f.src.words(), f.shifts, nbits);
        benchmark::DoNotOptimize(dst.words().data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * f.shifts.size() * nbits / 8));
}

}  // namespace

BENCHMARK(run<kernels::shift_or_serial>)->Name("shift_or_serial")->RangeMultiplier(4)->Range(1 << 14, 1 << 22);
BENCHMARK(run<kernels::shift_or_parallel>)->Name("shift_or_parallel")->RangeMultiplier(4)->Range(1 << 14, 1 << 22);

BENCHMARK_MAIN();

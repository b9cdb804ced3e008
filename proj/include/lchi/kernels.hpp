#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lchi {

// Per-prime sampling data for the random Euler product, laid out for the hot
// loop. One uniform u32 per (sample, prime): u < zero_below -> X(p) = 0,
// else u < plus_below -> X(p) = +1 (adds -log(1-1/p)), else X(p) = -1
// (adds -log(1+1/p)). Arrays are padded to a multiple of 4 primes with
// entries that always add 0.
struct SamplerTables {
    std::size_t n_primes = 0;
    std::vector<std::uint32_t> zero_below;
    std::vector<std::uint32_t> plus_below;
    std::vector<double> add_plus;
    std::vector<double> add_minus;
};
SamplerTables build_sampler_tables(std::span<const std::uint64_t> primes);

// Data-parallel inner loops, one scalar reference implementation plus SIMD
// variants selected at runtime. The three entry points:
//
//   add_periodic   acc[i] += tbl[(r0 + i) mod period]        (bulk log-factor sweep)
//   char_over_n    sum of tbl[(r0 + (n-n0)) mod period] / n  over n in [n0, n1)
//   mc_log_l       out[i] = log L(1,X;y) for sample s0+i     (seeded Philox draws)
//
// mc_log_l and add_periodic are bit-identical across implementations (same
// per-element accumulation order); char_over_n uses lane accumulators in the
// SIMD variants and agrees with the scalar path to ~1e-12 relative.
struct Kernels {
    const char* name;
    void (*add_periodic)(double* acc, std::size_t n, const double* tbl,
                         std::size_t period, std::size_t r0);
    double (*char_over_n)(const double* tbl, std::size_t period, std::size_t r0,
                          std::uint64_t n0, std::uint64_t n1);
    void (*mc_log_l)(std::uint64_t seed, std::uint64_t sample0, std::size_t count,
                     const SamplerTables& st, double* out);
};

const Kernels& scalar_kernels();
const Kernels* avx2_kernels();    // nullptr if not compiled in / not supported
const Kernels& active_kernels();  // runtime dispatch; LCHI_KERNELS=scalar forces the reference

}  // namespace lchi

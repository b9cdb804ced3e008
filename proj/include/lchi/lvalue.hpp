#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lchi/primes.hpp"

namespace lchi {

enum class LMethod { euler_product, partial_sum, smoothed };

const char* method_name(LMethod m);

struct LParams {
    LMethod method = LMethod::euler_product;
    double y = 1e4;                   // euler_product cutoff
    std::uint64_t N = 0;              // partial_sum length
    double Z = 1e6;                   // smoothed weight scale
    std::uint32_t cutoff = 10000000;  // smoothed series cutoff
    static LParams defaults_for(double x);
};

struct LValue {
    std::int64_t d;
    LMethod method;
    double value;
    double error_estimate;
};

// prod_{p<=y} (1 - chi_d(p)/p)^{-1}, evaluated as exp of a compensated sum of
// -log(1 - chi_d(p)/p). Empty product (y < 2) gives 1.
double euler_product(std::int64_t d, double y, const PrimeTable& pt);

// sum_{n<=N} chi_d(n)/n. Requires N >= |d| (otherwise the c|d|/N error bound
// is vacuous and a precision_error is thrown).
double partial_sum_l(std::int64_t d, std::uint64_t N, unsigned workers = 1);

LValue l_value(std::int64_t d, const LParams& params, const PrimeTable& pt,
               unsigned workers = 1);

// log L(1,chi_d; y) for every fundamental |d| <= x, ordered by |d| ascending
// (positive first on ties). The euler_product method runs as a residue-table
// sweep: for each prime the character value over a block of consecutive d is
// a periodic table lookup, so the inner loop is a plain vector add. Bit-exact
// equality with per-d evaluation is not promised (plain vs compensated sums);
// the two paths are cross-checked in the tests to ~1e-10.
struct BulkLValues {
    std::uint64_t x = 0;
    LParams params;
    std::vector<std::int64_t> d;
    std::vector<double> log_l;
};
BulkLValues bulk_log_l(std::uint64_t x, const LParams& params, const PrimeTable& pt,
                       unsigned workers);

}  // namespace lchi

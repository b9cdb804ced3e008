#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace lchi {

// Fundamental discriminant test: d = 1 (mod 4) squarefree, or d = 4m with
// m = 2,3 (mod 4) squarefree. d = 1 itself is excluded (principal character).
// Throws domain_error for d = 0. Squarefreeness by trial division.
bool is_fundamental(std::int64_t d);

// Per-segment fundamental flags for |d| = a with a in [lo, hi), one byte per
// a and sign, computed with a segmented squarefree sieve. This is the bulk
// path; it is cross-checked against is_fundamental in the tests.
struct FundamentalFlags {
    std::uint64_t lo, hi;
    std::vector<std::uint8_t> pos;  // d = +a fundamental
    std::vector<std::uint8_t> neg;  // d = -a fundamental
};
FundamentalFlags fundamental_flags(std::uint64_t lo, std::uint64_t hi);

// Visit every fundamental d with |d| <= x in increasing |d| order, positive
// sign first on ties. Requires x >= 3.
void for_each_fundamental(std::uint64_t x, const std::function<void(std::int64_t)>& fn);

std::vector<std::int64_t> enumerate_fundamental(std::uint64_t x);
std::uint64_t count_fundamental(std::uint64_t x);

}  // namespace lchi

#pragma once

#include <cstdint>

namespace lchi {

// Kronecker symbol (a|n) for any integer a and n >= 0, via binary reciprocity
// (no factoring of n). Completely multiplicative in n; for fundamental d,
// kronecker(d, .) is the quadratic character chi_d with period |d|.
int kronecker(std::int64_t a, std::uint64_t n);

}  // namespace lchi

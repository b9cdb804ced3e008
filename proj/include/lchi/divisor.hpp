#pragma once

#include <complex>
#include <cstdint>

#include "lchi/primes.hpp"

namespace lchi {

// Generalized divisor function d_z(n): multiplicative, with
// d_z(p^a) = z(z+1)...(z+a-1)/a!  (rising factorial; no Gamma calls, so
// nonpositive integer z are exact zeros rather than pole trouble).
std::complex<double> divisor_z(std::uint32_t n, std::complex<double> z,
                               const FactorTable& ft);

// (log 3x)^k, the standard upper bound for sum d_k(n)/n e^{-n/x}; used to
// pick cutoffs.
double smoothed_dk_bound(unsigned k, double x);

// sum_{n<=cutoff} chi_d(n) d_z(n)/n e^{-n/Z}. The dropped tail is bounded by
// e^{-cutoff/(2Z)} (log 6Z)^K with K = ceil(|z|); if that exceeds tol a
// precision_error carrying the achieved bound is thrown.
std::complex<double> smoothed_l_series(std::int64_t d, std::complex<double> z,
                                       double Z, std::uint32_t cutoff,
                                       double tol = 1e-6);

}  // namespace lchi

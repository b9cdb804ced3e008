#pragma once

#include <cstdint>

#include "lchi/model.hpp"
#include "lchi/primes.hpp"

namespace lchi {

// Piecewise kernels behind the c1 integral and the moment shape formulas:
// tail_g(t) = tanh t for t <= 1, tanh t - 1 above; tail_g1(t) = log cosh t,
// minus t above 1.
double tail_g(double t);
double tail_g1(double t);

// c1(x) = integral of tail_g(t)/t over [x, inf), by adaptive Simpson split at
// the t = 1 kink and truncated at t = 40 (tail below 1e-8 there). c1(0) is the
// shift constant in the double-exponential tail law.
double c1(double x = 0.0);

// Mean and variance of log L(1,X;y) under the exponential tilt by k:
//   tilted_log_mean(k,y) = -sum_{p<=y} log(1-1/p) tanh(k/p)
//   tilted_log_var(k,y)  =  sum_{p<=y} 1/(p cosh(k/p))^2
// Pass y = infinity to truncate at max(1e6, 1000 k) with the analytic tail
// estimates added.
double tilted_log_mean(double k, double y, const PrimeTable& pt);
double tilted_log_var(double k, double y, const PrimeTable& pt);

struct SaddlePoint {
    double tau;
    double y;  // may be infinity
    double k;
    double tilted_mean;  // = gamma + log tau up to solver tolerance
    double tilted_var;
};

// Unique k with tilted_log_mean(k; y) = gamma + log tau, by bisection on
// [1e-6, e^{tau+2}] to 1e-10 relative. For finite y requires
// tau <= log(y) - 1 (range_error otherwise, also when no root brackets).
SaddlePoint solve_saddle(double tau, double y, const PrimeTable& pt);

// Saddle-point main terms for P(L >= e^gamma tau) and
// P(L <= zeta(2)/(e^gamma tau)), no error-term correction. Refuse
// tau < 1.5 where the underlying expansion is useless; use mc_tail or
// model_tail_cf there.
double upper_tail_saddle(double tau, double y, const PrimeTable& pt);
double lower_tail_saddle(double tau, double y, const PrimeTable& pt);

// Leading-order double-exponential law exp(-e^{tau - c1}/tau), tau > 1.
double upper_tail_asymptotic(double tau);

// Exact model tail probability by Gil-Pelaez inversion of the characteristic
// function of log L(1,X;y). Deterministic quadrature, accurate to ~1e-6;
// valid at any tau (this is what the distribution tables use for their
// theory columns).
double model_tail_cf(double tau, double y, Tail side, const PrimeTable& pt);

// Prime-table limit the above need for a given (tau, y) pair.
std::uint64_t saddle_prime_limit(double tau, double y);

}  // namespace lchi

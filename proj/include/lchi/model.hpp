#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "lchi/primes.hpp"

namespace lchi {

// Random Euler product L(1,X;y): X(p) independent, +1 and -1 each with
// probability p/(2(p+1)), 0 with probability 1/(p+1).
struct ModelConfig {
    double y = 100.0;
    std::uint64_t seed = 0;
    std::uint64_t samples = 1;
};

enum class Tail { upper, lower };  // L >= e^gamma tau  /  L <= zeta(2)/(e^gamma tau)

// E((1 - X(p)/p)^{-s}), the three-term per-prime expectation.
std::complex<double> ep_expectation(std::uint64_t p, std::complex<double> s);

// log E_p(s) for real s of any size (log-sum-exp; no overflow at large |s|).
double log_ep_real(double p, double s);

// sum of log E_p(s) over the given primes (compensated).
double log_moment_real(double s, std::span<const std::uint64_t> primes);

struct MomentValue {
    std::complex<double> z;
    double y;
    std::complex<double> value;
};

// E(L(1,X;y)^z) = prod_{p<=y} E_p(z). Real z takes the log-space path; for
// complex z each factor is checked against the near-zero floor and a
// degenerate_moment_error names the offending prime.
MomentValue moment(std::complex<double> z, double y, const PrimeTable& pt);

// Extends moment() with y chosen so the tail bound on sum_{p>y} |log E_p(z)|
// is below tol; the chosen y is reported in the result.
MomentValue moment_infinite(std::complex<double> z, double tol);

// Draws of L(1,X;y). A draw is a pure function of (seed, sample index, prime
// index) via Philox, so any partition across workers reproduces the same
// stream.
std::vector<double> sample_l(const ModelConfig& cfg, const PrimeTable& pt,
                             unsigned workers = 1);

struct TailEstimate {
    double estimate;
    double std_error;
    std::uint64_t hits;
    std::uint64_t samples;
};
// Binomial frequency of the chosen tail event over cfg.samples draws.
// Requires samples >= 1000.
TailEstimate mc_tail(const ModelConfig& cfg, double tau, Tail side,
                     const PrimeTable& pt, unsigned workers = 1);

struct McMomentRow {
    double z;
    double mean;       // sample mean of L^z
    double std_error;  // of the mean
};
// Sample moments of L^z plus mean/variance of log L, one pass.
struct McSummary {
    std::vector<McMomentRow> moments;
    double log_mean;
    double log_var;
    std::uint64_t samples;
};
McSummary mc_summary(const ModelConfig& cfg, std::span<const double> zs,
                     const PrimeTable& pt, unsigned workers = 1);

}  // namespace lchi

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lchi/lvalue.hpp"
#include "lchi/primes.hpp"

namespace lchi {

// One row of the distribution comparison: empirical tail frequencies over
// fundamental |d| <= x against the model. phi counts L > e^gamma tau
// (strict), psi counts L <= zeta(2)/(e^gamma tau). Theory columns come from
// characteristic-function inversion of the model; phi_asymptotic is the
// leading double-exponential law (NaN where tau <= 1 is outside its range).
struct DistRow {
    double tau;
    std::uint64_t count_large;
    std::uint64_t count_small;
    std::uint64_t total;
    double phi_empirical;
    double psi_empirical;
    double phi_theory;
    double psi_theory;
    double phi_asymptotic;
};

struct ExtremeEntry {
    std::int64_t d;
    double l;
};

struct DistributionTable {
    std::uint64_t x;
    LParams params;
    std::vector<DistRow> rows;
    std::vector<ExtremeEntry> largest;   // top-10 outlier report
    std::vector<ExtremeEntry> smallest;
    double max_upper_ratio;  // max L / (e^gamma loglog|d|), |d| >= 16
    double min_lower_ratio;  // min L e^gamma loglog|d| / zeta(2), |d| >= 16
};

DistributionTable empirical_distribution(const BulkLValues& bulk,
                                         std::span<const double> tau_grid,
                                         const PrimeTable& pt);
DistributionTable empirical_distribution(std::uint64_t x, std::span<const double> tau_grid,
                                         const LParams& params, const PrimeTable& pt,
                                         unsigned workers);

struct MomentComparison {
    std::complex<double> z;
    std::uint64_t x;
    std::complex<double> empirical;  // mean of L(1,chi_d)^z over fundamental |d| <= x
    std::complex<double> model;      // E(L(1,X)^z)
    double rel_error;
};

MomentComparison empirical_moment(const BulkLValues& bulk, std::complex<double> z,
                                  double model_tol = 1e-6);
MomentComparison empirical_moment(std::uint64_t x, std::complex<double> z,
                                  const LParams& params, const PrimeTable& pt,
                                  unsigned workers);

// Exact integer S(x;n) = sum of chi_d(n) over fundamental |d| <= x.
std::int64_t char_sum_s(std::uint64_t x, std::uint64_t n, unsigned workers = 1);

// Moment and sup-norm diagnostics of S(x;n) over non-square n <= N. Ratios
// against the known envelope shapes are reported, never asserted.
struct CharsumDiagnostics {
    std::uint64_t x, n_max;
    unsigned k;
    double moment_sum;      // sum_{n<=N, n not square} |S(x;n)|^{2k}
    double moment_shape;    // x^{2k} sqrt(N) + x^k N^{3/2}
    double moment_ratio;
    double max_normalized;  // max |S(x;n)| / (sqrt(x) n^{1/4} log(n)^{1/2})
    std::uint64_t argmax_n;
};
CharsumDiagnostics charsum_diagnostics(std::uint64_t x, std::uint64_t n_max, unsigned k);

// Partition of odd primes q <= x (q > z) by the sign vector of (p|q) over
// primes p <= z, with sum log q and the L-weighted sum per class.
struct SymbolClass {
    std::uint32_t key;  // bit i set <=> (p_i|q) = +1
    std::string pattern;
    std::uint64_t count;
    double sum_log_q;
    double sum_l_log_q;
    double mean_l;  // sum_l_log_q / sum_log_q
};
struct SymbolClassReport {
    std::uint64_t x;
    double z;
    std::vector<std::uint64_t> base_primes;
    std::uint64_t primes_processed;
    std::vector<SymbolClass> classes;
};
SymbolClassReport symbol_classes(std::uint64_t x, double z, const LParams& params,
                                 const PrimeTable& pt, unsigned workers);

// Pigeonhole search for squarefree d <= x whose small-prime symbols are all
// +1: primes in [bucket_lo, bucket_hi] are bucketed by their symbol vector
// over primes <= z; same-bucket primes pair into pq with (l|pq) = +1 for all
// l <= z; disjoint pairs are greedily multiplied to maximize the prime sum
// sum_{z<p<=P} (p|d)/p. Every certificate is re-verified from scratch.
struct PigeonholeParams {
    std::uint64_t x = 100000000;
    double z = 7;
    unsigned pair_blocks = 2;   // pairs multiplied into each d
    unsigned count = 3;         // how many d to build
    std::uint64_t bucket_lo = 0;  // 0 -> max(z+1, ceil(log^2 x))
    std::uint64_t bucket_hi = 0;  // 0 -> floor(x^(1/(2 pair_blocks)))
    double score_limit = 1e5;     // P in the score sum
};
struct ExtremeCandidate {
    std::uint64_t d;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    double score;
    double l_value;    // L(1,(./d)) via the fundamental twin +-d = 1 mod 4
    bool symbols_ok;   // re-verified (l|d) = +1 for all l <= z, d squarefree, d <= x
};
struct PigeonholeResult {
    PigeonholeParams params;
    std::vector<std::uint64_t> bucket_sizes;
    std::vector<ExtremeCandidate> candidates;
};
PigeonholeResult pigeonhole_construction(const PigeonholeParams& params,
                                         const PrimeTable& pt);

}  // namespace lchi

#include "lchi/lvalue.hpp"

#include <algorithm>
#include <cmath>

#include "lchi/constants.hpp"
#include "lchi/discriminant.hpp"
#include "lchi/divisor.hpp"
#include "lchi/errors.hpp"
#include "lchi/kahan.hpp"
#include "lchi/kernels.hpp"
#include "lchi/kronecker.hpp"
#include "lchi/parallel.hpp"

namespace lchi {

namespace {

constexpr std::uint64_t kSweepSegment = 1u << 20;
constexpr std::uint64_t kPartialSumBlock = 1u << 22;
constexpr std::size_t kMinTableRun = 2048;      // tile small periods up to this
constexpr std::size_t kTableBudget = 512u << 20;  // bytes, both sign tables

// Periodic lookup table for one prime: entry r is the log factor of
// (1 - chi/p)^{-1} for a discriminant with the given residue. Tiled so the
// kernel's contiguous runs are never shorter than kMinTableRun.
struct LogFactorTable {
    std::size_t period;  // tiled length
    std::vector<double> pos, neg;
};

LogFactorTable build_log_factor_table(std::uint64_t p) {
    LogFactorTable t;
    double ap = -std::log1p(-1.0 / static_cast<double>(p));
    double bp = -std::log1p(1.0 / static_cast<double>(p));
    std::vector<double> base_pos, base_neg;
    std::size_t q;
    if (p == 2) {
        q = 8;  // chi_d(2) depends on d mod 8
        base_pos.assign(8, 0.0);
        base_pos[1] = ap;
        base_pos[7] = ap;
        base_pos[3] = bp;
        base_pos[5] = bp;
    } else {
        q = static_cast<std::size_t>(p);
        base_pos.assign(q, bp);  // non-residues
        base_pos[0] = 0.0;
        for (std::uint64_t i = 1; i <= p / 2; ++i) base_pos[(i * i) % p] = ap;
    }
    base_neg.resize(q);
    for (std::size_t r = 0; r < q; ++r) base_neg[r] = base_pos[(q - r) % q];

    std::size_t tiles = (kMinTableRun + q - 1) / q;
    t.period = q * tiles;
    t.pos.reserve(t.period);
    t.neg.reserve(t.period);
    for (std::size_t i = 0; i < tiles; ++i) {
        t.pos.insert(t.pos.end(), base_pos.begin(), base_pos.end());
        t.neg.insert(t.neg.end(), base_neg.begin(), base_neg.end());
    }
    return t;
}

std::vector<double> build_chi_table(std::int64_t d) {
    std::uint64_t q = static_cast<std::uint64_t>(d < 0 ? -d : d);
    std::vector<double> base(q);
    for (std::uint64_t r = 0; r < q; ++r)
        base[r] = static_cast<double>(kronecker(d, r));
    if (q >= kMinTableRun) return base;
    std::size_t tiles = (kMinTableRun + q - 1) / q;
    std::vector<double> tbl;
    tbl.reserve(q * tiles);
    for (std::size_t i = 0; i < tiles; ++i) tbl.insert(tbl.end(), base.begin(), base.end());
    return tbl;
}

}  // namespace

double default_euler_cutoff(double x) {
    double lg = std::log(std::max(x, 3.0));
    return std::max(1e4, lg * lg * lg);
}

const char* method_name(LMethod m) {
    switch (m) {
        case LMethod::euler_product: return "euler_product";
        case LMethod::partial_sum: return "partial_sum";
        case LMethod::smoothed: return "smoothed";
    }
    return "?";
}

LParams LParams::defaults_for(double x) {
    LParams p;
    p.y = default_euler_cutoff(x);
    return p;
}

double euler_product(std::int64_t d, double y, const PrimeTable& pt) {
    KahanSum s;
    for (std::uint64_t p : pt.primes_upto(y)) {
        int c = kronecker(d, p);
        if (c == 0) continue;
        s.add(-std::log1p(-static_cast<double>(c) / static_cast<double>(p)));
    }
    return std::exp(s.value());
}

double partial_sum_l(std::int64_t d, std::uint64_t N, unsigned workers) {
    std::uint64_t q = static_cast<std::uint64_t>(d < 0 ? -d : d);
    if (q == 0) throw domain_error("partial_sum_l: d = 0");
    if (N < q)
        throw precision_error("partial_sum_l: N = " + std::to_string(N) + " below |d| = " +
                                  std::to_string(q) + ", error bound is vacuous",
                              static_cast<double>(tol::kPartialSumC));
    auto tbl = build_chi_table(d);
    const auto& k = active_kernels();
    std::size_t n_blocks = static_cast<std::size_t>((N + kPartialSumBlock - 1) / kPartialSumBlock);
    std::vector<double> partial(n_blocks, 0.0);
    parallel_blocks(n_blocks, workers, [&](std::size_t b) {
        std::uint64_t n0 = 1 + b * kPartialSumBlock;
        std::uint64_t n1 = std::min<std::uint64_t>(N + 1, n0 + kPartialSumBlock);
        partial[b] = k.char_over_n(tbl.data(), tbl.size(),
                                   static_cast<std::size_t>(n0 % tbl.size()), n0, n1);
    });
    KahanSum s;
    for (double v : partial) s.add(v);
    return s.value();
}

LValue l_value(std::int64_t d, const LParams& params, const PrimeTable& pt,
               unsigned workers) {
    switch (params.method) {
        case LMethod::euler_product: {
            if (params.y < 2)
                return {d, params.method, 1.0, 0.0};
            double v = euler_product(d, params.y, pt);
            double rel = tol::kEulerTruncC / std::sqrt(params.y * std::log(params.y));
            return {d, params.method, v, rel * v};
        }
        case LMethod::partial_sum: {
            if (params.N == 0) throw config_error("l_value: partial_sum needs N >= 1");
            double v = partial_sum_l(d, params.N, workers);
            double q = static_cast<double>(d < 0 ? -d : d);
            return {d, params.method, v, tol::kPartialSumC * q / static_cast<double>(params.N)};
        }
        case LMethod::smoothed: {
            double v = smoothed_l_series(d, 1.0, params.Z, params.cutoff).real();
            unsigned K = 1;
            double tail = std::exp(-0.5 * params.cutoff / params.Z) *
                          smoothed_dk_bound(K, 2.0 * params.Z);
            // the smoothing itself perturbs by roughly |d|-periodic partial sums / Z
            double q = static_cast<double>(d < 0 ? -d : d);
            return {d, params.method, v, tail + tol::kPartialSumC * q / params.Z};
        }
    }
    throw config_error("l_value: unknown method");
}

BulkLValues bulk_log_l(std::uint64_t x, const LParams& params, const PrimeTable& pt,
                       unsigned workers) {
    if (x < 3) throw config_error("bulk_log_l: x must be >= 3");
    BulkLValues out;
    out.x = x;
    out.params = params;

    std::size_t n_segments = static_cast<std::size_t>((x - 1) / kSweepSegment) + 1;
    struct SegmentOut {
        std::vector<std::int64_t> d;
        std::vector<double> log_l;
    };
    std::vector<SegmentOut> segs(n_segments);

    bool table_sweep = params.method == LMethod::euler_product && params.y >= 2;
    if (table_sweep) {
        auto primes = pt.primes_upto(params.y);
        std::size_t bytes = 0;
        for (std::uint64_t p : primes)
            bytes += 2 * 8 * std::max<std::size_t>(static_cast<std::size_t>(p), kMinTableRun);
        if (bytes > kTableBudget) {
            table_sweep = false;  // fall back to per-d products below
        } else {
            std::vector<LogFactorTable> tables(primes.size());
            parallel_blocks(primes.size(), workers, [&](std::size_t i) {
                tables[i] = build_log_factor_table(primes[i]);
            });
            const auto& kern = active_kernels();
            parallel_blocks(n_segments, workers, [&](std::size_t si) {
                std::uint64_t lo = 2 + si * kSweepSegment;
                std::uint64_t hi = std::min(x + 1, lo + kSweepSegment);
                if (lo >= hi) return;
                std::size_t n = static_cast<std::size_t>(hi - lo);
                std::vector<double> acc_pos(n, 0.0), acc_neg(n, 0.0);
                for (const auto& t : tables) {
                    std::size_t r0 = static_cast<std::size_t>(lo % t.period);
                    kern.add_periodic(acc_pos.data(), n, t.pos.data(), t.period, r0);
                    kern.add_periodic(acc_neg.data(), n, t.neg.data(), t.period, r0);
                }
                auto flags = fundamental_flags(lo, hi);
                auto& seg = segs[si];
                for (std::size_t i = 0; i < n; ++i) {
                    std::int64_t a = static_cast<std::int64_t>(lo + i);
                    if (flags.pos[i]) {
                        seg.d.push_back(a);
                        seg.log_l.push_back(acc_pos[i]);
                    }
                    if (flags.neg[i]) {
                        seg.d.push_back(-a);
                        seg.log_l.push_back(acc_neg[i]);
                    }
                }
            });
        }
    }
    if (!table_sweep) {
        // generic path: one l_value per discriminant
        parallel_blocks(n_segments, workers, [&](std::size_t si) {
            std::uint64_t lo = 2 + si * kSweepSegment;
            std::uint64_t hi = std::min(x + 1, lo + kSweepSegment);
            if (lo >= hi) return;
            auto flags = fundamental_flags(lo, hi);
            auto& seg = segs[si];
            for (std::uint64_t a = lo; a < hi; ++a) {
                std::size_t i = static_cast<std::size_t>(a - lo);
                for (int sgn : {+1, -1}) {
                    if (!(sgn > 0 ? flags.pos[i] : flags.neg[i])) continue;
                    std::int64_t d = sgn * static_cast<std::int64_t>(a);
                    seg.d.push_back(d);
                    seg.log_l.push_back(std::log(l_value(d, params, pt, 1).value));
                }
            }
        });
    }

    std::size_t total = 0;
    for (const auto& s : segs) total += s.d.size();
    out.d.reserve(total);
    out.log_l.reserve(total);
    for (const auto& s : segs) {
        out.d.insert(out.d.end(), s.d.begin(), s.d.end());
        out.log_l.insert(out.log_l.end(), s.log_l.begin(), s.log_l.end());
    }
    return out;
}

}  // namespace lchi

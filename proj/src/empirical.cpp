#include "lchi/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "lchi/constants.hpp"
#include "lchi/discriminant.hpp"
#include "lchi/errors.hpp"
#include "lchi/kahan.hpp"
#include "lchi/kronecker.hpp"
#include "lchi/model.hpp"
#include "lchi/parallel.hpp"
#include "lchi/tails.hpp"

namespace lchi {

namespace {

constexpr std::uint64_t kSegment = 1u << 20;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_tau_grid(std::span<const double> grid) {
    if (grid.empty()) throw config_error("tau grid must be nonempty");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw config_error("tau grid must be strictly ascending");
}

}  // namespace

DistributionTable empirical_distribution(const BulkLValues& bulk,
                                         std::span<const double> tau_grid,
                                         const PrimeTable& pt) {
    check_tau_grid(tau_grid);
    DistributionTable out;
    out.x = bulk.x;
    out.params = bulk.params;
    std::uint64_t total = bulk.d.size();

    for (double tau : tau_grid) {
        double thr_up = kEulerGamma + std::log(tau);
        double thr_dn = std::log(kZeta2) - kEulerGamma - std::log(tau);
        std::uint64_t large = 0, small = 0;
        for (double ll : bulk.log_l) {
            large += ll > thr_up;   // strict
            small += ll <= thr_dn;  // weak
        }
        DistRow row;
        row.tau = tau;
        row.count_large = large;
        row.count_small = small;
        row.total = total;
        row.phi_empirical = static_cast<double>(large) / static_cast<double>(total);
        row.psi_empirical = static_cast<double>(small) / static_cast<double>(total);
        row.phi_theory = model_tail_cf(tau, bulk.params.y, Tail::upper, pt);
        row.psi_theory = model_tail_cf(tau, bulk.params.y, Tail::lower, pt);
        row.phi_asymptotic = tau > 1.0 ? upper_tail_asymptotic(tau) : kNaN;
        out.rows.push_back(row);
    }

    // outlier report: top-10 each way, plus the normalized extremes
    std::vector<std::size_t> idx(bulk.d.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::size_t top = std::min<std::size_t>(10, idx.size());
    auto by_ll = [&](std::size_t a, std::size_t b) { return bulk.log_l[a] > bulk.log_l[b]; };
    std::partial_sort(idx.begin(), idx.begin() + top, idx.end(), by_ll);
    for (std::size_t i = 0; i < top; ++i)
        out.largest.push_back({bulk.d[idx[i]], std::exp(bulk.log_l[idx[i]])});
    auto by_ll_rev = [&](std::size_t a, std::size_t b) { return bulk.log_l[a] < bulk.log_l[b]; };
    std::partial_sort(idx.begin(), idx.begin() + top, idx.end(), by_ll_rev);
    for (std::size_t i = 0; i < top; ++i)
        out.smallest.push_back({bulk.d[idx[i]], std::exp(bulk.log_l[idx[i]])});

    out.max_upper_ratio = 0.0;
    out.min_lower_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < bulk.d.size(); ++i) {
        double ad = static_cast<double>(bulk.d[i] < 0 ? -bulk.d[i] : bulk.d[i]);
        if (ad < 16) continue;
        double norm = std::exp(kEulerGamma) * std::log(std::log(ad));
        double l = std::exp(bulk.log_l[i]);
        out.max_upper_ratio = std::max(out.max_upper_ratio, l / norm);
        out.min_lower_ratio = std::min(out.min_lower_ratio, l * norm / kZeta2);
    }
    return out;
}

DistributionTable empirical_distribution(std::uint64_t x, std::span<const double> tau_grid,
                                         const LParams& params, const PrimeTable& pt,
                                         unsigned workers) {
    if (x < 100) throw config_error("empirical_distribution: x must be >= 100");
    check_tau_grid(tau_grid);
    BulkLValues bulk = bulk_log_l(x, params, pt, workers);
    return empirical_distribution(bulk, tau_grid, pt);
}

MomentComparison empirical_moment(const BulkLValues& bulk, std::complex<double> z,
                                  double model_tol) {
    if (std::abs(z) > 16.0)
        throw config_error("empirical_moment: |z| must be <= 16 at this scale");
    KahanSumComplex sum;
    if (z.imag() == 0.0) {
        KahanSum re;
        for (double ll : bulk.log_l) re.add(std::exp(z.real() * ll));
        sum.add(re.value());
    } else {
        for (double ll : bulk.log_l) sum.add(std::exp(z * ll));
    }
    std::complex<double> emp = sum.value() / static_cast<double>(bulk.d.size());
    std::complex<double> model = moment_infinite(z, model_tol).value;
    MomentComparison mc;
    mc.z = z;
    mc.x = bulk.x;
    mc.empirical = emp;
    mc.model = model;
    mc.rel_error = std::abs(emp - model) / std::abs(model);
    return mc;
}

MomentComparison empirical_moment(std::uint64_t x, std::complex<double> z,
                                  const LParams& params, const PrimeTable& pt,
                                  unsigned workers) {
    BulkLValues bulk = bulk_log_l(x, params, pt, workers);
    return empirical_moment(bulk, z);
}

std::int64_t char_sum_s(std::uint64_t x, std::uint64_t n, unsigned workers) {
    if (n == 0) throw config_error("char_sum_s: n must be >= 1");
    std::size_t n_segments = static_cast<std::size_t>((x - 1) / kSegment) + 1;
    std::vector<std::int64_t> partial(n_segments, 0);
    parallel_blocks(n_segments, workers, [&](std::size_t si) {
        std::uint64_t lo = 2 + si * kSegment;
        std::uint64_t hi = std::min(x + 1, lo + kSegment);
        if (lo >= hi) return;
        auto flags = fundamental_flags(lo, hi);
        std::int64_t s = 0;
        for (std::uint64_t a = lo; a < hi; ++a) {
            std::size_t i = static_cast<std::size_t>(a - lo);
            if (flags.pos[i]) s += kronecker(static_cast<std::int64_t>(a), n);
            if (flags.neg[i]) s += kronecker(-static_cast<std::int64_t>(a), n);
        }
        partial[si] = s;
    });
    std::int64_t total = 0;
    for (auto v : partial) total += v;
    return total;
}

CharsumDiagnostics charsum_diagnostics(std::uint64_t x, std::uint64_t n_max, unsigned k) {
    if (x < 3 || x > 100000 || n_max < 1 || n_max > 100000 || k < 1 || k > 2)
        throw config_error("charsum_diagnostics: desk-scale caps are x,N <= 1e5, k in {1,2}");
    // S(x;n) for all n <= N in one pass: chi_d is completely multiplicative,
    // so chi(n) = chi(n/p) chi(p) over a smallest-prime-factor table.
    std::vector<std::int64_t> s(n_max + 1, 0);
    std::vector<std::int32_t> chi(n_max + 1, 0);
    std::vector<std::uint32_t> spf(n_max + 1, 0);
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        if (spf[n] == 0)
            for (std::uint64_t m = n; m <= n_max; m += n)
                if (spf[m] == 0) spf[m] = static_cast<std::uint32_t>(n);
    }
    for_each_fundamental(x, [&](std::int64_t d) {
        chi[1] = 1;
        for (std::uint64_t n = 2; n <= n_max; ++n) {
            std::uint32_t p = spf[n];
            std::uint64_t m = n / p;
            chi[n] = m == 1 ? kronecker(d, p) : chi[m] * chi[p];
        }
        for (std::uint64_t n = 1; n <= n_max; ++n) s[n] += chi[n];
    });
    CharsumDiagnostics out;
    out.x = x;
    out.n_max = n_max;
    out.k = k;
    KahanSum msum;
    double best = 0.0;
    std::uint64_t best_n = 0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)) + 0.5);
        if (r * r == n) continue;
        double a = std::abs(static_cast<double>(s[n]));
        double t = a;
        for (unsigned j = 1; j < 2 * k; ++j) t *= a;
        msum.add(t);
        if (n >= 2) {
            double norm = a / (std::sqrt(static_cast<double>(x)) *
                               std::pow(static_cast<double>(n), 0.25) *
                               std::sqrt(std::log(static_cast<double>(n))));
            if (norm > best) {
                best = norm;
                best_n = n;
            }
        }
    }
    double dx = static_cast<double>(x), dn = static_cast<double>(n_max);
    out.moment_sum = msum.value();
    out.moment_shape = std::pow(dx, 2.0 * k) * std::sqrt(dn) + std::pow(dx, double(k)) * std::pow(dn, 1.5);
    out.moment_ratio = out.moment_sum / out.moment_shape;
    out.max_normalized = best;
    out.argmax_n = best_n;
    return out;
}

SymbolClassReport symbol_classes(std::uint64_t x, double z, const LParams& params,
                                 const PrimeTable& pt, unsigned workers) {
    auto base = pt.primes_upto(z);
    if (base.size() > 8)
        throw config_error("symbol_classes: pi(z) must be <= 8 (got " +
                           std::to_string(base.size()) + " base primes)");
    if (pt.limit() < x) throw config_error("symbol_classes: prime table must cover x");
    auto qs = pt.primes_upto(static_cast<double>(x));
    std::size_t n_classes = std::size_t(1) << base.size();

    struct Agg {
        std::uint64_t count = 0;
        KahanSum log_q, l_log_q;
    };
    std::size_t n_blocks = (qs.size() + 4095) / 4096;
    std::vector<std::vector<Agg>> block_agg(n_blocks);
    parallel_blocks(n_blocks, workers, [&](std::size_t b) {
        std::vector<Agg> agg(n_classes);
        std::size_t i0 = b * 4096, i1 = std::min(qs.size(), i0 + 4096);
        for (std::size_t i = i0; i < i1; ++i) {
            std::uint64_t q = qs[i];
            if (q == 2 || static_cast<double>(q) <= z) continue;
            std::int64_t d = (q % 4 == 1) ? static_cast<std::int64_t>(q)
                                          : -static_cast<std::int64_t>(q);
            std::uint32_t key = 0;
            for (std::size_t bidx = 0; bidx < base.size(); ++bidx)
                if (kronecker(d, base[bidx]) == 1) key |= 1u << bidx;
            double lq = std::log(static_cast<double>(q));
            double l = euler_product(d, params.y, pt);
            agg[key].count += 1;
            agg[key].log_q.add(lq);
            agg[key].l_log_q.add(l * lq);
        }
        block_agg[b] = std::move(agg);
    });

    SymbolClassReport out;
    out.x = x;
    out.z = z;
    out.base_primes.assign(base.begin(), base.end());
    out.primes_processed = 0;
    std::vector<Agg> total(n_classes);
    for (const auto& blk : block_agg)
        for (std::size_t c = 0; c < n_classes; ++c) {
            total[c].count += blk[c].count;
            total[c].log_q.add(blk[c].log_q.value());
            total[c].l_log_q.add(blk[c].l_log_q.value());
        }
    for (std::size_t c = 0; c < n_classes; ++c) {
        SymbolClass sc;
        sc.key = static_cast<std::uint32_t>(c);
        for (std::size_t bidx = 0; bidx < base.size(); ++bidx)
            sc.pattern += (c >> bidx) & 1 ? '+' : '-';
        sc.count = total[c].count;
        sc.sum_log_q = total[c].log_q.value();
        sc.sum_l_log_q = total[c].l_log_q.value();
        sc.mean_l = sc.sum_log_q > 0 ? sc.sum_l_log_q / sc.sum_log_q : kNaN;
        out.primes_processed += sc.count;
        out.classes.push_back(std::move(sc));
    }
    return out;
}

namespace {

bool squarefree_u64(std::uint64_t m) {
    for (std::uint64_t i = 2; i * i <= m; ++i) {
        if (m % i == 0) {
            m /= i;
            if (m % i == 0) return false;
        }
    }
    return true;
}

}  // namespace

PigeonholeResult pigeonhole_construction(const PigeonholeParams& params,
                                         const PrimeTable& pt) {
    PigeonholeParams p = params;
    if (p.pair_blocks < 1) throw config_error("pigeonhole: pair_blocks must be >= 1");
    double lx = std::log(static_cast<double>(p.x));
    if (p.bucket_lo == 0)
        p.bucket_lo = std::max<std::uint64_t>(static_cast<std::uint64_t>(p.z) + 1,
                                              static_cast<std::uint64_t>(lx * lx) + 1);
    if (p.bucket_hi == 0)
        p.bucket_hi = static_cast<std::uint64_t>(
            std::pow(static_cast<double>(p.x), 1.0 / (2.0 * p.pair_blocks)));
    auto base = pt.primes_upto(p.z);
    if (base.size() > 8) throw config_error("pigeonhole: pi(z) must be <= 8");
    if (pt.limit() < p.bucket_hi || pt.limit() < static_cast<std::uint64_t>(p.score_limit))
        throw config_error("pigeonhole: prime table too small");

    PigeonholeResult out;
    out.params = p;
    std::size_t n_buckets = std::size_t(1) << base.size();
    std::vector<std::vector<std::uint64_t>> buckets(n_buckets);
    for (std::uint64_t q : pt.primes_upto(static_cast<double>(p.bucket_hi))) {
        if (q < p.bucket_lo || q == 2) continue;
        std::uint32_t key = 0;
        bool zero = false;
        for (std::size_t b = 0; b < base.size(); ++b) {
            int s = kronecker(static_cast<std::int64_t>(base[b]), q);
            if (s == 0) { zero = true; break; }
            if (s == 1) key |= 1u << b;
        }
        if (!zero) buckets[key].push_back(q);
    }
    out.bucket_sizes.resize(n_buckets);
    for (std::size_t b = 0; b < n_buckets; ++b) out.bucket_sizes[b] = buckets[b].size();

    // disjoint same-bucket pairs; every prime used at most once overall
    struct Pair {
        std::uint64_t p1, p2, prod;
        double score;
        std::vector<std::int8_t> symbol;  // (p'|p1 p2) over score primes
    };
    auto score_primes = pt.primes_upto(p.score_limit);
    std::vector<Pair> pairs;
    for (auto& b : buckets)
        for (std::size_t i = 0; i + 1 < b.size(); i += 2) {
            Pair pr;
            pr.p1 = b[i];
            pr.p2 = b[i + 1];
            pr.prod = pr.p1 * pr.p2;
            bool ok = true;
            for (std::uint64_t l : base)
                if (kronecker(static_cast<std::int64_t>(l), pr.prod) != 1) ok = false;
            if (!ok) continue;  // cannot happen for same-bucket primes; kept as a guard
            pr.symbol.reserve(score_primes.size());
            KahanSum sc;
            for (std::uint64_t sp : score_primes) {
                int v = static_cast<double>(sp) <= p.z
                            ? 0
                            : kronecker(static_cast<std::int64_t>(sp), pr.prod);
                pr.symbol.push_back(static_cast<std::int8_t>(v));
                sc.add(static_cast<double>(v) / static_cast<double>(sp));
            }
            pr.score = sc.value();
            pairs.push_back(std::move(pr));
        }

    std::vector<bool> used(pairs.size(), false);
    for (unsigned c = 0; c < p.count; ++c) {
        // greedy: best single pair, then best joint extension
        std::vector<std::size_t> chosen;
        std::vector<std::int8_t> cur(score_primes.size(), 1);
        std::uint64_t d = 1;
        for (unsigned step = 0; step < p.pair_blocks; ++step) {
            double best = -std::numeric_limits<double>::infinity();
            std::size_t best_i = pairs.size();
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                if (used[i]) continue;
                if (d > p.x / pairs[i].prod) continue;  // product would exceed x
                KahanSum joint;
                for (std::size_t j = 0; j < score_primes.size(); ++j)
                    joint.add(static_cast<double>(cur[j] * pairs[i].symbol[j]) /
                              static_cast<double>(score_primes[j]));
                if (joint.value() > best) {
                    best = joint.value();
                    best_i = i;
                }
            }
            if (best_i == pairs.size()) break;
            used[best_i] = true;
            chosen.push_back(best_i);
            d *= pairs[best_i].prod;
            for (std::size_t j = 0; j < score_primes.size(); ++j)
                cur[j] = static_cast<std::int8_t>(cur[j] * pairs[best_i].symbol[j]);
        }
        if (chosen.empty()) break;
        ExtremeCandidate cand;
        cand.d = d;
        for (auto i : chosen) cand.pairs.emplace_back(pairs[i].p1, pairs[i].p2);
        // certificate: recompute everything from scratch
        KahanSum sc;
        for (std::uint64_t sp : score_primes) {
            if (static_cast<double>(sp) <= p.z) continue;
            sc.add(static_cast<double>(kronecker(static_cast<std::int64_t>(sp), d)) /
                   static_cast<double>(sp));
        }
        cand.score = sc.value();
        cand.symbols_ok = d <= p.x && squarefree_u64(d);
        for (std::uint64_t l : base)
            if (kronecker(static_cast<std::int64_t>(l), d) != 1) cand.symbols_ok = false;
        std::int64_t twin = (d % 4 == 1) ? static_cast<std::int64_t>(d)
                                         : -static_cast<std::int64_t>(d);
        cand.l_value = euler_product(twin, std::min(1e4, static_cast<double>(pt.limit())), pt);
        out.candidates.push_back(std::move(cand));
    }
    return out;
}

}  // namespace lchi

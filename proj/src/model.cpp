#include "lchi/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lchi/constants.hpp"
#include "lchi/errors.hpp"
#include "lchi/kahan.hpp"
#include "lchi/kernels.hpp"
#include "lchi/parallel.hpp"

namespace lchi {

namespace {

constexpr std::uint64_t kMcBlock = 1u << 15;

void validate(const ModelConfig& cfg) {
    if (cfg.samples < 1) throw config_error("model: samples must be >= 1");
    if (!(cfg.y >= 0)) throw config_error("model: y must be nonnegative");
}

// Runs mc_log_l over fixed-size sample blocks; consume(block_idx, logl, first)
// may be called from any worker, so consumers write into per-block slots.
template <typename Consume>
void run_sample_blocks(const ModelConfig& cfg, const PrimeTable& pt, unsigned workers,
                       Consume&& consume) {
    auto primes = pt.primes_upto(cfg.y);
    SamplerTables st = build_sampler_tables(primes);
    const auto& kern = active_kernels();
    std::size_t n_blocks = static_cast<std::size_t>((cfg.samples + kMcBlock - 1) / kMcBlock);
    parallel_blocks(n_blocks, workers, [&](std::size_t b) {
        std::uint64_t first = b * kMcBlock;
        std::size_t count = static_cast<std::size_t>(
            std::min<std::uint64_t>(kMcBlock, cfg.samples - first));
        std::vector<double> buf(count);
        kern.mc_log_l(cfg.seed, first, count, st, buf.data());
        consume(b, std::span<const double>(buf.data(), count), first);
    });
}

}  // namespace

std::complex<double> ep_expectation(std::uint64_t p, std::complex<double> s) {
    double dp = static_cast<double>(p);
    double w1 = dp / (2.0 * (dp + 1.0));
    double w0 = 1.0 / (dp + 1.0);
    std::complex<double> up = std::exp(-s * std::log1p(-1.0 / dp));
    std::complex<double> dn = std::exp(-s * std::log1p(1.0 / dp));
    return w0 + w1 * (up + dn);
}

double log_ep_real(double p, double s) {
    double a = -s * std::log1p(-1.0 / p);  // X = +1 branch exponent
    double b = -s * std::log1p(1.0 / p);   // X = -1
    double lw = std::log(p / (2.0 * (p + 1.0)));
    double lw0 = -std::log1p(p);
    double m = std::max({a + lw, b + lw, lw0});
    return m + std::log(std::exp(a + lw - m) + std::exp(b + lw - m) + std::exp(lw0 - m));
}

double log_moment_real(double s, std::span<const std::uint64_t> primes) {
    KahanSum acc;
    for (std::uint64_t p : primes) acc.add(log_ep_real(static_cast<double>(p), s));
    return acc.value();
}

MomentValue moment(std::complex<double> z, double y, const PrimeTable& pt) {
    if (z == 0.0) return {z, y, 1.0};
    auto primes = pt.primes_upto(y);
    if (z.imag() == 0.0)
        return {z, y, std::exp(log_moment_real(z.real(), primes))};
    KahanSumComplex acc;
    for (std::uint64_t p : primes) {
        std::complex<double> e = ep_expectation(p, z);
        if (std::abs(e) < tol::kMomentFactorFloor)
            throw degenerate_moment_error(
                "moment: |E_p(z)| below floor at p = " + std::to_string(p) +
                    ", z = " + std::to_string(z.real()) + "+" + std::to_string(z.imag()) + "i",
                static_cast<double>(p), std::abs(e));
        acc.add(std::log(e));
    }
    return {z, y, std::exp(acc.value())};
}

MomentValue moment_infinite(std::complex<double> z, double tol) {
    if (!(tol > 0)) throw config_error("moment_infinite: tol must be > 0");
    if (z == 0.0) return {z, std::numeric_limits<double>::infinity(), 1.0};
    // tail: sum_{p>y} |log E_p(z)| <~ |z|^2 sum 1/p^2 <= 2|z|^2/(y log y)
    double za = std::abs(z);
    double target = tol::kMomentTailC * za * za * 2.0 / tol;
    double y = 1e4;
    while (y * std::log(y) < target) y *= 1.5;
    auto pt = shared_primes(static_cast<std::uint64_t>(y) + 1);
    MomentValue mv = moment(z, y, *pt);
    mv.y = y;
    return mv;
}

std::vector<double> sample_l(const ModelConfig& cfg, const PrimeTable& pt,
                             unsigned workers) {
    validate(cfg);
    std::vector<double> out(cfg.samples);
    run_sample_blocks(cfg, pt, workers,
                      [&](std::size_t, std::span<const double> logl, std::uint64_t first) {
                          for (std::size_t i = 0; i < logl.size(); ++i)
                              out[first + i] = std::exp(logl[i]);
                      });
    return out;
}

TailEstimate mc_tail(const ModelConfig& cfg, double tau, Tail side,
                     const PrimeTable& pt, unsigned workers) {
    validate(cfg);
    if (cfg.samples < 1000) throw config_error("mc_tail: need samples >= 1000");
    double thr = side == Tail::upper ? kEulerGamma + std::log(tau)
                                     : std::log(kZeta2) - kEulerGamma - std::log(tau);
    std::size_t n_blocks = static_cast<std::size_t>((cfg.samples + kMcBlock - 1) / kMcBlock);
    std::vector<std::uint64_t> hits(n_blocks, 0);
    run_sample_blocks(cfg, pt, workers,
                      [&](std::size_t b, std::span<const double> logl, std::uint64_t) {
                          std::uint64_t h = 0;
                          for (double v : logl)
                              h += side == Tail::upper ? (v >= thr) : (v <= thr);
                          hits[b] = h;
                      });
    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    double f = static_cast<double>(total) / static_cast<double>(cfg.samples);
    double se = std::sqrt(std::max(f * (1.0 - f), 0.0) / static_cast<double>(cfg.samples));
    return {f, se, total, cfg.samples};
}

McSummary mc_summary(const ModelConfig& cfg, std::span<const double> zs,
                     const PrimeTable& pt, unsigned workers) {
    validate(cfg);
    std::size_t n_blocks = static_cast<std::size_t>((cfg.samples + kMcBlock - 1) / kMcBlock);
    std::size_t nz = zs.size();
    // per block: for each z, sum of L^z and L^{2z}; plus log L and (log L)^2
    std::vector<std::vector<double>> block_sums(n_blocks);
    run_sample_blocks(cfg, pt, workers,
                      [&](std::size_t b, std::span<const double> logl, std::uint64_t) {
                          std::vector<double> s(2 * nz + 2, 0.0);
                          std::vector<KahanSum> acc(2 * nz + 2);
                          for (double v : logl) {
                              for (std::size_t i = 0; i < nz; ++i) {
                                  double lz = std::exp(zs[i] * v);
                                  acc[2 * i].add(lz);
                                  acc[2 * i + 1].add(lz * lz);
                              }
                              acc[2 * nz].add(v);
                              acc[2 * nz + 1].add(v * v);
                          }
                          for (std::size_t i = 0; i < s.size(); ++i) s[i] = acc[i].value();
                          block_sums[b] = std::move(s);
                      });
    std::vector<KahanSum> total(2 * nz + 2);
    for (const auto& s : block_sums)
        for (std::size_t i = 0; i < s.size(); ++i) total[i].add(s[i]);
    double M = static_cast<double>(cfg.samples);
    McSummary out;
    out.samples = cfg.samples;
    for (std::size_t i = 0; i < nz; ++i) {
        double mean = total[2 * i].value() / M;
        double m2 = total[2 * i + 1].value() / M;
        double var = std::max(m2 - mean * mean, 0.0);
        out.moments.push_back({zs[i], mean, std::sqrt(var / M)});
    }
    out.log_mean = total[2 * nz].value() / M;
    out.log_var = std::max(total[2 * nz + 1].value() / M - out.log_mean * out.log_mean, 0.0);
    return out;
}

}  // namespace lchi

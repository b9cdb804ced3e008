#include "lchi/tails.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "lchi/constants.hpp"
#include "lchi/errors.hpp"
#include "lchi/kahan.hpp"

namespace lchi {

namespace {

constexpr double kC1TruncT = 40.0;  // |tanh t - 1|/t tail beyond: < e^{-80}

double simpson_step(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double fa, double b, double fb, double m,
                        double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson_step(a, fa, m, fm, flm);
    double right = simpson_step(m, fm, b, fb, frm);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = simpson_step(a, fa, b, fb, fm);
    return adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, 36);
}

double inv_cosh_sq(double t) {
    // 1/cosh^2, overflow-safe
    if (t > 20.0) return 4.0 * std::exp(-2.0 * t);
    double c = std::cosh(t);
    return 1.0 / (c * c);
}

bool infinite_y(double y) { return std::isinf(y); }

std::uint64_t truncation_limit(double k) {
    double p = std::max(1e6, 1e3 * k);
    return static_cast<std::uint64_t>(p);
}

}  // namespace

double tail_g(double t) { return t <= 1.0 ? std::tanh(t) : std::tanh(t) - 1.0; }

double tail_g1(double t) {
    // log cosh without overflow: |t| + log((1 + e^{-2|t|})/2)
    double lc = std::abs(t) + std::log1p(std::exp(-2.0 * std::abs(t))) - std::log(2.0);
    return t <= 1.0 ? lc : lc - t;
}

double c1(double x) {
    if (!(x >= 0)) throw range_error("c1: x must be >= 0");
    if (x >= kC1TruncT) return 0.0;
    auto over_t = [](double t) { return t == 0.0 ? 1.0 : std::tanh(t) / t; };
    auto tail_part = [](double t) { return (std::tanh(t) - 1.0) / t; };
    double v = 0.0;
    if (x < 1.0) {
        v += integrate(over_t, x, 1.0, 1e-11);
        v += integrate(tail_part, 1.0, kC1TruncT, 1e-11);
    } else {
        v += integrate(tail_part, x, kC1TruncT, 1e-11);
    }
    return v;
}

double tilted_log_mean(double k, double y, const PrimeTable& pt) {
    if (k == 0.0) return 0.0;
    double cut = y;
    double tail = 0.0;
    if (infinite_y(y)) {
        std::uint64_t lim = truncation_limit(k);
        if (pt.limit() < lim)
            throw config_error("tilted_log_mean: need primes to " + std::to_string(lim));
        cut = static_cast<double>(lim);
        double lp = std::log(cut);
        tail = 2.0 * k / (cut * lp);
    }
    KahanSum s;
    for (std::uint64_t p : pt.primes_upto(cut)) {
        double dp = static_cast<double>(p);
        s.add(-std::log1p(-1.0 / dp) * std::tanh(k / dp));
    }
    return s.value() + tail;
}

double tilted_log_var(double k, double y, const PrimeTable& pt) {
    double cut = y;
    double tail = 0.0;
    if (infinite_y(y)) {
        std::uint64_t lim = truncation_limit(k);
        if (pt.limit() < lim)
            throw config_error("tilted_log_var: need primes to " + std::to_string(lim));
        cut = static_cast<double>(lim);
        tail = 2.0 / (cut * std::log(cut));
    }
    KahanSum s;
    for (std::uint64_t p : pt.primes_upto(cut)) {
        double dp = static_cast<double>(p);
        s.add(inv_cosh_sq(k / dp) / (dp * dp));
    }
    return s.value() + tail;
}

std::uint64_t saddle_prime_limit(double tau, double y) {
    if (!infinite_y(y)) return static_cast<std::uint64_t>(y) + 1;
    return truncation_limit(std::exp(tau + 2.0));
}

SaddlePoint solve_saddle(double tau, double y, const PrimeTable& pt) {
    if (!(tau > 0)) throw range_error("solve_saddle: tau must be positive");
    if (!infinite_y(y)) {
        if (y < 2) throw config_error("solve_saddle: y must be >= 2 or infinite");
        if (!(tau <= std::log(y) - 1.0))
            throw range_error("solve_saddle: tau = " + std::to_string(tau) +
                              " outside validity range; need tau <= log(y) - 1 = " +
                              std::to_string(std::log(y) - 1.0));
    }
    double target = kEulerGamma + std::log(tau);
    double lo = 1e-6, hi = std::exp(tau + 2.0);
    auto f = [&](double k) { return tilted_log_mean(k, y, pt) - target; };
    if (!(f(lo) < 0.0 && f(hi) > 0.0))
        throw range_error("solve_saddle: no sign change on [1e-6, e^(tau+2)]; tau = " +
                          std::to_string(tau) + " is outside the solvable range");
    for (int it = 0; it < 200 && hi - lo > 1e-10 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    double k = 0.5 * (lo + hi);
    return {tau, y, k, tilted_log_mean(k, y, pt), tilted_log_var(k, y, pt)};
}

namespace {

double tail_saddle(double tau, double y, const PrimeTable& pt, Tail side) {
    if (!(tau >= tol::kTauFloor))
        throw range_error(
            "tail formulas refuse tau < " + std::to_string(tol::kTauFloor) +
            " (saddle k too small for the expansion); use mc_tail or model_tail_cf");
    SaddlePoint sp = solve_saddle(tau, y, pt);
    double cut = infinite_y(y) ? static_cast<double>(truncation_limit(sp.k)) : y;
    auto primes = pt.primes_upto(cut);
    double log_m, log_scale;
    if (side == Tail::upper) {
        log_m = log_moment_real(sp.k, primes);
        log_scale = sp.k * (kEulerGamma + std::log(tau));
    } else {
        log_m = log_moment_real(-sp.k, primes);
        log_scale = sp.k * (std::log(kZeta2Inv) + kEulerGamma + std::log(tau));
    }
    double log_phi = log_m - std::log(sp.k) - log_scale -
                     0.5 * std::log(2.0 * M_PI * sp.tilted_var);
    return std::exp(log_phi);
}

}  // namespace

double upper_tail_saddle(double tau, double y, const PrimeTable& pt) {
    return tail_saddle(tau, y, pt, Tail::upper);
}

double lower_tail_saddle(double tau, double y, const PrimeTable& pt) {
    return tail_saddle(tau, y, pt, Tail::lower);
}

double upper_tail_asymptotic(double tau) {
    if (!(tau > 0)) throw range_error("upper_tail_asymptotic: tau must be > 0");
    static const double c1_0 = c1(0.0);
    return std::exp(-std::exp(tau - c1_0) / tau);
}

double model_tail_cf(double tau, double y, Tail side, const PrimeTable& pt) {
    auto primes = pt.primes_upto(y);
    std::size_t n = primes.size();
    std::vector<double> w0(n), w1(n), lm(n), lp(n);
    for (std::size_t i = 0; i < n; ++i) {
        double p = static_cast<double>(primes[i]);
        w0[i] = 1.0 / (p + 1.0);
        w1[i] = p / (2.0 * (p + 1.0));
        lm[i] = std::log1p(-1.0 / p);
        lp[i] = std::log1p(1.0 / p);
    }
    double a = side == Tail::upper ? kEulerGamma + std::log(tau)
                                   : std::log(kZeta2) - kEulerGamma - std::log(tau);
    auto integrand = [&](double t) {
        std::complex<double> prod(std::cos(-t * a), std::sin(-t * a));
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> e(w0[i] + w1[i] * (std::cos(t * lm[i]) + std::cos(t * lp[i])),
                                   -w1[i] * (std::sin(t * lm[i]) + std::sin(t * lp[i])));
            prod *= e;
        }
        return prod.imag() / t;
    };
    static const double edges[] = {1e-9, 1.0, 5.0, 20.0, 50.0, 100.0, 200.0, 400.0};
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < sizeof(edges) / sizeof(edges[0]); ++i)
        s += integrate(integrand, edges[i], edges[i + 1], 2e-10);
    double prob = side == Tail::upper ? 0.5 + s / M_PI : 0.5 - s / M_PI;
    return std::clamp(prob, 0.0, 1.0);
}

}  // namespace lchi

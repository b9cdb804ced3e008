#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "lchi/constants.hpp"
#include "lchi/errors.hpp"
#include "lchi/model.hpp"
#include "lchi/primes.hpp"

using namespace lchi;
using cd = std::complex<double>;

TEST_CASE("per-prime expectation point values") {
    for (std::uint64_t p : {2ull, 3ull, 101ull, 9973ull})
        CHECK(ep_expectation(p, 0.0) == cd(1.0));
    CHECK(ep_expectation(2, 1.0).real() == doctest::Approx(11.0 / 9.0).epsilon(1e-15));
    // probabilities sum to 1: p/(2(p+1)) * 2 + 1/(p+1) = 1, exact in integers
    auto pt = shared_primes(1000);
    for (std::uint64_t p : pt->primes_upto(1000.0)) REQUIRE(p + p + 2 == 2 * (p + 1));
}

TEST_CASE("|E_p(k+it)| <= E_p(k)") {
    for (std::uint64_t p : {2ull, 5ull, 17ull, 1009ull})
        for (double k : {0.5, 2.0, 10.0})
            for (double t : {0.1, 1.0, 7.3, 100.0})
                REQUIRE(std::abs(ep_expectation(p, cd(k, t))) <=
                        ep_expectation(p, k).real() * (1 + 1e-12));
}

TEST_CASE("log_ep_real matches the direct formula where both are safe") {
    for (std::uint64_t p : {2ull, 13ull, 997ull})
        for (double k : {-20.0, -1.0, 0.5, 3.0, 40.0})
            CHECK(log_ep_real(static_cast<double>(p), k) ==
                  doctest::Approx(std::log(ep_expectation(p, k).real())).epsilon(1e-12));
    // and survives sizes where the direct product overflows
    CHECK(std::isfinite(log_ep_real(2.0, 5000.0)));
    CHECK(std::isfinite(log_ep_real(2.0, -5000.0)));
}

TEST_CASE("moments") {
    auto pt = shared_primes(2000000);
    SUBCASE("z = 0 is exactly 1") {
        CHECK(moment(0.0, 100.0, *pt).value == cd(1.0));
        CHECK(moment_infinite(0.0, 1e-9).value == cd(1.0));
    }
    SUBCASE("first moment at y = 3") {
        CHECK(moment(1.0, 3.0, *pt).value.real() ==
              doctest::Approx(385.0 / 288.0).epsilon(1e-14));
    }
    SUBCASE("c_p decomposition identity") {
        for (std::uint64_t p : {2ull, 7ull, 101ull})
            for (cd z : {cd(1, 0), cd(2.5, 0), cd(1, 2), cd(-2, 0.5)}) {
                double dp = static_cast<double>(p);
                cd cp = 0.5 * (std::exp(-z * std::log1p(-1.0 / dp)) +
                               std::exp(-z * std::log1p(1.0 / dp)));
                cd rhs = 1.0 / (dp + 1.0) + dp / (dp + 1.0) * cp;
                CHECK(std::abs(ep_expectation(p, z) - rhs) <= 2e-16 * std::abs(rhs));
            }
    }
    SUBCASE("moment_infinite stabilizes") {
        auto m1 = moment_infinite(1.0, 1e-7);
        auto direct = moment(1.0, 2 * m1.y, *shared_primes(static_cast<std::uint64_t>(2 * m1.y) + 1));
        CHECK(std::abs(m1.value - direct.value) / std::abs(direct.value) < 1e-7);
        auto m2 = moment_infinite(2.0, 1e-6);
        auto d2 = moment(2.0, 1e6, *pt);
        CHECK(std::abs(m2.value - d2.value) / std::abs(d2.value) < 1e-5);
    }
    SUBCASE("negative first moment is exactly 1 in the limit") {
        // E_p(-1) = 1 for every p, so the infinite product is 1
        for (std::uint64_t p : {2ull, 3ull, 9973ull})
            CHECK(ep_expectation(p, -1.0).real() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(moment_infinite(-1.0, 1e-8).value.real() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("degenerate moment factor is refused, not mangled") {
    // E_2(s) has a zero near 0.7332 + 13.9744 i; refine it by Newton and ask
    // for a moment there
    cd s(0.73323483, 13.97439287);
    for (int it = 0; it < 50; ++it) {
        cd lm = std::log1p(-0.5), lp = std::log1p(0.5);
        cd e = ep_expectation(2, s);
        cd de = -0.5 * (2.0 / 3.0) * (lm * std::exp(-s * lm) + lp * std::exp(-s * lp));
        if (std::abs(e) < 1e-14) break;
        s -= e / de;
    }
    REQUIRE(std::abs(ep_expectation(2, s)) < 1e-13);
    auto pt = shared_primes(100);
    CHECK_THROWS_AS(moment(s, 3.0, *pt), degenerate_moment_error);
}

TEST_CASE("sampling basics") {
    auto pt = shared_primes(10000);
    SUBCASE("empty product: every draw is 1") {
        ModelConfig cfg{1.5, 77, 100};
        for (double v : sample_l(cfg, *pt)) REQUIRE(v == 1.0);
    }
    SUBCASE("reproducible and worker-independent") {
        ModelConfig cfg{1000.0, 123456789, 70000};
        auto a = sample_l(cfg, *pt, 1);
        auto b = sample_l(cfg, *pt, 3);
        CHECK(a == b);
        cfg.seed = 987;
        auto c = sample_l(cfg, *pt, 1);
        CHECK(a != c);
    }
    SUBCASE("config validation") {
        CHECK_THROWS_AS(sample_l(ModelConfig{100.0, 1, 0}, *pt), config_error);
        CHECK_THROWS_AS(mc_tail(ModelConfig{100.0, 1, 999}, 2.0, Tail::upper, *pt),
                        config_error);
    }
}

TEST_CASE("sampled frequencies match the stated probabilities") {
    auto pt = shared_primes(10000);
    SUBCASE("P(X(2) = 0) = 1/3 within 3 sigma") {
        // with y = 2 the only factor is p = 2, and X(2) = 0 gives log L = 0
        const std::uint64_t M = 300000;
        ModelConfig cfg{2.0, 20240601, M};
        auto draws = sample_l(cfg, *pt);
        std::uint64_t zeros = 0;
        for (double v : draws) zeros += (v == 1.0);
        double f = static_cast<double>(zeros) / static_cast<double>(M);
        double sigma = std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / static_cast<double>(M));
        CHECK(std::abs(f - 1.0 / 3.0) < 3 * sigma);
    }
    SUBCASE("sample mean matches the exact first moment within 3 sigma") {
        const std::uint64_t M = 200000;
        ModelConfig cfg{100.0, 31337, M};
        auto s = mc_summary(cfg, std::vector<double>{1.0}, *pt);
        double exact = moment(1.0, 100.0, *pt).value.real();
        CHECK(std::abs(s.moments[0].mean - exact) < 3 * s.moments[0].std_error);
    }
    SUBCASE("log L mean and variance match the per-prime sums within 4 sigma") {
        const std::uint64_t M = 200000;
        ModelConfig cfg{1000.0, 5150, M};
        auto s = mc_summary(cfg, {}, *pt);
        double mean = 0, second = 0;
        for (std::uint64_t p : pt->primes_upto(1000.0)) {
            double dp = static_cast<double>(p);
            double w1 = dp / (2 * (dp + 1));
            double a = -std::log1p(-1 / dp), b = -std::log1p(1 / dp);
            mean += w1 * (a + b);
            second += w1 * (a * a + b * b) - w1 * (a + b) * w1 * (a + b);
        }
        double se_mean = std::sqrt(s.log_var / static_cast<double>(M));
        CHECK(std::abs(s.log_mean - mean) < 4 * se_mean);
        // variance of the sample variance ~ 2 var^2 / M for near-Gaussian sums
        double se_var = s.log_var * std::sqrt(2.0 / static_cast<double>(M));
        CHECK(std::abs(s.log_var - second) < 4 * se_var);
    }
}

TEST_CASE("mc_tail") {
    auto pt = shared_primes(10000);
    ModelConfig cfg{1000.0, 424242, 50000};
    SUBCASE("threshold below the support gives frequency 1") {
        auto t = mc_tail(cfg, 1e-6, Tail::upper, *pt);
        CHECK(t.estimate == 1.0);
        CHECK(t.std_error == 0.0);
    }
    SUBCASE("stderr formula and determinism across workers") {
        auto a = mc_tail(cfg, 1.2, Tail::upper, *pt, 1);
        auto b = mc_tail(cfg, 1.2, Tail::upper, *pt, 4);
        CHECK(a.hits == b.hits);
        double f = a.estimate;
        CHECK(a.std_error ==
              doctest::Approx(std::sqrt(f * (1 - f) / static_cast<double>(cfg.samples)))
                  .epsilon(1e-12));
    }
    SUBCASE("both tails are nontrivial at tau = 1") {
        auto up = mc_tail(cfg, 1.0, Tail::upper, *pt);
        auto dn = mc_tail(cfg, 1.0, Tail::lower, *pt);
        CHECK(up.estimate > 0.1);
        CHECK(dn.estimate > 0.1);
        CHECK(up.estimate < 0.9);
        CHECK(dn.estimate < 0.9);
    }
}

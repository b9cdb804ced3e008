#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "lchi/divisor.hpp"
#include "lchi/errors.hpp"
#include "lchi/lvalue.hpp"
#include "lchi/primes.hpp"

using namespace lchi;
using cd = std::complex<double>;

namespace {

// ordered k-tuples with product n, by Dirichlet self-convolution of 1
std::vector<std::uint64_t> dk_convolution(unsigned k, std::uint32_t n_max) {
    std::vector<std::uint64_t> cur(n_max + 1, 1), next(n_max + 1, 0);
    cur[0] = 0;
    for (unsigned step = 1; step < k; ++step) {
        std::fill(next.begin(), next.end(), 0);
        for (std::uint32_t d = 1; d <= n_max; ++d)
            for (std::uint32_t m = d; m <= n_max; m += d) next[m] += cur[m / d];
        cur.swap(next);
    }
    return cur;
}

double dz_real(std::uint32_t n, double z, const FactorTable& ft) {
    return divisor_z(n, z, ft).real();
}

}  // namespace

TEST_CASE("point values with brute-force oracles") {
    FactorTable ft(100);
    for (cd z : {cd(0, 0), cd(2, 0), cd(-3.5, 1.25), cd(8, 0)})
        CHECK(divisor_z(1, z, ft) == cd(1.0));
    // d_2(6): divisors of 6 are 1,2,3,6
    CHECK(divisor_z(6, 2.0, ft).real() == doctest::Approx(4.0).epsilon(1e-14));
    // d_3(4): ordered triples with product 4: brute force
    int triples = 0;
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b)
            for (int c = 1; c <= 4; ++c) triples += (a * b * c == 4);
    CHECK(triples == 6);
    CHECK(divisor_z(4, 3.0, ft).real() == doctest::Approx(6.0).epsilon(1e-14));
    // z = 0: nonzero n vanish
    CHECK(divisor_z(2, 0.0, ft) == cd(0.0));
    CHECK(divisor_z(36, 0.0, ft) == cd(0.0));
}

TEST_CASE("d_1 = 1 and d_2 = divisor count up to 10^4") {
    const std::uint32_t N = 10000;
    FactorTable ft(N);
    auto d2 = dk_convolution(2, N);
    for (std::uint32_t n = 1; n <= N; ++n) {
        REQUIRE(dz_real(n, 1.0, ft) == doctest::Approx(1.0).epsilon(1e-12));
        REQUIRE(dz_real(n, 2.0, ft) ==
                doctest::Approx(static_cast<double>(d2[n])).epsilon(1e-11));
    }
}

TEST_CASE("integer k matches ordered-factorization counts") {
    const std::uint32_t N = 10000;
    FactorTable ft(N);
    for (unsigned k : {3u, 4u}) {
        auto dk = dk_convolution(k, N);
        for (std::uint32_t n = 1; n <= N; ++n)
            REQUIRE(dz_real(n, static_cast<double>(k), ft) ==
                    doctest::Approx(static_cast<double>(dk[n])).epsilon(1e-10));
    }
}

TEST_CASE("inequality suite on n <= 2000, |z| <= 8") {
    const std::uint32_t N = 2000;
    FactorTable ft(N * N);
    const std::vector<cd> zs = {cd(0.5, 0),  cd(1, 0),    cd(-2.5, 0), cd(3, 2),
                                cd(-1, 4),   cd(0, 7.5),  cd(5.5, -3), cd(-7, -2)};
    for (std::uint32_t n = 1; n <= N; ++n) {
        for (cd z : zs) {
            double az = std::abs(z);
            REQUIRE(std::abs(divisor_z(n, z, ft)) <= dz_real(n, az, ft) * (1 + 1e-9) + 1e-12);
            // |d_z(n^2)| <= d_{(|z|+1)^2}(n)
            REQUIRE(std::abs(divisor_z(n * n, z, ft)) <=
                    dz_real(n, (az + 1) * (az + 1), ft) * (1 + 1e-9) + 1e-12);
            // |d(n) d_z(n^2)| <= d_{2|z|+2}(n)^2
            double dn = dz_real(n, 2.0, ft);
            double rhs = dz_real(n, 2 * az + 2, ft);
            REQUIRE(dn * std::abs(divisor_z(n * n, z, ft)) <= rhs * rhs * (1 + 1e-9) + 1e-12);
        }
        // d_a(n) d_b(n) <= d_{a+b}(n) for positive integers
        for (unsigned a = 1; a <= 3; ++a)
            for (unsigned b = a; b <= 3; ++b)
                REQUIRE(dz_real(n, a, ft) * dz_real(n, b, ft) <=
                        dz_real(n, a + b, ft) * (1 + 1e-9));
    }
    // submultiplicativity d_k(mn) <= d_k(m) d_k(n), real k >= 1
    for (double k : {1.0, 1.5, 2.0, 3.7}) {
        for (std::uint32_t m = 2; m <= 2000; m += 53)
            for (std::uint32_t n = 2; n <= 2000; n += 67)
                REQUIRE(dz_real(m * n, k, ft) <=
                        dz_real(m, k, ft) * dz_real(n, k, ft) * (1 + 1e-9));
    }
}

TEST_CASE("Dirichlet series converges to zeta(2)^z with shrinking error") {
    const std::uint32_t N = 100000;
    FactorTable ft(N);
    const double zeta2 = M_PI * M_PI / 6.0;
    for (cd z : {cd(0.5, 0), cd(2, 0), cd(3, 0), cd(1, 1), cd(-1.5, 0)}) {
        cd target = std::exp(z * std::log(zeta2));
        double prev = 1e300;
        for (std::uint32_t stop : {1000u, 10000u, 100000u}) {
            cd s = 0.0;
            for (std::uint32_t n = 1; n <= stop; ++n)
                s += divisor_z(n, z, ft) / (static_cast<double>(n) * n);
            double err = std::abs(s - target);
            REQUIRE(err < prev);
            prev = err;
        }
    }
}

TEST_CASE("smoothed series: z = 0 keeps only n = 1") {
    CHECK(smoothed_l_series(5, 0.0, 1e18, 1000).real() == 1.0);
    CHECK(smoothed_l_series(5, 0.0, 1e6, 1000).real() ==
          doctest::Approx(std::exp(-1e-6)).epsilon(1e-15));
}

TEST_CASE("smoothed series cross-checks against the other two L methods") {
    auto pt = shared_primes(100000);
    // z = 1, d = 5: plain partial sum with the same cutoff
    double sm = smoothed_l_series(5, 1.0, 1e6, 10000000).real();
    double ps = partial_sum_l(5, 10000000);
    CHECK(std::abs(sm - ps) < 1e-3);
    // z = 2, d = -3: square of the short Euler product
    double sm2 = smoothed_l_series(-3, 2.0, 1e6, 10000000).real();
    double ep2 = euler_product(-3, 1e5, *pt);
    CHECK(std::abs(sm2 - ep2 * ep2) / (ep2 * ep2) < 0.01);
}

TEST_CASE("cutoff too small raises precision_error with the achieved bound") {
    try {
        smoothed_l_series(5, 2.0, 1e6, 100, 1e-6);
        FAIL("expected precision_error");
    } catch (const precision_error& e) {
        CHECK(e.achieved_bound > 1e-6);
    }
}

TEST_CASE("smoothed d_k bound") {
    CHECK(smoothed_dk_bound(1, 2.0) == doctest::Approx(std::log(6.0)).epsilon(1e-15));
    CHECK(smoothed_dk_bound(2, 10.0) ==
          doctest::Approx(std::log(30.0) * std::log(30.0)).epsilon(1e-15));
    // numeric check of the bound it encodes
    const std::uint32_t N = 100000;
    auto d2 = dk_convolution(2, N);
    double s = 0.0;
    for (std::uint32_t n = 1; n <= N; ++n)
        s += static_cast<double>(d2[n]) / n * std::exp(-n / 10.0);
    CHECK(s <= smoothed_dk_bound(2, 10.0));
}

TEST_CASE("non-fundamental d rejected") {
    CHECK_THROWS_AS(smoothed_l_series(9, 1.0, 1e6, 1000), domain_error);
}

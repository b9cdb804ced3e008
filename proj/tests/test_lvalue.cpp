#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "lchi/discriminant.hpp"
#include "lchi/errors.hpp"
#include "lchi/lvalue.hpp"
#include "lchi/philox.hpp"
#include "lchi/primes.hpp"

using namespace lchi;

TEST_CASE("euler product point values") {
    auto pt = shared_primes(100000);
    SUBCASE("empty product") {
        LParams p;
        p.y = 1.5;
        CHECK(l_value(5, p, *pt).value == 1.0);
    }
    SUBCASE("d = 5, y = 10: four explicit factors give 7/16") {
        CHECK(euler_product(5, 10.0, *pt) == doctest::Approx(7.0 / 16.0).epsilon(1e-14));
    }
    SUBCASE("d = -4 approaches pi/4") {
        CHECK(std::abs(euler_product(-4, 1e5, *pt) - M_PI / 4) / (M_PI / 4) < 0.005);
    }
}

TEST_CASE("partial sums") {
    SUBCASE("d = -4: alternating series to pi/4") {
        CHECK(std::abs(partial_sum_l(-4, 1000000) - M_PI / 4) < 1e-5);
    }
    SUBCASE("cross-method agreement") {
        auto pt = shared_primes(100000);
        double e5 = euler_product(5, 1e5, *pt);
        CHECK(std::abs(partial_sum_l(5, 10000000) - e5) / e5 < 0.01);
        double e3 = euler_product(-3, 1e5, *pt);
        CHECK(std::abs(partial_sum_l(-3, 1000000) - e3) / e3 < 0.01);
    }
    SUBCASE("N below |d| is an error") {
        CHECK_THROWS_AS(partial_sum_l(-1003, 500), precision_error);
    }
    SUBCASE("worker count does not change the value") {
        double a = partial_sum_l(5, 3000000, 1);
        double b = partial_sum_l(5, 3000000, 3);
        CHECK(a == b);
    }
}

TEST_CASE("l_value dispatch") {
    auto pt = shared_primes(100000);
    SUBCASE("default is the euler product") {
        LParams p = LParams::defaults_for(1e6);
        CHECK(l_value(5, p, *pt).value == euler_product(5, p.y, *pt));
        CHECK(l_value(5, p, *pt).error_estimate > 0);
    }
    SUBCASE("invalid params") {
        LParams p;
        p.method = LMethod::partial_sum;
        p.N = 0;
        CHECK_THROWS_AS(l_value(5, p, *pt), config_error);
    }
    SUBCASE("methods agree within summed error estimates on d = 8") {
        LParams pe;  // euler, y = 1e4 default
        auto a = l_value(8, pe, *pt);
        LParams pp;
        pp.method = LMethod::partial_sum;
        pp.N = 200000;
        auto b = l_value(8, pp, *pt);
        CHECK(std::abs(a.value - b.value) <= a.error_estimate + b.error_estimate);
        LParams ps;
        ps.method = LMethod::smoothed;
        ps.Z = 1e6;
        ps.cutoff = 10000000;
        auto c = l_value(8, ps, *pt);
        CHECK(std::abs(a.value - c.value) <= a.error_estimate + c.error_estimate);
    }
}

TEST_CASE("positivity and stabilization as y grows") {
    auto pt = shared_primes(200000);
    std::vector<std::int64_t> sample;
    for (std::int64_t a = 1001; sample.size() < 10; ++a) {
        if (is_fundamental(a)) sample.push_back(a);
        if (sample.size() < 10 && is_fundamental(-a)) sample.push_back(-a);
    }
    double mean_delta[3] = {0, 0, 0};
    int idx = 0;
    for (double y : {1e3, 1e4, 1e5}) {
        for (auto d : sample) {
            double l1 = euler_product(d, y, *pt);
            double l2 = euler_product(d, 2 * y, *pt);
            REQUIRE(l1 > 0);
            mean_delta[idx] += std::abs(l2 - l1) / sample.size();
        }
        ++idx;
    }
    CHECK(mean_delta[0] > mean_delta[1]);
    CHECK(mean_delta[1] > mean_delta[2]);
}

TEST_CASE("cross-method agreement on random fundamental d (reduced criterion run)") {
    auto pt = shared_primes(100000);
    int found = 0;
    for (std::uint64_t i = 0; found < 20; ++i) {
        std::uint64_t a = 1000 + philox::uniform_u32(99, i, 1) % 9000;
        std::int64_t d = (philox::uniform_u32(99, i, 2) & 1) ? static_cast<std::int64_t>(a)
                                                             : -static_cast<std::int64_t>(a);
        if (!is_fundamental(d)) continue;
        ++found;
        double e = euler_product(d, 1e5, *pt);
        double s = partial_sum_l(d, 10000 * a, 2);
        REQUIRE(std::abs(e - s) / std::abs(s) < 0.02);
    }
}

TEST_CASE("bulk sweep equals per-d products") {
    auto pt = shared_primes(20000);
    LParams p;
    p.y = 3000;
    BulkLValues bulk = bulk_log_l(20000, p, *pt, 2);
    CHECK(bulk.d == enumerate_fundamental(20000));
    for (std::size_t i = 0; i < bulk.d.size(); i += 37) {
        double direct = std::log(euler_product(bulk.d[i], p.y, *pt));
        REQUIRE(bulk.log_l[i] == doctest::Approx(direct).epsilon(1e-10));
    }
    SUBCASE("worker-count invariance, bitwise") {
        BulkLValues again = bulk_log_l(20000, p, *pt, 5);
        CHECK(bulk.d == again.d);
        CHECK(bulk.log_l == again.log_l);
    }
}

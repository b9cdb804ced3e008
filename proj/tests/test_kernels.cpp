#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "lchi/kernels.hpp"
#include "lchi/philox.hpp"
#include "lchi/primes.hpp"

using namespace lchi;

TEST_CASE("philox4x32-10 known-answer vectors") {
    // Random123 published vectors
    auto r0 = philox::block({0, 0, 0, 0}, {0, 0});
    CHECK(r0 == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu,
                                             0x9b00dbd8u});
    auto r1 = philox::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                            {0xffffffffu, 0xffffffffu});
    CHECK(r1 == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u,
                                             0x6d5451fdu});
    auto r2 = philox::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                            {0xa4093822u, 0x299f31d0u});
    CHECK(r2 == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u,
                                             0x24126ea1u});
}

TEST_CASE("sampler thresholds encode the model probabilities") {
    PrimeTable pt(100);
    auto st = build_sampler_tables(pt.primes());
    REQUIRE(st.n_primes == 25);
    REQUIRE(st.zero_below.size() % 4 == 0);
    for (std::size_t i = 0; i < st.n_primes; ++i) {
        double p = static_cast<double>(pt.primes()[i]);
        double p_zero = st.zero_below[i] * 0x1p-32;
        CHECK(std::abs(p_zero - 1.0 / (p + 1.0)) < 1e-9);
        double p_plus = (st.plus_below[i] - st.zero_below[i]) * 0x1p-32;
        CHECK(std::abs(p_plus - p / (2 * (p + 1))) < 1e-9);
        CHECK(st.add_plus[i] == -std::log1p(-1.0 / p));
        CHECK(st.add_minus[i] == -std::log1p(1.0 / p));
    }
}

TEST_CASE("scalar and AVX2 kernels are equivalent") {
    const Kernels& ref = scalar_kernels();
    const Kernels* simd = avx2_kernels();
    if (!simd) {
        MESSAGE("AVX2 not available; scalar-only");
        return;
    }

    SUBCASE("add_periodic bitwise") {
        for (std::size_t period : {7u, 8u, 64u, 4096u, 5000u}) {
            std::vector<double> tbl(period);
            for (std::size_t i = 0; i < period; ++i)
                tbl[i] = std::sin(0.1 * static_cast<double>(i));
            for (std::size_t r0 : {0ul, 3ul, period - 1}) {
                std::vector<double> a(10007, 1.25), b(10007, 1.25);
                ref.add_periodic(a.data(), a.size(), tbl.data(), period, r0);
                simd->add_periodic(b.data(), b.size(), tbl.data(), period, r0);
                REQUIRE(a == b);
            }
        }
    }

    SUBCASE("char_over_n to 1e-12") {
        std::vector<double> tbl(4096);
        for (std::size_t i = 0; i < tbl.size(); ++i) tbl[i] = (i % 3 == 0) ? 0.0 : (i % 2 ? 1.0 : -1.0);
        for (std::uint64_t n0 : {1ull, 123456ull, 999999937ull}) {
            std::uint64_t n1 = n0 + 300000;
            double a = ref.char_over_n(tbl.data(), tbl.size(), n0 % tbl.size(), n0, n1);
            double b = simd->char_over_n(tbl.data(), tbl.size(), n0 % tbl.size(), n0, n1);
            REQUIRE(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
        }
    }

    SUBCASE("mc_log_l bitwise, including non-multiple-of-8 tails") {
        PrimeTable pt(1000);
        auto st = build_sampler_tables(pt.primes());
        for (std::size_t count : {1u, 7u, 8u, 64u, 1000u, 1013u}) {
            std::vector<double> a(count), b(count);
            ref.mc_log_l(0xDEADBEEFCAFEull, 123, count, st, a.data());
            simd->mc_log_l(0xDEADBEEFCAFEull, 123, count, st, b.data());
            REQUIRE(a == b);
        }
    }
}

TEST_CASE("kernel dispatch names something") {
    const Kernels& k = active_kernels();
    CHECK((std::string(k.name) == "scalar" || std::string(k.name) == "avx2"));
}

TEST_CASE("char_over_n sums the plain series") {
    // tbl = all ones, period anything: sum 1/n over [1, N]
    std::vector<double> tbl(4096, 1.0);
    double h = scalar_kernels().char_over_n(tbl.data(), tbl.size(), 1, 1, 100001);
    double ref = 0.0;
    for (int n = 100000; n >= 1; --n) ref += 1.0 / n;
    CHECK(h == doctest::Approx(ref).epsilon(1e-13));
}

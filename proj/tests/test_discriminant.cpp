#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "lchi/discriminant.hpp"
#include "lchi/errors.hpp"

using namespace lchi;

TEST_CASE("definition cases") {
    CHECK(is_fundamental(5));
    CHECK_FALSE(is_fundamental(9));   // 1 mod 4 but 3^2 | 9
    CHECK(is_fundamental(12));        // 4*3, 3 = 3 mod 4
    CHECK(is_fundamental(-3));
    CHECK(is_fundamental(-4));
    CHECK(is_fundamental(8));
    CHECK_FALSE(is_fundamental(1));   // principal case excluded
    CHECK_FALSE(is_fundamental(-1));
    CHECK_FALSE(is_fundamental(2));
    CHECK_FALSE(is_fundamental(4));
    CHECK_FALSE(is_fundamental(100));  // 4*25, not squarefree
    CHECK_THROWS_AS(is_fundamental(0), domain_error);
}

TEST_CASE("x = 10 and x = 3 enumerations") {
    CHECK(enumerate_fundamental(10) ==
          std::vector<std::int64_t>{-3, -4, 5, -7, 8, -8});
    CHECK(enumerate_fundamental(3) == std::vector<std::int64_t>{-3});
}

TEST_CASE("enumeration equals brute-force filter, x = 10^4") {
    std::vector<std::int64_t> brute;
    for (std::int64_t a = 2; a <= 10000; ++a) {
        if (is_fundamental(a)) brute.push_back(a);
        if (is_fundamental(-a)) brute.push_back(-a);
    }
    CHECK(enumerate_fundamental(10000) == brute);
}

TEST_CASE("residues mod 16 land in the allowed classes") {
    for (std::int64_t d : enumerate_fundamental(10000)) {
        std::int64_t r = ((d % 16) + 16) % 16;
        bool ok = r == 1 || r == 5 || r == 8 || r == 9 || r == 12 || r == 13;
        REQUIRE(ok);
    }
}

TEST_CASE("counts track (6/pi^2) x") {
    double density = 6.0 / (M_PI * M_PI);
    std::uint64_t c5 = count_fundamental(100000);
    CHECK(std::abs(static_cast<double>(c5) - density * 1e5) < 0.002 * density * 1e5);
    // exact value frozen from two independent sieve implementations
    CHECK(count_fundamental(1000000) == 607925);
}

TEST_CASE("segment flags agree with is_fundamental across block boundaries") {
    for (std::uint64_t lo : {2ull, 999000ull, (1ull << 20) - 500}) {
        std::uint64_t hi = lo + 1200;
        auto f = fundamental_flags(lo, hi);
        for (std::uint64_t a = lo; a < hi; ++a) {
            REQUIRE(static_cast<bool>(f.pos[a - lo]) ==
                    is_fundamental(static_cast<std::int64_t>(a)));
            REQUIRE(static_cast<bool>(f.neg[a - lo]) ==
                    is_fundamental(-static_cast<std::int64_t>(a)));
        }
    }
}

TEST_CASE("bad enumeration bound") {
    CHECK_THROWS_AS(count_fundamental(2), config_error);
}

#include "lchi/kronecker.hpp"

#include <utility>

namespace lchi {

int kronecker(std::int64_t a, std::uint64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;

    int k = 1;
    int twos = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++twos;
    }
    if (twos & 1) {
        // (a|2) depends on a mod 8
        int am8 = static_cast<int>(((a % 8) + 8) % 8);
        if (am8 == 3 || am8 == 5) k = -k;
    }

    std::uint64_t ua;
    if (a < 0) {
        if ((n & 3) == 3) k = -k;
        ua = static_cast<std::uint64_t>(-a);
    } else {
        ua = static_cast<std::uint64_t>(a);
    }

    // Jacobi loop: n odd from here on
    ua %= n;
    while (ua != 0) {
        while ((ua & 1) == 0) {
            ua >>= 1;
            std::uint64_t nm8 = n & 7;
            if (nm8 == 3 || nm8 == 5) k = -k;
        }
        std::swap(ua, n);
        if ((ua & 3) == 3 && (n & 3) == 3) k = -k;
        ua %= n;
    }
    return n == 1 ? k : 0;
}

}  // namespace lchi

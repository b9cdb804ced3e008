#include "lchi/discriminant.hpp"

#include <algorithm>
#include <cmath>

#include "lchi/errors.hpp"
#include "lchi/primes.hpp"

namespace lchi {

namespace {

constexpr std::uint64_t kSegment = 1u << 20;

bool squarefree_trial(std::uint64_t m) {
    if (m == 0) return false;
    for (std::uint64_t i = 2; i * i <= m; ++i) {
        if (m % i == 0) {
            m /= i;
            if (m % i == 0) return false;
        }
    }
    return true;
}

// squarefree flags for a in [lo, hi)
std::vector<std::uint8_t> squarefree_segment(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint8_t> sf(hi - lo, 1);
    if (hi <= 1) return sf;
    auto pt = shared_primes(
        static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 2);
    for (std::uint64_t p : pt->primes()) {
        std::uint64_t p2 = p * p;
        if (p2 >= hi) break;
        std::uint64_t start = ((lo + p2 - 1) / p2) * p2;
        for (std::uint64_t j = start; j < hi; j += p2) sf[j - lo] = 0;
    }
    if (lo == 0) sf[0] = 0;
    return sf;
}

}  // namespace

bool is_fundamental(std::int64_t d) {
    if (d == 0) throw domain_error("d = 0 is not a discriminant");
    if (d == 1) return false;
    std::int64_t m4 = ((d % 4) + 4) % 4;
    std::uint64_t ad = static_cast<std::uint64_t>(d < 0 ? -d : d);
    if (m4 == 1) return squarefree_trial(ad);
    if (m4 == 0) {
        std::int64_t m = d / 4;
        std::int64_t mm4 = ((m % 4) + 4) % 4;
        if (mm4 != 2 && mm4 != 3) return false;
        return squarefree_trial(ad / 4);
    }
    return false;
}

FundamentalFlags fundamental_flags(std::uint64_t lo, std::uint64_t hi) {
    FundamentalFlags out;
    out.lo = lo;
    out.hi = hi;
    out.pos.assign(hi - lo, 0);
    out.neg.assign(hi - lo, 0);
    auto sf = squarefree_segment(lo, hi);
    // quotients a/4 for the d = 4m branch live in [qlo, qhi)
    std::uint64_t qlo = (lo + 3) / 4;
    std::uint64_t qhi = hi == 0 ? 0 : (hi - 1) / 4 + 1;
    std::vector<std::uint8_t> sfq;
    if (qhi > qlo) sfq = squarefree_segment(qlo, qhi);
    for (std::uint64_t a = std::max<std::uint64_t>(lo, 2); a < hi; ++a) {
        std::uint64_t i = a - lo;
        switch (a & 3) {
            case 1:
                out.pos[i] = sf[i];
                break;
            case 3:
                out.neg[i] = sf[i];
                break;
            case 0: {
                std::uint64_t q = a >> 2;
                if (!sfq[q - qlo]) break;
                std::uint64_t qm4 = q & 3;
                if (qm4 == 2 || qm4 == 3) out.pos[i] = 1;  // +4q, m = q
                if (qm4 == 2 || qm4 == 1) out.neg[i] = 1;  // -4q, m = -q
                break;
            }
            default:
                break;
        }
    }
    return out;
}

void for_each_fundamental(std::uint64_t x,
                          const std::function<void(std::int64_t)>& fn) {
    if (x < 3) throw config_error("enumeration bound must be >= 3");
    for (std::uint64_t lo = 2; lo <= x; lo += kSegment) {
        std::uint64_t hi = std::min(x + 1, lo + kSegment);
        auto flags = fundamental_flags(lo, hi);
        for (std::uint64_t a = lo; a < hi; ++a) {
            std::uint64_t i = a - lo;
            if (flags.pos[i]) fn(static_cast<std::int64_t>(a));
            if (flags.neg[i]) fn(-static_cast<std::int64_t>(a));
        }
    }
}

std::vector<std::int64_t> enumerate_fundamental(std::uint64_t x) {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(0.61 * static_cast<double>(x)) + 16);
    for_each_fundamental(x, [&](std::int64_t d) { out.push_back(d); });
    return out;
}

std::uint64_t count_fundamental(std::uint64_t x) {
    std::uint64_t n = 0;
    for_each_fundamental(x, [&](std::int64_t) { ++n; });
    return n;
}

}  // namespace lchi

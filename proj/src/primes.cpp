#include "lchi/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>

#include "lchi/errors.hpp"

namespace lchi {

namespace {

constexpr std::uint64_t kSegmentSize = 1u << 20;
constexpr std::uint64_t kMaxLimit = 1ull << 40;

std::vector<std::uint32_t> simple_sieve(std::uint32_t limit) {
    std::vector<bool> comp(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i) comp[j] = true;
    }
    return out;
}

}  // namespace

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
    if (limit < 2 || limit > kMaxLimit)
        throw config_error("prime table limit must be in [2, 2^40], got " +
                           std::to_string(limit));
    auto root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(limit))) + 1;
    auto base = simple_sieve(root);
    if (limit >= 3)  // n / log n lower bound is fine as a reserve hint
        primes_.reserve(static_cast<std::size_t>(
            static_cast<double>(limit) / std::log(static_cast<double>(limit)) * 1.15));

    std::vector<std::uint8_t> seg(kSegmentSize);
    for (std::uint64_t lo = 2; lo <= limit; lo += kSegmentSize) {
        std::uint64_t hi = std::min(limit + 1, lo + kSegmentSize);
        std::size_t n = static_cast<std::size_t>(hi - lo);
        std::memset(seg.data(), 1, n);
        for (std::uint32_t p : base) {
            std::uint64_t pp = std::uint64_t(p) * p;
            if (pp >= hi) break;
            std::uint64_t start = pp >= lo ? pp : ((lo + p - 1) / p) * p;
            for (std::uint64_t j = start; j < hi; j += p) seg[j - lo] = 0;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (seg[i]) primes_.push_back(lo + i);
    }
}

std::span<const std::uint64_t> PrimeTable::primes_upto(double y) const {
    if (y > static_cast<double>(limit_))
        throw config_error("prime table covers " + std::to_string(limit_) +
                           " but " + std::to_string(y) + " was requested");
    if (y < 2) return {};
    auto it = std::upper_bound(primes_.begin(), primes_.end(),
                               static_cast<std::uint64_t>(y));
    return {primes_.data(), static_cast<std::size_t>(it - primes_.begin())};
}

PrimeTable sieve_primes(std::uint64_t limit) { return PrimeTable(limit); }

std::shared_ptr<const PrimeTable> shared_primes(std::uint64_t limit) {
    static std::mutex mu;
    static std::shared_ptr<const PrimeTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (!cache || cache->limit() < limit)
        cache = std::make_shared<const PrimeTable>(std::max<std::uint64_t>(limit, 1u << 16));
    return cache;
}

FactorTable::FactorTable(std::uint32_t limit) : limit_(limit), spf_(limit + 1, 0) {
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf_[i] != 0) continue;
        for (std::uint64_t j = i; j <= limit; j += i)
            if (spf_[j] == 0) spf_[j] = i;
    }
}

}  // namespace lchi

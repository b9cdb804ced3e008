#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace lchi {

// Ascending primes <= limit, immutable after construction and safe to share
// across threads. Sieving is segmented so memory stays bounded for large
// limits.
class PrimeTable {
  public:
    explicit PrimeTable(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    std::span<const std::uint64_t> primes() const { return primes_; }

    // Prefix view of all primes <= y. Throws config_error if y > limit().
    std::span<const std::uint64_t> primes_upto(double y) const;

    std::size_t count() const { return primes_.size(); }

  private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
};

PrimeTable sieve_primes(std::uint64_t limit);

// Process-wide cache; grows monotonically, returned tables stay valid.
std::shared_ptr<const PrimeTable> shared_primes(std::uint64_t limit);

// Smallest-prime-factor table for factoring everything <= limit.
class FactorTable {
  public:
    explicit FactorTable(std::uint32_t limit);

    std::uint32_t limit() const { return limit_; }

    // Calls fn(p, a) for each prime power p^a || n. n must be <= limit.
    template <typename Fn>
    void factorize(std::uint32_t n, Fn&& fn) const {
        while (n > 1) {
            std::uint32_t p = spf_[n];
            std::uint32_t a = 0;
            do {
                n /= p;
                ++a;
            } while (n % p == 0);
            fn(p, a);
        }
    }

  private:
    std::uint32_t limit_;
    std::vector<std::uint32_t> spf_;
};

}  // namespace lchi

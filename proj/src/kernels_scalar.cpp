#include <cmath>

#include "lchi/kahan.hpp"
#include "lchi/kernels.hpp"
#include "lchi/philox.hpp"

namespace lchi {

SamplerTables build_sampler_tables(std::span<const std::uint64_t> primes) {
    SamplerTables st;
    st.n_primes = primes.size();
    std::size_t padded = (primes.size() + 3) & ~std::size_t(3);
    st.zero_below.resize(padded, 0xFFFFFFFFu);
    st.plus_below.resize(padded, 0xFFFFFFFFu);
    st.add_plus.resize(padded, 0.0);
    st.add_minus.resize(padded, 0.0);
    for (std::size_t i = 0; i < primes.size(); ++i) {
        double p = static_cast<double>(primes[i]);
        std::uint64_t zb = (std::uint64_t(1) << 32) / (primes[i] + 1);
        std::uint64_t rest = (std::uint64_t(1) << 32) - zb;
        st.zero_below[i] = static_cast<std::uint32_t>(zb);
        st.plus_below[i] = static_cast<std::uint32_t>(zb + rest / 2);
        st.add_plus[i] = -std::log1p(-1.0 / p);
        st.add_minus[i] = -std::log1p(1.0 / p);
    }
    return st;
}

namespace kernels_scalar {

void add_periodic(double* acc, std::size_t n, const double* tbl,
                  std::size_t period, std::size_t r0) {
    std::size_t i = 0;
    std::size_t r = r0;
    while (i < n) {
        std::size_t m = n - i;
        if (m > period - r) m = period - r;
        const double* src = tbl + r;
        double* dst = acc + i;
        for (std::size_t j = 0; j < m; ++j) dst[j] += src[j];
        i += m;
        r = 0;
    }
}

double char_over_n(const double* tbl, std::size_t period, std::size_t r0,
                   std::uint64_t n0, std::uint64_t n1) {
    KahanSum s;
    std::uint64_t n = n0;
    std::size_t r = r0;
    while (n < n1) {
        std::uint64_t m = n1 - n;
        if (m > period - r) m = period - r;
        const double* src = tbl + r;
        for (std::uint64_t j = 0; j < m; ++j)
            s.add(src[j] / static_cast<double>(n + j));
        n += m;
        r = 0;
    }
    return s.value();
}

void mc_log_l(std::uint64_t seed, std::uint64_t sample0, std::size_t count,
              const SamplerTables& st, double* out) {
    const std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    const std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    const std::size_t quads = st.zero_below.size() / 4;
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t s = sample0 + i;
        double acc = 0.0;
        for (std::size_t q = 0; q < quads; ++q) {
            auto r = philox::block({static_cast<std::uint32_t>(s),
                                    static_cast<std::uint32_t>(s >> 32),
                                    static_cast<std::uint32_t>(q), 0},
                                   {k0, k1});
            for (int lane = 0; lane < 4; ++lane) {
                std::size_t j = 4 * q + lane;
                std::uint32_t u = r[lane];
                if (u >= st.zero_below[j])
                    acc += u < st.plus_below[j] ? st.add_plus[j] : st.add_minus[j];
            }
        }
        out[i] = acc;
    }
}

}  // namespace kernels_scalar

const Kernels& scalar_kernels() {
    static const Kernels k{"scalar", kernels_scalar::add_periodic,
                           kernels_scalar::char_over_n, kernels_scalar::mc_log_l};
    return k;
}

}  // namespace lchi

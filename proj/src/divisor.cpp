#include "lchi/divisor.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "lchi/discriminant.hpp"
#include "lchi/errors.hpp"
#include "lchi/kahan.hpp"
#include "lchi/kronecker.hpp"

namespace lchi {

namespace {

std::complex<double> prime_power_dz(std::complex<double> z, std::uint32_t a) {
    std::complex<double> v = 1.0;
    for (std::uint32_t j = 0; j < a; ++j)
        v *= (z + static_cast<double>(j)) / static_cast<double>(j + 1);
    return v;
}

}  // namespace

std::complex<double> divisor_z(std::uint32_t n, std::complex<double> z,
                               const FactorTable& ft) {
    if (n == 0 || n > ft.limit())
        throw config_error("divisor_z: n = " + std::to_string(n) +
                           " outside factor table limit " + std::to_string(ft.limit()));
    std::complex<double> v = 1.0;
    ft.factorize(n, [&](std::uint32_t, std::uint32_t a) { v *= prime_power_dz(z, a); });
    return v;
}

double smoothed_dk_bound(unsigned k, double x) {
    return std::pow(std::log(3.0 * x), static_cast<double>(k));
}

std::complex<double> smoothed_l_series(std::int64_t d, std::complex<double> z,
                                       double Z, std::uint32_t cutoff, double tol) {
    if (Z <= 0 || cutoff == 0) throw config_error("smoothed_l_series: need Z > 0, cutoff >= 1");
    unsigned K = static_cast<unsigned>(std::ceil(std::abs(z)));
    if (K == 0) K = 1;
    double tail = std::exp(-0.5 * cutoff / Z) * smoothed_dk_bound(K, 2.0 * Z);
    if (!(tail <= tol))
        throw precision_error("smoothed_l_series: cutoff " + std::to_string(cutoff) +
                                  " leaves tail bound " + std::to_string(tail) +
                                  " above tolerance " + std::to_string(tol),
                              tail);

    if (!is_fundamental(d))
        throw domain_error("smoothed_l_series: d = " + std::to_string(d) +
                           " is not a fundamental discriminant");

    // chi_d has period |d|
    std::uint64_t q = static_cast<std::uint64_t>(d < 0 ? -d : d);
    std::vector<std::int8_t> chi(q);
    for (std::uint64_t r = 0; r < q; ++r)
        chi[r] = static_cast<std::int8_t>(kronecker(d, r));

    FactorTable ft(cutoff);
    KahanSumComplex sum;
    sum.add(std::exp(-1.0 / Z));  // n = 1 term
    std::uint64_t r = 1 % q;
    for (std::uint32_t n = 2; n <= cutoff; ++n) {
        r = (r + 1 == q) ? 0 : r + 1;
        int c = chi[r];
        if (c == 0) continue;
        std::complex<double> t = divisor_z(n, z, ft);
        if (t == 0.0) continue;
        double w = std::exp(-static_cast<double>(n) / Z) / n;
        sum.add(static_cast<double>(c) * w * t);
    }
    return sum.value();
}

}  // namespace lchi

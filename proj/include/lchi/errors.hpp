#pragma once

#include <stdexcept>
#include <string>

namespace lchi {

// Exit-code contract: config errors -> 2, everything else -> 1.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct config_error : error {
    using error::error;
};

struct domain_error : error {
    using error::error;
};

// A requested tolerance could not be met; carries the bound we achieved.
struct precision_error : error {
    precision_error(const std::string& msg, double achieved)
        : error(msg), achieved_bound(achieved) {}
    double achieved_bound;
};

// Parameter outside the validity range of a formula (e.g. saddle solve).
struct range_error : error {
    using error::error;
};

// A moment factor came too close to zero to take its log safely.
struct degenerate_moment_error : error {
    degenerate_moment_error(const std::string& msg, double prime, double modulus)
        : error(msg), p(prime), factor_abs(modulus) {}
    double p;
    double factor_abs;
};

}  // namespace lchi

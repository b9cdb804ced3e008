#pragma once

namespace lchi {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kZeta2 = 1.64493406684822643647241516664602519;  // pi^2/6
constexpr double kZeta2Inv = 0.60792710185402662866327677925836583;

// Engineering constants for checks whose literature counterparts are implicit
// O(.)'s. Kept in one place so tightening any of them is a one-line change.
// Each was calibrated against direct high-precision computation; the measured
// slack is noted.
namespace tol {

// |I-approximation error| <= kShapeI / log^2 k    (measured ~0.009 at k=1e3 vs 0.105 allowed)
constexpr double kShapeI = 5.0;
// R * k log k vs (1 - tanh(k/y)): relative window  (measured ratio 0.92..0.95)
constexpr double kShapeR = 0.30;
// |E_p(k+it)| <= E_p(k) exp(-c0 (1-cos(t log((p+1)/(p-1))))); dense-grid
// minimum of the admissible constant is ~5.3e-4 near p ~ k/4.
constexpr double kPhaseDecayC0 = 3e-4;
// |log(E_p(k)/cosh(k/p))| <= kCoshC * k/p^2        (measured ratio <= 0.13)
constexpr double kCoshC = 5.0;
// two-sided bracket for the split-product moment form at k=300
constexpr double kMomentBracket = 50.0;
// |moment-form defect| <= kMomentForm * k / log^2 k (measured ~24 at k=1e3 vs 105 allowed)
constexpr double kMomentForm = 5.0;
// partial-sum error estimate: kPartialSumC * |d| / N
constexpr double kPartialSumC = 2.0;
// euler-product truncation estimate: kEulerTruncC / sqrt(y log y), relative
constexpr double kEulerTruncC = 4.0;
// moment_infinite tail: kMomentTailC * |z|^2 * 2/(y log y) < tol picks y
constexpr double kMomentTailC = 2.0;
// saddle formulas refuse tau below this; the asymptotic error term is
// useless for the small k such tau produce
constexpr double kTauFloor = 1.5;
// near-zero guard on moment factors before taking logs
constexpr double kMomentFactorFloor = 1e-12;

}  // namespace tol

// Default Euler-product cutoff for bulk runs over |d| <= x.
double default_euler_cutoff(double x);

}  // namespace lchi

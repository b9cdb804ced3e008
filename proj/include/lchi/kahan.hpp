#pragma once

#include <complex>

namespace lchi {

// Kahan-compensated accumulator. Deterministic given a fixed add order.
class KahanSum {
  public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

class KahanSumComplex {
  public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

  private:
    KahanSum re_, im_;
};

}  // namespace lchi

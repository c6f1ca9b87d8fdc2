#ifndef QCOVPCA_DETAIL_KAHAN_HPP
#define QCOVPCA_DETAIL_KAHAN_HPP

#include <complex>

namespace qcovpca::detail {

// Kahan compensated accumulator; keeps long weighted sums near 1-2 ulp.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

struct KahanComplexSum {
    KahanSum re;
    KahanSum im;

    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }

    std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace qcovpca::detail

#endif

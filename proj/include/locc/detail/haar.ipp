// haar.ipp

#pragma once

#include <cmath>
#include <random>

namespace locc {

template <typename Rng>
ComplexMatrix haar_unitary(std::size_t n, Rng& rng)
{
    if (n == 0) {
        throw DomainError("haar_unitary: dimension must be positive");
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t j = 0; j < n; ++j) {
        const double mag = std::abs(r(j, j));
        const Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0, 0.0);
        q.col(j) *= phase;
    }
    return q;
}

} // namespace locc

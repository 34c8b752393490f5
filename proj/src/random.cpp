#include "ncg/random.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>

namespace ncg {

double Rng::uniform() {
    // 53 random mantissa bits, shifted off zero
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

CMatrix Rng::matrix(int rows, int cols) {
    CMatrix out(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out(i, j) = complex_normal();
    return out;
}

CMatrix Rng::traceless(int m) {
    CMatrix f = square(m);
    f.diagonal().array() -= f.trace() / static_cast<double>(m);
    return f;
}

CMatrix Rng::unitary(int m) {
    Eigen::HouseholderQR<CMatrix> qr(square(m));
    CMatrix q = qr.householderQ() * CMatrix::Identity(m, m);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < m; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

CMatrix Rng::invertible(int m, double max_condition) {
    for (;;) {
        CMatrix u = square(m);
        Eigen::JacobiSVD<CMatrix> svd(u);
        const auto& s = svd.singularValues();
        if (s(m - 1) > 0.0 && s(0) / s(m - 1) <= max_condition) return u;
    }
}

}  // namespace ncg

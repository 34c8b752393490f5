#include "ncg/linalg.hpp"

#include "ncg/errors.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <string>

namespace ncg {

Complex inner(const CMatrix& f, const CMatrix& g) {
    if (f.rows() != g.rows() || f.cols() != g.cols()) {
        throw ShapeError("inner: " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()) +
                         " vs " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()));
    }
    return (f.conjugate().cwiseProduct(g)).sum();
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CVector vec(const CMatrix& f) {
    CVector v(f.size());
    for (Eigen::Index i = 0; i < f.rows(); ++i)
        for (Eigen::Index j = 0; j < f.cols(); ++j) v(i * f.cols() + j) = f(i, j);
    return v;
}

CMatrix unvec(const CVector& v, int rows, int cols) {
    if (v.size() != static_cast<Eigen::Index>(rows) * cols)
        throw ShapeError("unvec: vector length does not match " + std::to_string(rows) + "x" +
                         std::to_string(cols));
    CMatrix f(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) f(i, j) = v(i * cols + j);
    return f;
}

CMatrix RankResult::nullspace_matrix(Eigen::Index cols) const {
    CMatrix out(cols, static_cast<Eigen::Index>(nullspace_basis.size()));
    for (std::size_t k = 0; k < nullspace_basis.size(); ++k)
        out.col(static_cast<Eigen::Index>(k)) = nullspace_basis[k];
    return out;
}

void fix_phase(CVector& v, double eps) {
    const double scale = v.cwiseAbs().maxCoeff();
    if (scale == 0.0) return;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > eps * scale) {
            v *= std::conj(v(i)) / std::abs(v(i));
            v(i) = std::abs(v(i));
            return;
        }
    }
}

RankResult rank_nullspace(const CMatrix& m, double tol, double reference_norm) {
    if (m.rows() == 0 || m.cols() == 0) throw ShapeError("rank_nullspace: empty matrix");
    if (!(tol > 0.0)) throw ParameterError("rank_nullspace: tolerance must be positive");

    Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    RankResult out;
    out.singular_values = svd.singularValues();
    const double sigma_max = out.singular_values.size() ? out.singular_values(0) : 0.0;
    out.threshold = tol * std::max(sigma_max, reference_norm);

    int rank = 0;
    while (rank < out.singular_values.size() && out.singular_values(rank) > out.threshold) ++rank;
    out.rank = rank;

    constexpr double inf = std::numeric_limits<double>::infinity();
    if (rank == 0 || rank >= out.singular_values.size()) {
        out.spectral_gap = inf;
    } else {
        const double dropped = out.singular_values(rank);
        out.spectral_gap = dropped > 0.0 ? out.singular_values(rank - 1) / dropped : inf;
    }

    const CMatrix& v = svd.matrixV();
    for (Eigen::Index k = rank; k < m.cols(); ++k) {
        CVector col = v.col(k);
        col.normalize();
        fix_phase(col);
        out.nullspace_basis.push_back(std::move(col));
    }
    return out;
}

std::size_t ipow(int n, int p) {
    std::size_t r = 1;
    for (int i = 0; i < p; ++i) r *= static_cast<std::size_t>(n);
    return r;
}

std::size_t flatten_index(std::span<const int> tuple, int n) {
    std::size_t flat = 0;
    for (int a : tuple) {
        if (a < 0 || a >= n) throw IndexError("tuple entry " + std::to_string(a) + " outside [0, " +
                                              std::to_string(n) + ")");
        flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(a);
    }
    return flat;
}

std::vector<int> unflatten_index(std::size_t flat, int n, int p) {
    std::vector<int> tuple(static_cast<std::size_t>(p));
    for (int s = p - 1; s >= 0; --s) {
        tuple[static_cast<std::size_t>(s)] = static_cast<int>(flat % static_cast<std::size_t>(n));
        flat /= static_cast<std::size_t>(n);
    }
    return tuple;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMatrix kron_power(const CMatrix& a, int p) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (int i = 0; i < p; ++i) out = kron(out, a);
    return out;
}

CMatrix lift_to_slots(const CMatrix& pair_op, int n, int p, int q) {
    const auto nn = static_cast<Eigen::Index>(n) * n;
    if (pair_op.rows() != nn || pair_op.cols() != nn)
        throw ShapeError("lift_to_slots: operator must be n^2 x n^2");
    if (p < 2 || q < 0 || q > p - 2)
        throw IndexError("lift_to_slots: slot " + std::to_string(q) + " invalid for degree " +
                         std::to_string(p));
    const auto left = static_cast<Eigen::Index>(ipow(n, q));
    const auto right = static_cast<Eigen::Index>(ipow(n, p - q - 2));
    return kron(kron(CMatrix::Identity(left, left), pair_op), CMatrix::Identity(right, right));
}

}  // namespace ncg

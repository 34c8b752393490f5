#include "ncg/algebra.hpp"

#include "ncg/errors.hpp"

#include <Eigen/Eigenvalues>

#include <limits>
#include <sstream>

namespace ncg {

namespace {

void require_square(const CMatrix& f, int m, const char* where) {
    if (f.rows() != m || f.cols() != m) {
        std::ostringstream os;
        os << where << ": expected " << m << "x" << m << ", got " << f.rows() << "x" << f.cols();
        throw ShapeError(os.str());
    }
}

}  // namespace

Subspace validate_subspace(int m, std::vector<CMatrix> basis, double tol, std::string label) {
    if (m < 1) throw ShapeError("validate_subspace: m must be positive");
    if (basis.empty()) throw ShapeError("validate_subspace: empty basis");
    if (!(tol > 0.0)) throw ParameterError("validate_subspace: tolerance must be positive");

    for (std::size_t a = 0; a < basis.size(); ++a) {
        require_square(basis[a], m, "validate_subspace");
        const double tr = std::abs(basis[a].trace());
        if (tr > tol * std::max(norm(basis[a]), 1e-300)) {
            std::ostringstream os;
            os << "basis element " << a << " has |tr| = " << tr;
            throw TracelessViolation(os.str());
        }
    }

    CMatrix stacked(static_cast<Eigen::Index>(m) * m, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t a = 0; a < basis.size(); ++a) stacked.col(static_cast<Eigen::Index>(a)) = vec(basis[a]);
    const RankResult rr = rank_nullspace(stacked, tol);
    if (rr.rank < static_cast<int>(basis.size())) {
        const double smin = rr.singular_values(rr.singular_values.size() - 1);
        const double smax = rr.singular_values(0);
        std::ostringstream os;
        os << "rank " << rr.rank << " < " << basis.size() << ", Gram condition "
           << (smin > 0 ? (smax / smin) * (smax / smin) : std::numeric_limits<double>::infinity());
        throw DependentBasis(os.str());
    }
    return Subspace(m, std::move(basis), std::move(label));
}

DualData dual_data(const Subspace& b, double tol) {
    const int n = b.n();
    DualData d;
    d.gram.resize(n, n);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) d.gram(a, c) = inner(b.lambda(a), b.lambda(c));

    Eigen::SelfAdjointEigenSolver<CMatrix> es(d.gram);
    const RVector& ev = es.eigenvalues();
    d.condition = ev(0) > 0.0 ? ev(n - 1) / ev(0) : std::numeric_limits<double>::infinity();
    if (!(d.condition <= 1.0 / tol)) {
        std::ostringstream os;
        os << "Gram condition number " << d.condition << " exceeds " << 1.0 / tol;
        throw ConditioningError(os.str());
    }
    d.gram_inv = es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();

    d.duals.assign(static_cast<std::size_t>(n), CMatrix::Zero(b.m(), b.m()));
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) d.duals[static_cast<std::size_t>(a)] += d.gram_inv(c, a) * b.lambda(c);
    return d;
}

CMatrix eta(const Subspace& b, const DualData& d, const CMatrix& f) {
    require_square(f, b.m(), "eta");
    CMatrix out = CMatrix::Zero(b.m(), b.m());
    for (int a = 0; a < b.n(); ++a) out += inner(d.duals[static_cast<std::size_t>(a)], f) * b.lambda(a);
    return out;
}

CMatrix eta_perp(const Subspace& b, const DualData& d, const CMatrix& f) {
    CMatrix out = f - eta(b, d, f);
    out.diagonal().array() -= f.trace() / static_cast<double>(b.m());
    return out;
}

CMatrix ad_operator(const CMatrix& h) {
    if (h.rows() != h.cols()) throw ShapeError("ad_operator: h must be square");
    const auto m = h.rows();
    const CMatrix id = CMatrix::Identity(m, m);
    // row-major vec(h f - f h) = (h (x) 1 - 1 (x) h^T) vec(f)
    return kron(h, id) - kron(id, h.transpose());
}

std::vector<CMatrix> elementary_basis(int m) {
    std::vector<CMatrix> out;
    out.reserve(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            CMatrix e = CMatrix::Zero(m, m);
            e(i, j) = 1.0;
            out.push_back(std::move(e));
        }
    return out;
}

std::vector<CMatrix> matrix_dual_basis(const std::vector<CMatrix>& gamma, double tol) {
    if (gamma.empty()) throw DependentBasis("matrix_dual_basis: empty basis");
    const auto m = gamma.front().rows();
    const auto mm = static_cast<std::size_t>(m * m);
    if (gamma.size() != mm) {
        std::ostringstream os;
        os << "a basis of M_" << m << " needs " << mm << " elements, got " << gamma.size();
        throw DependentBasis(os.str());
    }
    CMatrix stacked(m * m, static_cast<Eigen::Index>(mm));
    for (std::size_t k = 0; k < mm; ++k) {
        require_square(gamma[k], static_cast<int>(m), "matrix_dual_basis");
        stacked.col(static_cast<Eigen::Index>(k)) = vec(gamma[k]);
    }
    const RankResult rr = rank_nullspace(stacked, tol);
    if (rr.rank < static_cast<int>(mm)) {
        std::ostringstream os;
        os << "gamma spans only " << rr.rank << " of " << mm << " dimensions";
        throw DependentBasis(os.str());
    }
    // gamma^mu = (G^{-1})_{nu mu} gamma_nu with G_{mu nu} = <gamma_mu, gamma_nu>
    const CMatrix gram = stacked.adjoint() * stacked;
    const CMatrix gram_inv = gram.inverse();
    std::vector<CMatrix> duals(mm, CMatrix::Zero(m, m));
    for (std::size_t mu = 0; mu < mm; ++mu)
        for (std::size_t nu = 0; nu < mm; ++nu)
            duals[mu] += gram_inv(static_cast<Eigen::Index>(nu), static_cast<Eigen::Index>(mu)) * gamma[nu];
    return duals;
}

}  // namespace ncg

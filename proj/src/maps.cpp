#include "ncg/maps.hpp"

#include "ncg/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <sstream>

namespace ncg {

LinearMap make_linear_map(const Subspace& source, const Subspace& target, const CMatrix& matrix) {
    if (matrix.rows() != target.n() || matrix.cols() != source.n()) {
        std::ostringstream os;
        os << "linear map matrix must be " << target.n() << "x" << source.n() << ", got " << matrix.rows()
           << "x" << matrix.cols();
        throw ShapeError(os.str());
    }
    if (source.m() != target.m()) throw ShapeError("linear map between different matrix algebras");
    return LinearMap{source, target, matrix};
}

LinearMap inclusion_map(const Subspace& sub, const Subspace& outer, double tol) {
    const DualData d = dual_data(outer, tol);
    CMatrix mat(outer.n(), sub.n());
    for (int b = 0; b < sub.n(); ++b) {
        CMatrix rebuilt = CMatrix::Zero(outer.m(), outer.m());
        for (int c = 0; c < outer.n(); ++c) {
            mat(c, b) = inner(d.duals[static_cast<std::size_t>(c)], sub.lambda(b));
            rebuilt += mat(c, b) * outer.lambda(c);
        }
        if (norm(rebuilt - sub.lambda(b)) > tol * std::max(1.0, norm(sub.lambda(b))) * 1e3) {
            std::ostringstream os;
            os << "basis element " << b << " of the inner subspace is not in the outer subspace";
            throw ConfigError(os.str());
        }
    }
    return make_linear_map(sub, outer, mat);
}

CVector pushforward(const LinearMap& phi, int b) {
    if (b < 0 || b >= phi.source.n()) throw IndexError("pushforward: index out of range");
    return phi.matrix.col(b);
}

Form pullback(const LinearMap& phi, const TowerPtr& source_tower, const Form& target_form) {
    const int p = target_form.degree();
    if (p > source_tower->max_degree()) throw DegreeError("pullback: degree exceeds source tower");
    if (target_form.tower()->n() != phi.target.n() || source_tower->n() != phi.source.n())
        throw ConfigError("pullback: towers do not match the map's subspaces");
    const CMatrix transfer = kron_power(phi.matrix, p);  // n'^p x n^p
    return Form(source_tower, p, transfer.transpose() * target_form.coefficients());
}

Conjugation make_conjugation(const CMatrix& u, double tol) {
    if (u.rows() != u.cols() || u.rows() == 0) throw ShapeError("conjugation matrix must be square");
    Eigen::JacobiSVD<CMatrix> svd(u);
    const auto& s = svd.singularValues();
    if (!(s(s.size() - 1) > tol * s(0))) {
        std::ostringstream os;
        os << "u is singular to tolerance (sigma_min/sigma_max = " << s(s.size() - 1) / s(0) << ")";
        throw SingularTransform(os.str());
    }
    CMatrix inv = u.fullPivLu().inverse();
    const double res = (u * inv - CMatrix::Identity(u.rows(), u.cols())).norm();
    if (res > 1e-6) throw SingularTransform("u inverse residual too large");
    return Conjugation(u, std::move(inv));
}

Subspace conjugate_subspace(const Conjugation& c, const Subspace& b, double tol) {
    if (c.u().rows() != b.m()) throw ShapeError("conjugate_subspace: dimension mismatch");
    std::vector<CMatrix> lambdas;
    lambdas.reserve(static_cast<std::size_t>(b.n()));
    for (const CMatrix& l : b.lambdas()) lambdas.push_back(c.apply(l));
    return validate_subspace(b.m(), std::move(lambdas), tol, b.label().empty() ? "conjugated" : b.label() + "'");
}

TowerPtr conjugate_tower(const Conjugation& c, const TowerPtr& tower) {
    const double tol = tower->tol();
    Subspace bp = conjugate_subspace(c, tower->subspace(), tol);
    DualData dp = dual_data(bp, tol);
    GAStructure gp = use_relations(bp, dp, tower->structure().alpha, tol);
    return build_tower(std::move(bp), std::move(dp), std::move(gp), tower->max_degree(), tol);
}

Form pullback_conjugation(const Conjugation& c, const TowerPtr& source_tower, const Form& target_form) {
    const int p = target_form.degree();
    const TowerPtr& tt = target_form.tower();
    if (tt->n() != source_tower->n() || tt->m() != source_tower->m())
        throw ConfigError("pullback_conjugation: tower dimensions differ");
    if (p > source_tower->max_degree()) throw DegreeError("pullback_conjugation: degree exceeds source tower");
    // row-major vec(u^{-1} f u) = (u^{-1} (x) u^T) vec(f)
    const CMatrix op = kron(c.u_inv(), c.u().transpose());
    return Form(source_tower, p, target_form.coefficients() * op.transpose());
}

EquivalenceReport check_equivalence(const Conjugation& c, const TowerPtr& tower, int trials, std::uint64_t seed,
                                    double tol) {
    const TowerPtr primed = conjugate_tower(c, tower);
    const int top = tower->max_degree();
    for (int p = 2; p <= top; ++p) {
        const double diff = (tower->projector(p) - primed->projector(p)).cwiseAbs().maxCoeff();
        if (diff > 1e-8) {
            std::ostringstream os;
            os << "canonical projectors differ at degree " << p << " by " << diff;
            throw ConfigError(os.str());
        }
    }

    EquivalenceReport rep;
    rep.trials = trials;
    rep.tolerance = tol;
    const double scale = std::max(1.0, tower->structure().sc.product_scale);

    for (int a = 0; a < tower->n(); ++a) {
        const Form pulled = pullback_conjugation(c, tower, coframe(primed, a));
        rep.coframe_residual = std::max(rep.coframe_residual, distance(pulled, coframe(tower, a)));
    }
    rep.theta_residual = distance(pullback_conjugation(c, tower, theta(primed)), theta(tower)) / scale;

    Rng rng(seed);
    for (int k = 0; k < trials; ++k) {
        for (int p = 0; p < top; ++p) {
            const Form xi = random_form(primed, p, rng);
            const Form lhs = pullback_conjugation(c, tower, exterior_d(xi));
            const Form rhs = exterior_d(pullback_conjugation(c, tower, xi));
            const double ref = std::max({1.0, lhs.max_norm(), rhs.max_norm()});
            rep.d_residual = std::max(rep.d_residual, distance(lhs, rhs) / ref);
        }
        for (int p = 0; p <= top; ++p) {
            for (int q = 0; p + q <= top; ++q) {
                const Form xi = random_form(primed, p, rng);
                const Form zeta = random_form(primed, q, rng);
                const Form lhs = pullback_conjugation(c, tower, wedge(xi, zeta));
                const Form rhs = wedge(pullback_conjugation(c, tower, xi), pullback_conjugation(c, tower, zeta));
                const double ref = std::max({1.0, lhs.max_norm(), rhs.max_norm()});
                rep.product_residual = std::max(rep.product_residual, distance(lhs, rhs) / ref);
            }
        }
    }
    return rep;
}

Form lie_derivative(const CMatrix& f, const Form& xi) {
    const TowerPtr& t = xi.tower();
    const int p = xi.degree();
    const int n = t->n();
    const int m = t->m();
    if (f.rows() != m || f.cols() != m) throw ShapeError("lie_derivative: wrong matrix size");

    // -[f, g] on every coefficient
    Form out = xi.left_multiply(-f) + xi.right_multiply(f);
    if (p == 0) return out;

    // K(b, c) = <lambda^b, [f, lambda_c]>
    CMatrix K(n, n);
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
            K(b, c) = inner(t->duals().duals[static_cast<std::size_t>(b)], commutator(f, t->subspace().lambda(c)));

    // contraction values v_B = sum_A g_A P^A_B, P^A_B = conj(Pi[A, B])
    const CMatrix contracted = t->projector(p).adjoint() * xi.coefficients();
    CMatrix slot_sum = CMatrix::Zero(contracted.rows(), contracted.rows());
    for (int q = 0; q < p; ++q) {
        const auto left = static_cast<Eigen::Index>(ipow(n, q));
        const auto right = static_cast<Eigen::Index>(ipow(n, p - q - 1));
        slot_sum += kron(kron(CMatrix::Identity(left, left), K.transpose()), CMatrix::Identity(right, right));
    }
    return out + Form(t, p, slot_sum * contracted);
}

}  // namespace ncg

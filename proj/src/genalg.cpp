#include "ncg/genalg.hpp"

#include "ncg/errors.hpp"

#include <sstream>

namespace ncg {

std::string to_string(AlphaMode mode) {
    return mode == AlphaMode::auto_maximal ? "auto-maximal" : "user-supplied";
}

StructureConstants structure_constants(const Subspace& b, const DualData& d) {
    const int n = b.n();
    const int m = b.m();
    StructureConstants sc;
    sc.F = Tensor3(n);
    sc.t.resize(n, n);
    sc.rho.reserve(static_cast<std::size_t>(n) * n);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            const CMatrix prod = b.lambda(p) * b.lambda(q);
            sc.product_scale = std::max(sc.product_scale, norm(prod));
            for (int a = 0; a < n; ++a) sc.F(a, p, q) = inner(d.duals[static_cast<std::size_t>(a)], prod);
            sc.t(p, q) = prod.trace();
            CMatrix rho = prod;
            for (int a = 0; a < n; ++a) rho -= sc.F(a, p, q) * b.lambda(a);
            rho.diagonal().array() -= sc.t(p, q) / static_cast<double>(m);
            sc.rho.push_back(std::move(rho));
        }
    }
    return sc;
}

namespace {

CMatrix residual_matrix(const StructureConstants& sc, int m) {
    // column (ab) holds vec(rho_ab); alpha lives in its right kernel
    CMatrix out(static_cast<Eigen::Index>(m) * m, static_cast<Eigen::Index>(sc.rho.size()));
    for (std::size_t k = 0; k < sc.rho.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = vec(sc.rho[k]);
    return out;
}

RelationDetection detect_from(const StructureConstants& sc, int m, double tol) {
    RelationDetection det;
    det.rank = rank_nullspace(residual_matrix(sc, m), tol, sc.product_scale);
    det.R = static_cast<int>(det.rank.nullspace_basis.size());
    det.alpha = det.rank.nullspace_matrix(static_cast<Eigen::Index>(sc.rho.size()));
    return det;
}

GAStructure assemble(const Subspace& b, StructureConstants sc, const CMatrix& alpha, AlphaMode mode,
                     double tol) {
    GAStructure g;
    g.n = b.n();
    g.R = static_cast<int>(alpha.cols());
    g.alpha = alpha;
    const Projector pr = build_projector(alpha, tol);
    g.beta = pr.beta;
    g.P = pr.P;
    g.sc = std::move(sc);
    g.mode = mode;
    return g;
}

void check_alpha_shape(const CMatrix& alpha, int n) {
    if (alpha.rows() != static_cast<Eigen::Index>(n) * n) {
        std::ostringstream os;
        os << "alpha must have n^2 = " << n * n << " rows, got " << alpha.rows();
        throw ShapeError(os.str());
    }
}

}  // namespace

RelationDetection detect_relations(const Subspace& b, const DualData& d, double tol) {
    return detect_from(structure_constants(b, d), b.m(), tol);
}

Projector build_projector(const CMatrix& alpha, double tol) {
    const Eigen::Index nn = alpha.rows();
    Projector pr;
    if (alpha.cols() == 0) {
        pr.beta = CMatrix::Zero(0, nn);
        pr.P = CMatrix::Zero(nn, nn);
        return pr;
    }
    const RankResult rr = rank_nullspace(alpha, tol);
    if (rr.rank < alpha.cols()) {
        std::ostringstream os;
        os << "alpha has rank " << rr.rank << " < " << alpha.cols() << " columns";
        throw DependentRelations(os.str());
    }
    const CMatrix gram = alpha.adjoint() * alpha;
    pr.beta = gram.ldlt().solve(alpha.adjoint());
    pr.P = alpha * pr.beta;
    // symmetrize away rounding so downstream projectors are exactly Hermitian
    pr.P = (0.5 * (pr.P + pr.P.adjoint())).eval();
    return pr;
}

GAStructure analyze_relations(const Subspace& b, const DualData& d, double tol) {
    StructureConstants sc = structure_constants(b, d);
    RelationDetection det = detect_from(sc, b.m(), tol);
    GAStructure g = assemble(b, std::move(sc), det.alpha, AlphaMode::auto_maximal, tol);
    g.detection = std::move(det.rank);
    return g;
}

double relation_residual(const StructureConstants& sc, const CMatrix& alpha) {
    double worst = 0.0;
    for (Eigen::Index r = 0; r < alpha.cols(); ++r) {
        const double len = alpha.col(r).norm();
        if (len == 0.0) continue;
        CMatrix sum = CMatrix::Zero(sc.rho.front().rows(), sc.rho.front().cols());
        for (std::size_t k = 0; k < sc.rho.size(); ++k)
            sum += alpha(static_cast<Eigen::Index>(k), r) * sc.rho[k];
        worst = std::max(worst, norm(sum) / len);
    }
    return worst;
}

GAStructure use_relations(const Subspace& b, const DualData& d, const CMatrix& alpha_user, double tol) {
    check_alpha_shape(alpha_user, b.n());
    StructureConstants sc = structure_constants(b, d);
    const double limit = tol * std::max(sc.product_scale, 1e-300);
    for (Eigen::Index r = 0; r < alpha_user.cols(); ++r) {
        const double res = relation_residual(sc, alpha_user.col(r));
        if (res > limit) {
            std::ostringstream os;
            os << "column " << r << " is not a relation: |sum alpha rho| = " << res;
            throw InvalidRelation(os.str());
        }
    }
    return assemble(b, std::move(sc), alpha_user, AlphaMode::user_supplied, tol);
}

GAStructure assume_relations(const Subspace& b, const DualData& d, const CMatrix& alpha_user, double tol) {
    check_alpha_shape(alpha_user, b.n());
    return assemble(b, structure_constants(b, d), alpha_user, AlphaMode::user_supplied, tol);
}

GAReport verify_ga(const Subspace& b, const GAStructure& g, double tol) {
    GAReport rep;
    const int n = b.n();
    const int m = b.m();
    const Eigen::Index R = g.R;

    rep.beta_alpha_residual = R ? (g.beta * g.alpha - CMatrix::Identity(R, R)).norm() : 0.0;
    rep.idempotence_residual = (g.P * g.P - g.P).norm();
    rep.relation_residual = relation_residual(g.sc, g.alpha);

    CMatrix span(static_cast<Eigen::Index>(m) * m, static_cast<Eigen::Index>(n) * n + n + 1);
    Eigen::Index col = 0;
    double scale = 1.0;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            const CMatrix prod = b.lambda(p) * b.lambda(q);
            scale = std::max(scale, norm(prod));
            span.col(col++) = vec(prod);
        }
    for (int a = 0; a < n; ++a) span.col(col++) = vec(b.lambda(a));
    span.col(col++) = vec(CMatrix::Identity(m, m));
    rep.span_dimension = rank_nullspace(span, tol).rank;
    rep.span_bound = n * n + n + 1 - g.R;

    rep.beta_alpha_ok = rep.beta_alpha_residual < tol * std::max<double>(1.0, static_cast<double>(R));
    rep.idempotence_ok = rep.idempotence_residual < tol * std::max<double>(1.0, static_cast<double>(R));
    rep.relation_ok = rep.relation_residual < tol * std::max(g.sc.product_scale, 1e-300);
    rep.dimension_ok = rep.span_dimension <= rep.span_bound;
    return rep;
}

}  // namespace ncg

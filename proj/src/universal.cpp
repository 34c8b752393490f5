#include "ncg/universal.hpp"

#include "ncg/errors.hpp"

namespace ncg {

UElement& UElement::add(const CMatrix& f, const CMatrix& g, Complex scale) {
    if (f.rows() != m_ || f.cols() != m_ || g.rows() != m_ || g.cols() != m_)
        throw ShapeError("UElement: term does not match algebra dimension");
    terms_.emplace_back(scale * f, g);
    return *this;
}

CMatrix UElement::flatten() const {
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(m_) * m_, static_cast<Eigen::Index>(m_) * m_);
    for (const auto& [f, g] : terms_) out += kron(f, g);
    return out;
}

UElement UElement::left_multiply(const CMatrix& h) const {
    UElement out(m_);
    for (const auto& [f, g] : terms_) out.add(h * f, g);
    return out;
}

UElement UElement::right_multiply(const CMatrix& h) const {
    UElement out(m_);
    for (const auto& [f, g] : terms_) out.add(f, g * h);
    return out;
}

UElement UElement::operator+(const UElement& other) const {
    if (other.m_ != m_) throw ShapeError("UElement: dimension mismatch");
    UElement out = *this;
    for (const auto& [f, g] : other.terms_) out.add(f, g);
    return out;
}

UElement UElement::operator-(const UElement& other) const {
    if (other.m_ != m_) throw ShapeError("UElement: dimension mismatch");
    UElement out = *this;
    for (const auto& [f, g] : other.terms_) out.add(f, g, -1.0);
    return out;
}

double distance(const UElement& a, const UElement& b) {
    return (a.flatten() - b.flatten()).cwiseAbs().maxCoeff();
}

UElement du(const CMatrix& f) {
    if (f.rows() != f.cols()) throw ShapeError("du: matrix must be square");
    const auto m = static_cast<int>(f.rows());
    const CMatrix id = CMatrix::Identity(m, m);
    UElement out(m);
    out.add(id, f);
    out.add(f, id, -1.0);
    return out;
}

UElement commutator(const UElement& u, const CMatrix& f) {
    return u.right_multiply(f) - u.left_multiply(f);
}

UElement theta_u(const std::vector<CMatrix>& gamma, double tol) {
    const std::vector<CMatrix> dual = matrix_dual_basis(gamma, tol);
    const auto m = static_cast<int>(gamma.front().rows());
    UElement out(m);
    for (std::size_t mu = 0; mu < gamma.size(); ++mu) out.add(gamma[mu], dual[mu].adjoint(), 1.0 / m);
    const CMatrix id = CMatrix::Identity(m, m);
    out.add(id, id, -1.0);
    return out;
}

UElement theta_u_a(const std::vector<CMatrix>& gamma, const DualData& d, int a, double tol) {
    if (a < 0 || a >= static_cast<int>(d.duals.size())) throw IndexError("theta_u_a: index out of range");
    const std::vector<CMatrix> dual = matrix_dual_basis(gamma, tol);
    const auto m = static_cast<int>(gamma.front().rows());
    const CMatrix lam_dag = d.duals[static_cast<std::size_t>(a)].adjoint();
    UElement out(m);
    for (std::size_t mu = 0; mu < gamma.size(); ++mu) out.add(gamma[mu] * lam_dag, dual[mu].adjoint());
    return out;
}

Form phi1(const TowerPtr& tower, const UElement& u) {
    if (u.m() != tower->m()) throw ShapeError("phi1: dimension mismatch");
    std::vector<std::pair<std::vector<int>, CMatrix>> terms;
    for (int b = 0; b < tower->n(); ++b) {
        CMatrix acc = CMatrix::Zero(u.m(), u.m());
        for (const auto& [f, g] : u.terms()) acc += f * commutator(tower->subspace().lambda(b), g);
        terms.push_back({{b}, acc});
    }
    return Form::from_terms(tower, 1, terms);
}

TraceLemmaReport verify_trace_lemma(const std::vector<CMatrix>& gamma, int trials, std::uint64_t seed, double tol) {
    const std::vector<CMatrix> dual = matrix_dual_basis(gamma, kDefaultTol);
    const auto m = static_cast<int>(gamma.front().rows());
    Rng rng(seed);
    TraceLemmaReport rep;
    rep.trials = trials;
    double scale = 1.0;
    for (int k = 0; k < trials; ++k) {
        const CMatrix f = rng.square(m);
        const CMatrix g = rng.square(m);
        scale = std::max({scale, norm(f), norm(g)});

        CMatrix sum = CMatrix::Zero(m, m);
        for (std::size_t mu = 0; mu < gamma.size(); ++mu) sum += gamma[mu] * f * dual[mu].adjoint();
        sum.diagonal().array() -= f.trace();
        rep.trace_residual = std::max(rep.trace_residual, sum.cwiseAbs().maxCoeff());

        UElement u(m);
        for (std::size_t mu = 0; mu < gamma.size(); ++mu) u.add(gamma[mu] * g, dual[mu].adjoint());
        const CMatrix flat = u.left_multiply(f).flatten() - u.right_multiply(f).flatten();
        rep.commutator_residual = std::max(rep.commutator_residual, flat.cwiseAbs().maxCoeff());
    }
    rep.tolerance = tol * scale * scale;
    return rep;
}

}  // namespace ncg

#pragma once

#include "ncg/calculus.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace ncg {

/// A degree-1 element sum_i f_i (x) g_i of the universal calculus, kept as a term list.
/// Comparisons go through the Kronecker flattening sum_i kron(f_i, g_i) (m^2 x m^2).
class UElement {
public:
    explicit UElement(int m) : m_(m) {}

    int m() const noexcept { return m_; }
    const std::vector<std::pair<CMatrix, CMatrix>>& terms() const noexcept { return terms_; }

    UElement& add(const CMatrix& f, const CMatrix& g, Complex scale = 1.0);

    CMatrix flatten() const;

    /// h . (f (x) g) = (hf) (x) g
    UElement left_multiply(const CMatrix& h) const;
    /// (f (x) g) . h = f (x) (gh)
    UElement right_multiply(const CMatrix& h) const;

    UElement operator+(const UElement& other) const;
    UElement operator-(const UElement& other) const;

private:
    int m_;
    std::vector<std::pair<CMatrix, CMatrix>> terms_;
};

/// max |entry| of the flattened difference.
double distance(const UElement& a, const UElement& b);

/// d_u f = 1 (x) f - f (x) 1.
UElement du(const CMatrix& f);

/// [u, f] = u f - f u in the bimodule.
UElement commutator(const UElement& u, const CMatrix& f);

/// theta_u = (1/m) gamma_mu (x) gamma^mu^dag - 1 (x) 1.
UElement theta_u(const std::vector<CMatrix>& gamma, double tol = kDefaultTol);

/// theta_u^a = gamma_mu lambda^a^dag (x) gamma^mu^dag.
UElement theta_u_a(const std::vector<CMatrix>& gamma, const DualData& d, int a, double tol = kDefaultTol);

/// Quotient map to Omega^1_B: the coefficient at b is sum_i f_i [lambda_b, g_i].
Form phi1(const TowerPtr& tower, const UElement& u);

struct TraceLemmaReport {
    int trials = 0;
    double trace_residual = 0.0;        ///< max |gamma_mu f gamma^mu^dag - tr(f) 1|
    double commutator_residual = 0.0;   ///< max |[f, gamma_mu g (x) gamma^mu^dag]|
    double tolerance = 0.0;
    bool ok() const { return trace_residual < tolerance && commutator_residual < tolerance; }
};

TraceLemmaReport verify_trace_lemma(const std::vector<CMatrix>& gamma, int trials, std::uint64_t seed,
                                    double tol = 1e-10);

}  // namespace ncg

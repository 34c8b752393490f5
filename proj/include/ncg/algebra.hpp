#pragma once

#include "ncg/linalg.hpp"

#include <string>
#include <vector>

namespace ncg {

/**
 * A basis {lambda_a} of an n-dimensional subspace B of traceless m x m matrices.
 *
 * Only validate_subspace() produces instances, so every Subspace in circulation has traceless,
 * linearly independent elements.
 */
class Subspace {
public:
    int m() const noexcept { return m_; }
    int n() const noexcept { return static_cast<int>(lambdas_.size()); }
    const std::vector<CMatrix>& lambdas() const noexcept { return lambdas_; }
    const CMatrix& lambda(int a) const { return lambdas_.at(static_cast<std::size_t>(a)); }
    const std::string& label() const noexcept { return label_; }

private:
    friend Subspace validate_subspace(int, std::vector<CMatrix>, double, std::string);
    Subspace(int m, std::vector<CMatrix> lambdas, std::string label)
        : m_(m), lambdas_(std::move(lambdas)), label_(std::move(label)) {}

    int m_;
    std::vector<CMatrix> lambdas_;
    std::string label_;
};

/// Gram matrix g_ab = <lambda_a, lambda_b>, its inverse, and the dual basis lambda^a = g^{ba} lambda_b.
struct DualData {
    CMatrix gram;
    CMatrix gram_inv;
    std::vector<CMatrix> duals;
    double condition = 1.0;
};

/**
 * Certifies tracelessness (|tr lambda_a| <= tol |lambda_a|) and linear independence.
 * Throws ShapeError, TracelessViolation (offending index and |tr|) or DependentBasis.
 */
Subspace validate_subspace(int m, std::vector<CMatrix> basis, double tol = kDefaultTol,
                           std::string label = {});

/// Throws ConditioningError when cond(g) > 1/tol.
DualData dual_data(const Subspace& b, double tol = kDefaultTol);

/// Orthogonal projection onto B: <lambda^a, f> lambda_a.
CMatrix eta(const Subspace& b, const DualData& d, const CMatrix& f);

/// f - eta(f) - tr(f)/m: the part of f orthogonal to B (+) C*1.
CMatrix eta_perp(const Subspace& b, const DualData& d, const CMatrix& f);

/// The derivation f -> [h, f] acting on row-major vec(f).
CMatrix ad_operator(const CMatrix& h);

/// Elementary matrices E_ij (1 at row i, column j), ordered row-major; self-dual under <,>.
std::vector<CMatrix> elementary_basis(int m);

/// Dual {gamma^mu} of a basis of M_m(C): <gamma^mu, gamma_nu> = delta. Throws DependentBasis
/// unless gamma holds m^2 independent m x m matrices.
std::vector<CMatrix> matrix_dual_basis(const std::vector<CMatrix>& gamma, double tol = kDefaultTol);

}  // namespace ncg

/**
 * @file maps.hpp
 * @brief Maps between calculi: pushforward/pullback along linear maps B -> B', conjugation
 * equivalences U(h) = u h u^{-1}, and the "Lie" derivative.
 */
#pragma once

#include "ncg/calculus.hpp"

#include <cstdint>

namespace ncg {

/// phi(lambda_b) = sum_c M(c, b) lambda'_c.
struct LinearMap {
    Subspace source;
    Subspace target;
    CMatrix matrix;  ///< n' x n
};

/// Checks the shape of M; throws ShapeError.
LinearMap make_linear_map(const Subspace& source, const Subspace& target, const CMatrix& matrix);

/// Inclusion iota: inner -> outer. Throws ConfigError unless span(inner) lies in span(outer).
LinearMap inclusion_map(const Subspace& inner, const Subspace& outer, double tol = kDefaultTol);

/// Coefficients of phi_*(e_b) = ad(phi(lambda_b)) over {ad(lambda'_c)}: column b of M.
CVector pushforward(const LinearMap& phi, int b);

/**
 * Pullback phi^* : Omega_{B'} -> Omega_B. `target_form` lives in a tower over phi.target and the
 * result in `source_tower` (over phi.source): (phi^* xi')_{b_1..b_p} = xi'_{c_1..c_p} M^{c_1}_{b_1}..M^{c_p}_{b_p}.
 */
Form pullback(const LinearMap& phi, const TowerPtr& source_tower, const Form& target_form);

class Conjugation {
public:
    const CMatrix& u() const noexcept { return u_; }
    const CMatrix& u_inv() const noexcept { return u_inv_; }
    CMatrix apply(const CMatrix& h) const { return u_ * h * u_inv_; }
    CMatrix apply_inverse(const CMatrix& h) const { return u_inv_ * h * u_; }

private:
    friend Conjugation make_conjugation(const CMatrix&, double);
    Conjugation(CMatrix u, CMatrix u_inv) : u_(std::move(u)), u_inv_(std::move(u_inv)) {}
    CMatrix u_;
    CMatrix u_inv_;
};

/// Throws SingularTransform when u is not (numerically) invertible.
Conjugation make_conjugation(const CMatrix& u, double tol = kDefaultTol);

/// lambda'_a = u lambda_a u^{-1}.
Subspace conjugate_subspace(const Conjugation& c, const Subspace& b, double tol = kDefaultTol);

/// Tower over u B u^{-1} carrying the same alpha as `tower` (pair indices transported unchanged).
TowerPtr conjugate_tower(const Conjugation& c, const TowerPtr& tower);

/// U^* : Omega_{B'} -> Omega_B, coefficient-wise f -> u^{-1} f u; the towers must share projectors.
Form pullback_conjugation(const Conjugation& c, const TowerPtr& source_tower, const Form& target_form);

struct EquivalenceReport {
    double coframe_residual = 0.0;   ///< max_a |U^* theta'^a - theta^a|
    double theta_residual = 0.0;     ///< |U^* theta' - theta|
    double product_residual = 0.0;   ///< max |U^*(xi' zeta') - U^* xi' U^* zeta'|
    double d_residual = 0.0;         ///< max |U^* d' xi' - d U^* xi'| (relative)
    double tolerance = 0.0;
    int trials = 0;
    bool ok() const {
        return coframe_residual < tolerance && theta_residual < tolerance &&
               product_residual < tolerance && d_residual < tolerance;
    }
};

/**
 * Builds the conjugated tower and runs the four equivalence checks on `trials` seeded random
 * forms. Throws ConfigError if the two towers disagree on a canonical projector.
 */
EquivalenceReport check_equivalence(const Conjugation& c, const TowerPtr& tower, int trials,
                                    std::uint64_t seed, double tol = 1e-8);

/**
 * L_f(g theta^A) = -[f, g] theta^A
 *                  + g P^A_B sum_q <lambda^{b_q}, [f, lambda_c]> theta^{b_1}..theta^c..theta^{b_p}
 * where P^A_B is the contraction tensor of the tower.
 */
Form lie_derivative(const CMatrix& f, const Form& xi);

}  // namespace ncg

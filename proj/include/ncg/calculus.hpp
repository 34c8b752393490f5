/**
 * @file calculus.hpp
 * @brief Differential forms over M_m(C) relative to a generalised algebra B.
 *
 * Omega^p is a free A-module spanned by the products theta^{a_1}...theta^{a_p} of the co-frame,
 * modulo the adjacent-pair relations inherited from alpha: a scalar combination
 * r_{ab} theta^a theta^b vanishes iff alpha^T r = 0, and at degree p the relation space is the
 * sum over slots q of that condition imposed on slots (q, q+1).
 *
 * A form is stored as a dense coefficient table, one m x m matrix per flattened p-tuple, and is
 * always kept in canonical form: its coefficient vector (per matrix entry) is orthogonally
 * projected onto the complement of the relation space by Pi_p. With P = alpha beta the pair
 * projector is Pi_2 = conj(P), and the contraction tensor theta^A . (e_B) is conj(Pi_p)[A, B],
 * which reduces to P^{ab}_{cd} at degree 2.
 */
#pragma once

#include "ncg/genalg.hpp"
#include "ncg/random.hpp"

#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace ncg {

enum class ProjectorKind { identity, zero, dense };

struct DegreeSpace {
    int degree = 0;
    std::size_t dimension = 1;        ///< n^p
    int rank = 1;                     ///< D_p
    ProjectorKind kind = ProjectorKind::identity;
    CMatrix projector;                ///< Pi_p, only when kind == dense
    CMatrix relation_basis;           ///< orthonormal columns spanning the relation space
    double spectral_gap = 0.0;
};

class FormTower {
public:
    const Subspace& subspace() const noexcept { return subspace_; }
    const DualData& duals() const noexcept { return duals_; }
    const GAStructure& structure() const noexcept { return structure_; }
    int n() const noexcept { return subspace_.n(); }
    int m() const noexcept { return subspace_.m(); }
    int max_degree() const noexcept { return max_degree_; }
    double tol() const noexcept { return tol_; }

    const DegreeSpace& space(int p) const;
    int rank(int p) const { return space(p).rank; }
    /// D_1..D_max.
    std::vector<int> ranks() const;

    /// Dense Pi_p (materialized on demand for identity/zero kinds).
    CMatrix projector(int p) const;
    Complex projector_entry(int p, std::size_t row, std::size_t col) const;
    /// theta^A . (e_B) = conj(Pi_p[A, B]).
    Complex contraction_entry(int p, std::size_t a, std::size_t b) const {
        return std::conj(projector_entry(p, a, b));
    }

    /// Applies Pi_p in place to a coefficient table with n^p rows.
    void canonicalize(int p, CMatrix& coefficients) const;

private:
    friend std::shared_ptr<const FormTower> build_tower(Subspace, DualData, GAStructure, int, double);
    FormTower(Subspace b, DualData d, GAStructure g, int max_degree, double tol)
        : subspace_(std::move(b)), duals_(std::move(d)), structure_(std::move(g)),
          max_degree_(max_degree), tol_(tol) {}

    Subspace subspace_;
    DualData duals_;
    GAStructure structure_;
    int max_degree_;
    double tol_;
    std::vector<DegreeSpace> spaces_;
};

using TowerPtr = std::shared_ptr<const FormTower>;

/// Throws ParameterError when max_degree < 1.
TowerPtr build_tower(Subspace b, DualData d, GAStructure g, int max_degree, double tol = kDefaultTol);

/// validate + duals + maximal relations + tower in one step.
TowerPtr make_calculus(const Subspace& b, int max_degree, double tol = kDefaultTol);
/// Same with caller-chosen relations (checked by use_relations).
TowerPtr make_calculus(const Subspace& b, const CMatrix& alpha, int max_degree, double tol = kDefaultTol);

/// An element of Omega^p, held in canonical form.
class Form {
public:
    /// coefficients: n^p rows, each a row-major vec of an m x m matrix. Canonicalized here.
    Form(TowerPtr tower, int degree, CMatrix coefficients);

    static Form zero(TowerPtr tower, int degree);
    /// Degree-0 form f.
    static Form function(TowerPtr tower, const CMatrix& f);
    /// Builds from an explicit per-tuple table; missing tuples are zero.
    static Form from_terms(TowerPtr tower, int degree,
                           const std::vector<std::pair<std::vector<int>, CMatrix>>& terms);

    int degree() const noexcept { return degree_; }
    const TowerPtr& tower() const noexcept { return tower_; }
    const CMatrix& coefficients() const noexcept { return coeffs_; }

    CMatrix coefficient(std::span<const int> tuple) const;
    CMatrix coefficient(std::size_t flat) const;
    /// max over tuples of the Frobenius norm of the coefficient.
    double max_norm() const;

    /// f . xi and xi . f
    Form left_multiply(const CMatrix& f) const;
    Form right_multiply(const CMatrix& f) const;

    Form operator+(const Form& other) const;
    Form operator-(const Form& other) const;
    Form operator-() const;
    Form operator*(Complex s) const;

private:
    struct Trusted {};
    Form(TowerPtr tower, int degree, CMatrix coefficients, Trusted);
    void check_compatible(const Form& other) const;

    TowerPtr tower_;
    int degree_;
    CMatrix coeffs_;
};

inline Form operator*(Complex s, const Form& xi) { return xi * s; }

/// max_norm(a - b).
double distance(const Form& a, const Form& b);

/// Random canonical form with i.i.d. complex normal coefficients.
Form random_form(const TowerPtr& tower, int degree, Rng& rng);

Form coframe(const TowerPtr& tower, int a);
Form theta(const TowerPtr& tower);

/// Product of forms; throws DegreeError beyond max_degree.
Form wedge(const Form& xi, const Form& zeta);
/// [xi, zeta] = xi zeta - (-1)^{pq} zeta xi.
Form graded_commutator(const Form& xi, const Form& zeta);

/// xi . (e_{b_1}, ..., e_{b_p}); throws IndexError on arity mismatch.
CMatrix contract(const Form& xi, std::span<const int> b);

/**
 * chi(f theta^{a_1}..theta^{a_p}) =
 *   f sum_q (-1)^q <lambda^{a_q}, lambda_b lambda_c> theta^{a_1}..theta^b theta^c..theta^{a_p}
 * with q counted from 1. chi of a degree-0 form is zero.
 */
Form chi(const Form& xi);

/// d xi = -[theta, xi] + chi(xi).
Form exterior_d(const Form& xi);

struct EpsilonResult {
    bool exists = false;
    int solution_dimension = 0;
    std::size_t unknowns = 0;
    CVector solution;  ///< one nonzero solution when exists
    double spectral_gap = 0.0;
};

/**
 * Solves for the epsilon^{a_1..a_{p-2}}_{r t} that make all adjacent-slot expansions
 * sum_r alpha^{a_t a_{t+1}}_r epsilon_{r t} of a degree-p tensor agree. Throws ParameterError for p < 3.
 */
EpsilonResult epsilon_check(const GAStructure& g, int p, double tol = kDefaultTol);

struct StructureEquationReport {
    double dtheta_residual = 0.0;       ///< |d theta + theta^2 + (1/m) t_ab theta^a theta^b|
    double dtheta_a_residual = 0.0;     ///< max_a |d theta^a + [theta, theta^a] + F^a_bc theta^b theta^c|
    double formula_route_residual = 0.0;///< max_a |d theta^a - sum_nu d(gamma_nu lambda^a^dag) d gamma^nu^dag|
    double eta_relation_residual = 0.0; ///< |eta_perp(lambda_a lambda_b) theta^a theta^b|
    double tolerance = 0.0;
    bool ok() const {
        return dtheta_residual < tolerance && dtheta_a_residual < tolerance &&
               formula_route_residual < tolerance && eta_relation_residual < tolerance;
    }
};

StructureEquationReport check_structure_equations(const TowerPtr& tower, double tol = kDefaultTol);

struct CoframeFormulaResult {
    std::vector<Form> coframes;
    std::optional<Form> theta;
    double coframe_residual = 0.0;
    double theta_residual = 0.0;
};

/// Evaluates theta^a = gamma_nu lambda^a^dag d gamma^nu^dag and theta = (1/m) gamma_mu d gamma^mu^dag.
CoframeFormulaResult coframe_from_formula(const TowerPtr& tower, const std::vector<CMatrix>& gamma);

}  // namespace ncg

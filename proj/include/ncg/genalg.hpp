/**
 * @file genalg.hpp
 * @brief Generalised-algebra structure of a subspace B.
 *
 * B is a generalised algebra of rank R when R independent combinations
 * alpha^{ab}_r lambda_a lambda_b land back in B (+) C*1. Equivalently each column of alpha
 * annihilates the residuals rho_ab = eta_perp(lambda_a lambda_b).
 *
 * Pair indices (a, b) are flattened row-major to n*a + b (0-based); alpha is n^2 x R,
 * beta is R x n^2 and P = alpha * beta is n^2 x n^2.
 */
#pragma once

#include "ncg/algebra.hpp"

#include <string>
#include <vector>

namespace ncg {

/// Dense n x n x n complex tensor indexed (a, b, c).
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, Complex{}) {}

    int n() const noexcept { return n_; }
    Complex& operator()(int a, int b, int c) { return data_[index(a, b, c)]; }
    Complex operator()(int a, int b, int c) const { return data_[index(a, b, c)]; }

private:
    std::size_t index(int a, int b, int c) const {
        return (static_cast<std::size_t>(a) * n_ + b) * n_ + c;
    }
    int n_ = 0;
    std::vector<Complex> data_;
};

/// Decomposition lambda_b lambda_c = F^a_{bc} lambda_a + (1/m) t_bc 1 + rho_bc.
struct StructureConstants {
    Tensor3 F;                        ///< F(a, b, c) = <lambda^a, lambda_b lambda_c>
    CMatrix t;                        ///< t(b, c) = tr(lambda_b lambda_c)
    std::vector<CMatrix> rho;         ///< rho[n*b + c] = eta_perp(lambda_b lambda_c)
    double product_scale = 0.0;       ///< max_bc |lambda_b lambda_c|
};

enum class AlphaMode { auto_maximal, user_supplied };

std::string to_string(AlphaMode mode);

struct GAStructure {
    int n = 0;
    int R = 0;
    CMatrix alpha;  ///< n^2 x R, full column rank
    CMatrix beta;   ///< R x n^2, beta * alpha = 1
    CMatrix P;      ///< n^2 x n^2 Hermitian projector onto span(alpha)
    StructureConstants sc;
    AlphaMode mode = AlphaMode::auto_maximal;
    RankResult detection;  ///< rank decision behind the maximal kernel (auto mode)
};

struct RelationDetection {
    CMatrix alpha;
    int R = 0;
    RankResult rank;
};

StructureConstants structure_constants(const Subspace& b, const DualData& d);

/// Maximal kernel of the relation system; R = 0 is a valid answer.
RelationDetection detect_relations(const Subspace& b, const DualData& d, double tol = kDefaultTol);

struct Projector {
    CMatrix beta;
    CMatrix P;
};

/// Moore-Penrose left inverse beta = (alpha^dagger alpha)^{-1} alpha^dagger and P = alpha beta.
/// Throws DependentRelations if alpha lacks full column rank.
Projector build_projector(const CMatrix& alpha, double tol = kDefaultTol);

/// Auto mode: maximal kernel.
GAStructure analyze_relations(const Subspace& b, const DualData& d, double tol = kDefaultTol);

/// Max over columns of |sum_ab alpha^{ab}_r rho_ab|, each column normalized to unit length.
double relation_residual(const StructureConstants& sc, const CMatrix& alpha);

/**
 * User-chosen (possibly non-maximal) relations. Every column must lie in the kernel: a column
 * whose normalized residual exceeds tol * product_scale raises InvalidRelation.
 */
GAStructure use_relations(const Subspace& b, const DualData& d, const CMatrix& alpha_user,
                          double tol = kDefaultTol);

/// Like use_relations but skips the kernel check; verify_ga then reports any violation.
GAStructure assume_relations(const Subspace& b, const DualData& d, const CMatrix& alpha_user,
                             double tol = kDefaultTol);

struct GAReport {
    double beta_alpha_residual = 0.0;  ///< |beta alpha - 1|
    double idempotence_residual = 0.0; ///< |P^2 - P|
    double relation_residual = 0.0;    ///< max_r |sum alpha rho| (normalized columns)
    int span_dimension = 0;            ///< dim span{lambda lambda, lambda, 1}
    int span_bound = 0;                ///< n^2 + n + 1 - R
    bool beta_alpha_ok = false;
    bool idempotence_ok = false;
    bool relation_ok = false;
    bool dimension_ok = false;

    bool ok() const { return beta_alpha_ok && idempotence_ok && relation_ok && dimension_ok; }
};

GAReport verify_ga(const Subspace& b, const GAStructure& g, double tol = kDefaultTol);

}  // namespace ncg

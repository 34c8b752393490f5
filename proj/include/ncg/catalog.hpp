/**
 * @file catalog.hpp
 * @brief Worked examples of generalised algebras with matrix representations: the universal
 * calculus over all traceless matrices, su(2) spin-j, the clock-shift pair and a fuzzy ellipsoid.
 */
#pragma once

#include "ncg/calculus.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ncg {

enum class Source { published, computed };

std::string to_string(Source s);

/// One expected quantity ("R", "D" = D_1..D_k, ...). With `lower_bound` only values[0] <= x is claimed.
struct Expectation {
    std::string quantity;
    std::vector<int> values;
    Source source = Source::computed;
    std::string basis;  ///< short justification
    bool lower_bound = false;
};

struct CatalogEntry {
    std::string name;
    std::map<std::string, std::string> parameters;
    Subspace subspace;
    std::optional<CMatrix> suggested_alpha;
    std::vector<Expectation> expected;
    std::vector<std::string> notes;

    const Expectation* find(const std::string& quantity) const;
};

/// Generalized Gell-Mann basis of the traceless m x m matrices: symmetric, antisymmetric, diagonal.
std::vector<CMatrix> gell_mann_basis(int m);

/// Spin-j matrices J_1, J_2, J_3 with j = (m-1)/2 and [J_i, J_j] = i eps_ijk J_k.
std::vector<CMatrix> spin_matrices(int m);

/// tr(J_a^2) = m(m^2 - 1)/12.
double spin_trace_closed_form(int m);

/// Pair-index columns e_ab - e_ba for a < b (n^2 x n(n-1)/2).
CMatrix antisymmetric_relations(int n);

CatalogEntry universal_a0(int m, double tol = kDefaultTol);

/// lambda_a = -i kappa J_a, or kappa J_a when `hermitian`.
CatalogEntry su2(int m, bool hermitian = false, double kappa = 1.0, double tol = kDefaultTol);

/// x = cyclic shift, y = diag(1, q, .., q^{m-1}) with q = e^{2 pi i/m}.
CatalogEntry clock_shift(int m, double tol = kDefaultTol);

/// A fixed generic 2 x 2 coefficient matrix.
CMatrix default_ellipsoid_coefficients();

/**
 * lambda_1 = -i kappa J_1, lambda_2 = -i kappa J_2 and i lambda_3 the traceless part of
 * sum_ab acoef(a, b) lambda_a lambda_b. Throws DependentBasis when lambda_3 falls into span{lambda_1, lambda_2}.
 */
CatalogEntry fuzzy_ellipsoid(int m, double kappa, const CMatrix& acoef, double tol = kDefaultTol);

/// Lookup by name ("a0", "su2", "clock-shift", "ellipsoid") with default extras. Throws ConfigError.
CatalogEntry catalog_entry(const std::string& name, int m, double tol = kDefaultTol);

std::vector<std::string> catalog_names();

/// Calculus using the suggested alpha when present, the maximal kernel otherwise.
TowerPtr entry_calculus(const CatalogEntry& entry, int max_degree, double tol = kDefaultTol);

}  // namespace ncg

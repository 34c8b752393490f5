/**
 * @file linalg.hpp
 * @brief Dense complex linear algebra shared by every layer of the calculus.
 *
 * Conventions used throughout the library:
 *  - matrices are vectorized row-major: vec(f)[i*m + j] = f(i, j);
 *  - p-index tuples (a_1, ..., a_p) are flattened row-major with a_1 the most
 *    significant digit, so the pair (a, b) lands at n*a + b (0-based);
 *  - numerical rank is decided relative to the largest singular value.
 */
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ncg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

/// Trace inner product tr(f^dagger g). Throws ShapeError on mismatched shapes.
Complex inner(const CMatrix& f, const CMatrix& g);

/// Frobenius norm; the size scale used by every relative tolerance.
inline double norm(const CMatrix& f) { return f.norm(); }

CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// Row-major vectorization and its inverse.
CVector vec(const CMatrix& f);
CMatrix unvec(const CVector& v, int rows, int cols);

/// Result of a tolerance-controlled rank decision.
struct RankResult {
    int rank = 0;
    /// Orthonormal right-kernel basis, ordered by singular value; each vector has its
    /// first non-negligible component real and positive.
    std::vector<CVector> nullspace_basis;
    /// Nonincreasing, length min(rows, cols).
    RVector singular_values;
    /// sigma[rank-1] / sigma[rank]; +inf when nothing was dropped or nothing kept.
    double spectral_gap = 0.0;
    /// Absolute cutoff actually applied.
    double threshold = 0.0;

    /// Null-space basis as the columns of one matrix (cols x nullity).
    CMatrix nullspace_matrix(Eigen::Index cols) const;
};

/**
 * Numerical rank and right null space of M.
 *
 * A singular value counts toward the rank when it exceeds tol * max(sigma_max, reference_norm).
 * With the default reference_norm = 0 the decision is purely relative to sigma_max; callers whose
 * matrix may vanish up to rounding pass the natural scale of the problem instead.
 */
RankResult rank_nullspace(const CMatrix& m, double tol = kDefaultTol, double reference_norm = 0.0);

/// Rotates the phase of v so its first component above `eps * |v|_inf` is real-positive.
void fix_phase(CVector& v, double eps = 1e-12);

/// Integer power n^p for index-space sizes.
std::size_t ipow(int n, int p);

/// Flattens a tuple with entries in [0, n); slot 0 most significant.
std::size_t flatten_index(std::span<const int> tuple, int n);
std::vector<int> unflatten_index(std::size_t flat, int n, int p);

/**
 * Lifts an operator on C^n (x) C^n to (C^n)^{(x)p}, acting on slots (q, q+1) (0-based q) and
 * as the identity elsewhere. Throws IndexError unless 0 <= q <= p-2.
 */
CMatrix lift_to_slots(const CMatrix& pair_op, int n, int p, int q);

/// Kronecker product a (x) b for dense complex matrices.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// a^{(x)p}; kron_power(a, 0) is the 1x1 identity.
CMatrix kron_power(const CMatrix& a, int p);

}  // namespace ncg

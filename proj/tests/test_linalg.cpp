#include "ncg/errors.hpp"
#include "ncg/linalg.hpp"
#include "ncg/random.hpp"

#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace ncg;
using testing_support::max_abs;

TEST(Linalg, InnerIsTraceOfAdjointProduct) {
    Rng rng(1);
    const CMatrix f = rng.square(3);
    const CMatrix g = rng.square(3);
    EXPECT_LT(std::abs(inner(f, g) - (f.adjoint() * g).trace()), 1e-12);
    EXPECT_LT(std::abs(inner(f, g) - std::conj(inner(g, f))), 1e-12);
    EXPECT_NEAR(inner(f, f).real(), norm(f) * norm(f), 1e-10);
    EXPECT_THROW(inner(f, rng.square(2)), ShapeError);
}

TEST(Linalg, VecIsRowMajor) {
    CMatrix f(2, 3);
    f << 1, 2, 3, 4, 5, 6;
    const CVector v = vec(f);
    ASSERT_EQ(v.size(), 6);
    for (int k = 0; k < 6; ++k) EXPECT_EQ(v(k), Complex(k + 1));
    EXPECT_EQ(unvec(v, 2, 3), f);
}

TEST(Linalg, RankOfKnownMatrix) {
    CMatrix a(2, 2);
    a << 1, 2, 2, 4;
    const RankResult r = rank_nullspace(a);
    EXPECT_EQ(r.rank, 1);
    ASSERT_EQ(r.nullspace_basis.size(), 1u);
    EXPECT_LT((a * r.nullspace_basis[0]).norm(), 1e-12);
    EXPECT_NEAR(r.nullspace_basis[0].norm(), 1.0, 1e-12);
    EXPECT_GT(r.nullspace_basis[0](0).real(), 0.0);
    EXPECT_NEAR(r.nullspace_basis[0](0).imag(), 0.0, 1e-14);
}

TEST(Linalg, RankFullAndZero) {
    Rng rng(2);
    const RankResult full = rank_nullspace(rng.square(4));
    EXPECT_EQ(full.rank, 4);
    EXPECT_TRUE(full.nullspace_basis.empty());
    const RankResult zero = rank_nullspace(CMatrix::Zero(3, 5));
    EXPECT_EQ(zero.rank, 0);
    EXPECT_EQ(zero.nullspace_basis.size(), 5u);
}

TEST(Linalg, RankUsesReferenceNorm) {
    CMatrix tiny = CMatrix::Identity(2, 2) * 1e-14;
    EXPECT_EQ(rank_nullspace(tiny).rank, 2);
    EXPECT_EQ(rank_nullspace(tiny, 1e-9, 1.0).rank, 0);
}

TEST(Linalg, RankErrors) {
    EXPECT_THROW(rank_nullspace(CMatrix(0, 3)), ShapeError);
    EXPECT_THROW(rank_nullspace(CMatrix::Identity(2, 2), 0.0), ParameterError);
    EXPECT_THROW(rank_nullspace(CMatrix::Identity(2, 2), -1.0), ParameterError);
}

TEST(Linalg, NullspaceIsOrthonormalAndWide) {
    Rng rng(3);
    const CMatrix a = rng.matrix(3, 7);
    const RankResult r = rank_nullspace(a);
    EXPECT_EQ(r.rank, 3);
    const CMatrix k = r.nullspace_matrix(7);
    EXPECT_LT(max_abs(k.adjoint() * k - CMatrix::Identity(4, 4)), 1e-12);
    EXPECT_LT(max_abs(a * k), 1e-12);
}

TEST(Linalg, FlattenRoundTrip) {
    const int n = 3;
    for (std::size_t flat = 0; flat < ipow(n, 4); ++flat) {
        const auto t = unflatten_index(flat, n, 4);
        EXPECT_EQ(flatten_index(t, n), flat);
    }
    const std::vector<int> pair = {2, 1};
    EXPECT_EQ(flatten_index(pair, n), 7u);
    EXPECT_EQ(ipow(3, 0), 1u);
    EXPECT_EQ(ipow(8, 4), 4096u);
}

TEST(Linalg, LiftMatchesEnumeration) {
    Rng rng(4);
    for (int n : {2, 3}) {
        const CMatrix q2 = rng.square(n * n);
        for (int p = 2; p <= 4; ++p) {
            for (int q = 0; q + 2 <= p; ++q) {
                const CMatrix lifted = lift_to_slots(q2, n, p, q);
                const auto dim = ipow(n, p);
                ASSERT_EQ(static_cast<std::size_t>(lifted.rows()), dim);
                double worst = 0.0;
                for (std::size_t row = 0; row < dim; ++row)
                    for (std::size_t col = 0; col < dim; ++col) {
                        const auto a = unflatten_index(row, n, p);
                        const auto b = unflatten_index(col, n, p);
                        Complex expect = 0.0;
                        bool others_equal = true;
                        for (int s = 0; s < p; ++s)
                            if (s != q && s != q + 1 && a[s] != b[s]) others_equal = false;
                        if (others_equal) expect = q2(n * a[q] + a[q + 1], n * b[q] + b[q + 1]);
                        worst = std::max(worst, std::abs(lifted(row, col) - expect));
                    }
                EXPECT_EQ(worst, 0.0) << "n=" << n << " p=" << p << " q=" << q;
            }
        }
    }
}

TEST(Linalg, LiftRejectsBadSlot) {
    const CMatrix id = CMatrix::Identity(4, 4);
    EXPECT_THROW(lift_to_slots(id, 2, 3, 2), IndexError);
    EXPECT_THROW(lift_to_slots(id, 2, 3, -1), IndexError);
    EXPECT_THROW(lift_to_slots(id, 2, 1, 0), IndexError);
}

TEST(Linalg, KronPower) {
    Rng rng(5);
    const CMatrix a = rng.matrix(2, 3);
    EXPECT_EQ(kron_power(a, 0).rows(), 1);
    EXPECT_EQ(kron_power(a, 0)(0, 0), Complex(1.0));
    const CMatrix k2 = kron_power(a, 2);
    ASSERT_EQ(k2.rows(), 4);
    ASSERT_EQ(k2.cols(), 9);
    EXPECT_EQ(k2(1 * 2 + 0, 2 * 3 + 1), a(1, 2) * a(0, 1));
    EXPECT_LT(max_abs(kron_power(a, 3) - kron(a, k2)), 1e-14);
}

TEST(Linalg, KronActsOnRowMajorVec) {
    Rng rng(6);
    const CMatrix u = rng.square(3);
    const CMatrix f = rng.square(3);
    const CMatrix w = rng.square(3);
    EXPECT_LT((kron(u, w.transpose()) * vec(f) - vec(u * f * w)).norm(), 1e-12);
}

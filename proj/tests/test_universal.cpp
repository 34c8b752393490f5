#include "ncg/catalog.hpp"
#include "ncg/errors.hpp"
#include "ncg/universal.hpp"

#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace ncg;
using testing_support::rel;

namespace {

std::vector<CMatrix> random_basis(int m, Rng& rng) {
    std::vector<CMatrix> out;
    for (int k = 0; k < m * m; ++k) out.push_back(rng.square(m));
    return out;
}

}  // namespace

TEST(Universal, DuIsDerivation) {
    Rng rng(51);
    const CMatrix f = rng.square(3);
    const CMatrix g = rng.square(3);
    const UElement lhs = du(f * g);
    const UElement rhs = du(f).right_multiply(g) + du(g).left_multiply(f);
    EXPECT_LT(distance(lhs, rhs), 1e-12);
}

TEST(Universal, ThetaGeneratesDu) {
    Rng rng(52);
    for (int m : {2, 3}) {
        for (const auto& gamma : {elementary_basis(m), random_basis(m, rng)}) {
            const UElement tu = theta_u(gamma);
            for (int trial = 0; trial < 5; ++trial) {
                const CMatrix f = rng.square(m);
                const UElement lhs = commutator(tu, f).left_multiply(-CMatrix::Identity(m, m));
                EXPECT_LT(distance(lhs, du(f)), 1e-10);
            }
        }
    }
}

TEST(Universal, QuotientMapsUniversalToRelative) {
    Rng rng(53);
    for (const TowerPtr& t : {entry_calculus(su2(3), 2), entry_calculus(clock_shift(4), 2)}) {
        const int m = t->m();
        const CMatrix f = rng.square(m);
        EXPECT_LT(rel(phi1(t, du(f)), exterior_d(Form::function(t, f))), 1e-10);
        const auto gamma = random_basis(m, rng);
        for (int a = 0; a < t->n(); ++a) EXPECT_LT(rel(phi1(t, theta_u_a(gamma, t->duals(), a)), coframe(t, a)), 1e-9);
        EXPECT_LT(rel(phi1(t, theta_u(gamma)), theta(t)), 1e-9);
    }
}

TEST(Universal, TraceLemma) {
    Rng rng(54);
    for (int m : {2, 3, 4}) {
        const TraceLemmaReport a = verify_trace_lemma(elementary_basis(m), 20, 7);
        const TraceLemmaReport b = verify_trace_lemma(random_basis(m, rng), 20, 7);
        EXPECT_TRUE(a.ok());
        EXPECT_TRUE(b.ok()) << b.trace_residual << " " << b.commutator_residual;
    }
}

TEST(Universal, ShapeErrors) {
    UElement u(2);
    EXPECT_THROW(u.add(CMatrix::Zero(3, 3), CMatrix::Zero(2, 2)), ShapeError);
    EXPECT_THROW(u + UElement(3), ShapeError);
    const TowerPtr t = entry_calculus(su2(3), 2);
    EXPECT_THROW(phi1(t, u), ShapeError);
    EXPECT_THROW(theta_u_a(elementary_basis(3), t->duals(), 3), IndexError);
}

#include "ncg/catalog.hpp"
#include "ncg/errors.hpp"

#include "helpers.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace ncg;
using testing_support::max_abs;

TEST(Catalog, GellMannOrthogonality) {
    for (int m = 2; m <= 5; ++m) {
        const auto g = gell_mann_basis(m);
        ASSERT_EQ(static_cast<int>(g.size()), m * m - 1);
        for (std::size_t a = 0; a < g.size(); ++a) {
            EXPECT_LT(max_abs(g[a] - g[a].adjoint()), 1e-15);
            EXPECT_LT(std::abs(g[a].trace()), 1e-14);
            for (std::size_t b = 0; b < g.size(); ++b)
                EXPECT_LT(std::abs(inner(g[a], g[b]) - (a == b ? 2.0 : 0.0)), 1e-12);
        }
    }
}

TEST(Catalog, SpinCommutatorsAndTrace) {
    const Complex i(0.0, 1.0);
    for (int m = 2; m <= 6; ++m) {
        const auto j = spin_matrices(m);
        EXPECT_LT(max_abs(commutator(j[0], j[1]) - i * j[2]), 1e-12);
        EXPECT_LT(max_abs(commutator(j[1], j[2]) - i * j[0]), 1e-12);
        EXPECT_LT(max_abs(commutator(j[2], j[0]) - i * j[1]), 1e-12);
        for (const auto& x : j) EXPECT_NEAR((x * x).trace().real(), spin_trace_closed_form(m), 1e-10);
        const double jj = (m - 1) / 2.0;
        const CMatrix casimir = j[0] * j[0] + j[1] * j[1] + j[2] * j[2];
        EXPECT_LT(max_abs(casimir - jj * (jj + 1) * CMatrix::Identity(m, m)), 1e-10);
    }
}

TEST(Catalog, PauliScaling) {
    const CatalogEntry e = su2(2, true, 1.0);
    CMatrix sx(2, 2);
    sx << 0, 1, 1, 0;
    EXPECT_LT(max_abs(e.subspace.lambda(0) - sx / 2.0), 1e-15);
    const CatalogEntry anti = su2(2);
    EXPECT_LT(max_abs(anti.subspace.lambda(0) + anti.subspace.lambda(0).adjoint()), 1e-15);
}

TEST(Catalog, ClockShiftIdentities) {
    for (int m = 2; m <= 5; ++m) {
        const CatalogEntry e = clock_shift(m);
        const CMatrix& x = e.subspace.lambda(0);
        const CMatrix& y = e.subspace.lambda(1);
        const Complex q = std::polar(1.0, 2.0 * std::numbers::pi / m);
        EXPECT_LT(max_abs(x * y - q * y * x), 1e-12);
        EXPECT_LT(max_abs(x.adjoint() * x - CMatrix::Identity(m, m)), 1e-12);
        for (int a = 0; a <= 2 * m; ++a)
            for (int b = 0; b <= 2 * m; ++b) {
                CMatrix xa = CMatrix::Identity(m, m);
                CMatrix yb = CMatrix::Identity(m, m);
                for (int k = 0; k < a; ++k) xa = xa * x;
                for (int k = 0; k < b; ++k) yb = yb * y;
                const Complex tr = (xa * yb).trace();
                if (a % m == 0 && b % m == 0)
                    EXPECT_NEAR(tr.real(), m, 1e-9);
                else
                    EXPECT_LT(std::abs(tr), 1e-9) << "a=" << a << " b=" << b;
            }
    }
}

TEST(Catalog, EllipsoidIsTracelessAndRecordsConstants) {
    for (int m = 3; m <= 5; ++m) {
        const CatalogEntry e = fuzzy_ellipsoid(m, 0.7, default_ellipsoid_coefficients());
        EXPECT_LT(std::abs(e.subspace.lambda(2).trace()), 1e-12);
        ASSERT_TRUE(e.parameters.count("scalar_computed"));
        ASSERT_TRUE(e.parameters.count("scalar_displayed"));
        EXPECT_NE(e.parameters.at("scalar_computed"), e.parameters.at("scalar_displayed"));
        EXPECT_FALSE(e.notes.empty());
    }
    EXPECT_THROW(fuzzy_ellipsoid(4, 1.0, CMatrix::Zero(2, 2)), DependentBasis);
    EXPECT_THROW(fuzzy_ellipsoid(2, 1.0, default_ellipsoid_coefficients()), ParameterError);
    EXPECT_THROW(fuzzy_ellipsoid(3, 1.0, CMatrix::Zero(3, 3)), ShapeError);
}

TEST(Catalog, ExpectationsHold) {
    for (const std::string& name : catalog_names()) {
        for (int m = (name == "ellipsoid" ? 3 : 2); m <= 5; ++m) {
            if (name == "a0" && m > 3) continue;
            const CatalogEntry e = catalog_entry(name, m);
            const Expectation* d = e.find("D");
            ASSERT_NE(d, nullptr);
            const TowerPtr t = entry_calculus(e, static_cast<int>(d->values.size()));
            EXPECT_EQ(t->ranks(), d->values) << name << " m=" << m;
            for (const char* key : {"R", "R_used"})
                if (const Expectation* r = e.find(key)) EXPECT_EQ(t->structure().R, r->values[0]) << name << " m=" << m;
            if (const Expectation* r = e.find("R_auto")) {
                const int auto_r = detect_relations(e.subspace, t->duals()).R;
                if (r->lower_bound)
                    EXPECT_GE(auto_r, r->values[0]);
                else
                    EXPECT_EQ(auto_r, r->values[0]);
            }
            EXPECT_TRUE(verify_ga(e.subspace, t->structure()).ok());
            if (t->max_degree() >= 2) EXPECT_TRUE(check_structure_equations(t).ok()) << name << " m=" << m;
        }
    }
}

TEST(Catalog, UnknownAndInvalid) {
    EXPECT_THROW(catalog_entry("torus", 3), ConfigError);
    EXPECT_THROW(su2(1), ParameterError);
    EXPECT_THROW(clock_shift(1), ParameterError);
    EXPECT_THROW(universal_a0(1), ParameterError);
    EXPECT_THROW(su2(3, false, 0.0), ParameterError);
}

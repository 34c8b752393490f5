#include "ncg/genalg.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace ncg;

TEST(Oracle, ExactRankBasics) {
    CMatrix a(3, 3);
    a << 1, 2, 3, 2, 4, 6, Complex(0, 1), 0, 1;
    EXPECT_EQ(oracle::exact_rank(a), 2);
    EXPECT_EQ(oracle::exact_rank(CMatrix::Identity(4, 4)), 4);
    EXPECT_THROW(oracle::exact_rank(CMatrix::Constant(1, 1, 0.5)), std::invalid_argument);
}

TEST(Oracle, FloatingRankMatchesExact) {
    int count = 0;
    for (const auto& basis : oracle::instances()) {
        const int m = static_cast<int>(basis.front().rows());
        const Subspace b = validate_subspace(m, basis);
        const DualData d = dual_data(b);
        EXPECT_EQ(detect_relations(b, d).R, oracle::exact_relation_count(basis))
            << "m=" << m << " n=" << basis.size() << " instance " << count;
        ++count;
    }
    EXPECT_GE(count, 30);
}

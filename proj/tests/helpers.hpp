#pragma once

#include "ncg/algebra.hpp"
#include "ncg/calculus.hpp"
#include "ncg/random.hpp"

#include <gtest/gtest.h>

#include <vector>

namespace testing_support {

inline std::vector<ncg::CMatrix> random_traceless(int m, int n, ncg::Rng& rng) {
    std::vector<ncg::CMatrix> out;
    for (int k = 0; k < n; ++k) out.push_back(rng.traceless(m));
    return out;
}

inline ncg::Subspace random_subspace(int m, int n, ncg::Rng& rng) {
    return ncg::validate_subspace(m, random_traceless(m, n, rng));
}

inline double max_abs(const ncg::CMatrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

inline double rel(const ncg::Form& a, const ncg::Form& b) {
    return ncg::distance(a, b) / std::max({1.0, a.max_norm(), b.max_norm()});
}

}  // namespace testing_support

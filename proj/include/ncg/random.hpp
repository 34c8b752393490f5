#pragma once

#include "ncg/linalg.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace ncg {

/**
 * Seeded generator for the property suites. Normals come from Box-Muller on top of
 * std::mt19937_64 so a given seed yields the same stream on every platform.
 */
class Rng {
public:
    static constexpr const char* kName = "mt19937_64/box-muller";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();  ///< in (0, 1)
    double normal();
    /// Standard complex normal: real and imaginary parts each N(0, 1/2).
    Complex complex_normal();

    CMatrix matrix(int rows, int cols);
    CMatrix square(int m) { return matrix(m, m); }
    CMatrix traceless(int m);
    CMatrix unitary(int m);
    /// Gaussian matrix redrawn until its condition number is at most max_condition.
    CMatrix invertible(int m, double max_condition = 50.0);

private:
    std::mt19937_64 engine_;
};

}  // namespace ncg

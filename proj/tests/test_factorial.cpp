#include <cmath>

#include <gtest/gtest.h>

#include "fockcs/factorial.hpp"

using namespace fockcs;

TEST(Factorial, SmallValuesAreExactProducts) {
    double prod = 1.0;
    for (int n = 0; n <= 20; ++n) {
        if (n > 0) prod *= n;
        EXPECT_NEAR(std::exp(log_factorial(n)), prod, 1e-14 * prod) << n;
        EXPECT_NEAR(sqrt_factorial(n), std::sqrt(prod), 1e-15 * std::sqrt(prod)) << n;
    }
}

TEST(Factorial, LargeValuesMatchLgamma) {
    for (int n : {21, 50, 100, 170, 500}) EXPECT_NEAR(log_factorial(n), std::lgamma(n + 1.0), 1e-12 * n) << n;
    // beyond the double range of n! itself
    EXPECT_TRUE(std::isfinite(log_factorial(1000)));
}

TEST(Factorial, ContinuityAcrossExactBoundary) {
    EXPECT_NEAR(log_factorial(21) - log_factorial(20), std::log(21.0), 1e-12);
}

TEST(Binomial, PascalTriangleOracle) {
    std::vector<std::uint64_t> row{1};
    for (int k = 1; k <= 60; ++k) {
        std::vector<std::uint64_t> next(k + 1, 1);
        for (int j = 1; j < k; ++j) next[j] = row[j - 1] + row[j];
        row = next;
        for (int j = 0; j <= k; ++j) {
            ASSERT_EQ(exact_binomial(k, j), row[j]) << k << "," << j;
            EXPECT_NEAR(log_binomial(k, j), std::log(static_cast<double>(row[j])), 1e-12 * (1 + k));
        }
    }
}

TEST(Binomial, SymmetryProperty) {
    for (int k = 0; k <= 200; k += 7)
        for (int j = 0; j <= k; ++j) EXPECT_NEAR(log_binomial(k, j), log_binomial(k, k - j), 1e-10);
}

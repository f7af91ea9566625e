#pragma once

#include <cstdint>

namespace fockcs {

// Exact integer arithmetic for n <= 20 (factorial) and k <= 60 (binomial),
// lgamma beyond that.
double log_factorial(int n);
double sqrt_factorial(int n);
double log_binomial(int k, int j);
std::uint64_t exact_binomial(int k, int j);

}  // namespace fockcs

#include "fockcs/factorial.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace fockcs {
namespace {

constexpr std::array<std::uint64_t, 21> make_factorials() {
    std::array<std::uint64_t, 21> f{};
    f[0] = 1;
    for (int i = 1; i <= 20; ++i) f[i] = f[i - 1] * static_cast<std::uint64_t>(i);
    return f;
}

constexpr auto kFactorials = make_factorials();

}  // namespace

double log_factorial(int n) {
    if (n < 0) throw std::domain_error("log_factorial: negative argument");
    if (n <= 20) return std::log(static_cast<double>(kFactorials[n]));
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double sqrt_factorial(int n) {
    if (n < 0) throw std::domain_error("sqrt_factorial: negative argument");
    if (n <= 20) return std::sqrt(static_cast<double>(kFactorials[n]));
    return std::exp(0.5 * std::lgamma(static_cast<double>(n) + 1.0));
}

std::uint64_t exact_binomial(int k, int j) {
    if (j < 0 || j > k) return 0;
    if (k > 60) throw std::domain_error("exact_binomial: k > 60 overflows uint64");
    if (j > k - j) j = k - j;
    std::uint64_t r = 1;
    // r * (k - j + i) / i stays integral at every step and below 2^64 for k <= 60
    for (int i = 1; i <= j; ++i) {
        r = r / static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(k - j + i) +
            r % static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(k - j + i) /
                static_cast<std::uint64_t>(i);
    }
    return r;
}

double log_binomial(int k, int j) {
    if (j < 0 || j > k) return -INFINITY;
    if (k <= 60) return std::log(static_cast<double>(exact_binomial(k, j)));
    return std::lgamma(k + 1.0) - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0);
}

}  // namespace fockcs

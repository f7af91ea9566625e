#include "fockcs/rng.hpp"

namespace fockcs {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Vector random_complex_vector(SplitMix64& rng, int dim) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) {
        const double re = rng.uniform(-1.0, 1.0);
        const double im = rng.uniform(-1.0, 1.0);
        v(i) = {re, im};
    }
    return v;
}

Vector random_low_degree_vector(SplitMix64& rng, int dim, int degree) {
    Vector v = Vector::Zero(dim);
    for (int i = 0; i <= degree && i < dim; ++i) {
        const double re = rng.uniform(-1.0, 1.0);
        const double im = rng.uniform(-1.0, 1.0);
        v(i) = {re, im};
    }
    return v;
}

}  // namespace fockcs

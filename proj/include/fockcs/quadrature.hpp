#pragma once

#include <functional>
#include <vector>

#include "fockcs/core.hpp"

namespace fockcs {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int order);

struct QuadratureConfig {
    int order = 7;
    int initial_panels = 4;
    int max_halvings = 16;
    /// Successive refinements must agree to tol * max(1, |I|).
    double tol = 1e-12;
};

struct QuadratureResult {
    Complex value{};
    int panels = 0;
    double last_change = 0.0;
};

/// Composite Gauss-Legendre with panel halving until two refinements agree.
/// Throws NumericalError when max_halvings is exhausted.
QuadratureResult integrate(const std::function<Complex(double)>& f, double a, double b,
                           const QuadratureConfig& cfg = {});

struct VectorQuadratureResult {
    Vector value;
    int panels = 0;
    double last_change = 0.0;
};

/// Vector-valued variant; integrand nodes are evaluated in parallel when
/// `parallel` is set (the integrand must then be safe for concurrent calls).
/// Summation order is fixed, so serial and parallel results are identical.
VectorQuadratureResult integrate_vector(const std::function<Vector(double)>& f, double a, double b,
                                        const QuadratureConfig& cfg = {}, bool parallel = true);

}  // namespace fockcs

#include "fockcs/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace fockcs {

GaussLegendreRule gauss_legendre(int order) {
    if (order < 1) throw InputError("gauss_legendre: order must be >= 1");
    if (order == 1) return {{0.0}, {2.0}};
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    // P_n(x) and P_n'(x) by the three-term recurrence
    auto legendre = [order](double x) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= order; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        return std::pair{p1, order * (x * p1 - p0) / (x * x - 1.0)};
    };
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dp = legendre(x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(order - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(order - 1 - i)] = w;
    }
    if (order % 2 == 1) rule.nodes[static_cast<std::size_t>(order / 2)] = 0.0;
    return rule;
}

namespace {

Complex composite(const std::function<Complex(double)>& f, double a, double b, int panels,
                  const GaussLegendreRule& rule) {
    const double h = (b - a) / panels;
    Complex sum{};
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        Complex s{};
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
        sum += 0.5 * h * s;
    }
    return sum;
}

Vector composite_vector(const std::function<Vector(double)>& f, double a, double b, int panels,
                        const GaussLegendreRule& rule, bool parallel) {
    const double h = (b - a) / panels;
    const int q = static_cast<int>(rule.nodes.size());
    const int total = panels * q;
    std::vector<Vector> values(static_cast<std::size_t>(total));
    std::string error;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int idx = 0; idx < total; ++idx) {
        const int p = idx / q;
        const int i = idx % q;
        const double t = a + (p + 0.5) * h + 0.5 * h * rule.nodes[static_cast<std::size_t>(i)];
        try {
            values[static_cast<std::size_t>(idx)] = f(t);
        } catch (const std::exception& e) {
#pragma omp critical(fockcs_quadrature_error)
            error = e.what();
        }
    }
    if (!error.empty()) throw NumericalError("integrand failed: " + error);
    Vector sum = Vector::Zero(values.front().size());
    for (int p = 0; p < panels; ++p) {
        Vector s = Vector::Zero(sum.size());
        for (int i = 0; i < q; ++i)
            s += rule.weights[static_cast<std::size_t>(i)] * values[static_cast<std::size_t>(p * q + i)];
        sum += 0.5 * h * s;
    }
    return sum;
}

}  // namespace

QuadratureResult integrate(const std::function<Complex(double)>& f, double a, double b,
                           const QuadratureConfig& cfg) {
    if (cfg.order < 1 || cfg.initial_panels < 1) throw InputError("integrate: bad quadrature config");
    const GaussLegendreRule rule = gauss_legendre(cfg.order);
    int panels = cfg.initial_panels;
    Complex prev = composite(f, a, b, panels, rule);
    for (int h = 0; h < cfg.max_halvings; ++h) {
        panels *= 2;
        const Complex cur = composite(f, a, b, panels, rule);
        const double change = std::abs(cur - prev);
        if (!is_finite(cur)) throw NumericalError("integrate: non-finite integral");
        if (change <= cfg.tol * std::max(1.0, std::abs(cur))) return {cur, panels, change};
        prev = cur;
    }
    throw NumericalError("integrate: step halving did not converge");
}

VectorQuadratureResult integrate_vector(const std::function<Vector(double)>& f, double a, double b,
                                        const QuadratureConfig& cfg, bool parallel) {
    if (cfg.order < 1 || cfg.initial_panels < 1) throw InputError("integrate_vector: bad quadrature config");
    const GaussLegendreRule rule = gauss_legendre(cfg.order);
    int panels = cfg.initial_panels;
    Vector prev = composite_vector(f, a, b, panels, rule, parallel);
    for (int h = 0; h < cfg.max_halvings; ++h) {
        panels *= 2;
        Vector cur = composite_vector(f, a, b, panels, rule, parallel);
        if (!cur.allFinite()) throw NumericalError("integrate_vector: non-finite integral");
        const double change = (cur - prev).norm();
        if (change <= cfg.tol * std::max(1.0, cur.norm())) return {std::move(cur), panels, change};
        prev = std::move(cur);
    }
    throw NumericalError("integrate_vector: step halving did not converge");
}

}  // namespace fockcs

#pragma once

// Thin wrappers over Boost.Math adaptive Gauss-Kronrod.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "ionnoise/errors.hpp"

namespace ionnoise::detail {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
};

template <class F>
QuadResult gk_segment(F&& f, double a, double b, double rel_tol, unsigned max_depth = 15) {
    // Boost compares an unscaled error against a scaled tolerance, so map to [0, 1]
    const double width = b - a;
    auto unit = [&](double u) { return f(a + width * u); };
    QuadResult r;
    r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        unit, 0.0, 1.0, max_depth, rel_tol, &r.error, &r.l1);
    r.value *= width;
    r.error *= std::abs(width);
    r.l1 *= std::abs(width);
    return r;
}

// Sum of adaptive integrals over consecutive pieces; throws when the combined
// error estimate exceeds slack * rel_tol of the L1 norm.
template <class F>
double integrate_pieces(F&& f, const std::vector<double>& edges, double rel_tol,
                        const char* what = "quadrature", double slack = 50.0) {
    QuadResult total;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const auto r = gk_segment(f, edges[i], edges[i + 1], rel_tol);
        total.value += r.value;
        total.error += r.error;
        total.l1 += r.l1;
    }
    if (!std::isfinite(total.value) || total.error > slack * rel_tol * total.l1 + 1e-300) {
        const double achieved = total.l1 > 0.0 ? total.error / total.l1 : total.error;
        std::ostringstream msg;
        msg << what << ": failed to reach relative tolerance " << rel_tol << " (achieved "
            << achieved << ")";
        throw IntegrationError(msg.str(), achieved);
    }
    return total.value;
}

inline std::vector<double> linear_edges(double a, double b, int n) {
    std::vector<double> e(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) e[static_cast<std::size_t>(i)] = a + (b - a) * i / n;
    return e;
}

inline std::vector<double> log_edges(double a, double b, int n) {
    std::vector<double> e(static_cast<std::size_t>(n + 1));
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i <= n; ++i) e[static_cast<std::size_t>(i)] = std::exp(la + (lb - la) * i / n);
    return e;
}

}  // namespace ionnoise::detail

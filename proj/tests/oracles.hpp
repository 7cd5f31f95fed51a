#pragma once

// Reference computations the tests trust instead of the library: dumb
// grids, gamma-function volumes, 1-D maximizers. Everything here is
// deliberately independent of the implementation under test.

#include <cmath>
#include <functional>
#include <limits>

namespace oracles {

inline constexpr double kPi = 3.14159265358979323846;

struct BruteDistance {
    double value = 0.0;
    double error = 0.0; // half grid step stretched by the graph slope
};

// Distance from (q, v) to the graph of a 1-D psi, minimized over a grid of
// n samples on [q - window, q + window]. The true nearest parameter lies
// within half a step of some sample, so the true distance is at least
// value - error.
inline BruteDistance brute_distance_1d(const std::function<double(double)>& psi,
                                       double q, double v, double window,
                                       int n, double lip) {
    double best = std::numeric_limits<double>::infinity();
    const double step = 2.0 * window / (n - 1);
    for (int i = 0; i < n; ++i) {
        double t = q - window + step * i;
        best = std::min(best, std::hypot(t - q, psi(t) - v));
    }
    return {best, 0.5 * step * std::sqrt(1.0 + lip * lip)};
}

// Same idea over a square window for a 2-D parameter graph.
inline BruteDistance brute_distance_2d(
    const std::function<double(double, double)>& psi, double q1, double q2,
    double v, double window, int n, double lip) {
    double best = std::numeric_limits<double>::infinity();
    const double step = 2.0 * window / (n - 1);
    for (int i = 0; i < n; ++i) {
        double t1 = q1 - window + step * i;
        for (int j = 0; j < n; ++j) {
            double t2 = q2 - window + step * j;
            double dz = psi(t1, t2) - v;
            best = std::min(best,
                            std::sqrt((t1 - q1) * (t1 - q1) +
                                      (t2 - q2) * (t2 - q2) + dz * dz));
        }
    }
    // nearest grid node is within step/sqrt(2) of the true minimizer
    return {best, step * std::sqrt(0.5) * std::sqrt(1.0 + lip * lip)};
}

// Coarse grid followed by ternary refinement around the best cell.
inline double maximize_1d(const std::function<double(double)>& f, double lo,
                          double hi, int n = 4001) {
    double best_x = lo, best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double x = lo + (hi - lo) * i / (n - 1);
        double y = f(x);
        if (y > best) {
            best = y;
            best_x = x;
        }
    }
    double step = (hi - lo) / (n - 1);
    double a = std::max(lo, best_x - step), b = std::min(hi, best_x + step);
    for (int round = 0; round < 200; ++round) {
        double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
        if (f(m1) < f(m2)) {
            a = m1;
        } else {
            b = m2;
        }
    }
    return f(0.5 * (a + b));
}

inline double ball_volume_gamma(int n) {
    return std::pow(kPi, 0.5 * n) / std::exp(std::lgamma(0.5 * n + 1.0));
}

// sup over vertical pairs of |e^(-a) - e^(-b)| / (b-a)^alpha on the upper
// half plane. The prefactor e^(-a) of the quotient is largest at a = 0, so
// the 2-D search collapses to one dimension.
inline double separable_vertical_sup(double alpha) {
    return maximize_1d(
        [alpha](double b) { return (1.0 - std::exp(-b)) / std::pow(b, alpha); },
        1e-9, 30.0);
}

// sup over the half plane of d^(1-alpha) |d_N e^(-x2) cos(x1)|
//   = max_h h^(1-alpha) e^(-h).
inline double separable_weighted_vertical_sup(double alpha) {
    return maximize_1d(
        [alpha](double h) { return std::pow(h, 1.0 - alpha) * std::exp(-h); },
        1e-9, 30.0);
}

} // namespace oracles

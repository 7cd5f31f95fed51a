#include "lipharm/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lipharm {

double ball_volume(int n) {
    if (n < 0) throw std::invalid_argument("ball_volume: n must be >= 0");
    double v_even = 1.0; // V_0
    double v_odd = 2.0;  // V_1
    for (int m = 2; m <= n; ++m) {
        double& v = (m % 2 == 0) ? v_even : v_odd;
        v *= 2.0 * std::numbers::pi / static_cast<double>(m);
    }
    return (n % 2 == 0) ? v_even : v_odd;
}

double schwarz_constant(int n) {
    if (n < 2) throw std::invalid_argument("schwarz_constant: n must be >= 2");
    return 2.0 * ball_volume(n - 1) / ball_volume(n);
}

double gamma_star(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw std::invalid_argument("gamma_star: k must be finite and > 0");
    }
    double a = 1.0 + 2.0 * k;
    return 1.0 / (a + std::sqrt(a * a - 1.0));
}

double poisson_constant(int n) {
    if (n < 1) throw std::invalid_argument("poisson_constant: n must be >= 1");
    return 2.0 / (static_cast<double>(n) * ball_volume(n));
}

ConstantBundle derive_constants(int dim, double alpha, double lip,
                                double c_vertical) {
    if (dim < 2) throw std::invalid_argument("derive_constants: dim must be >= 2");
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument(
            "derive_constants: alpha must lie in (0,1); the c2 bound divides by (1 - alpha)");
    }
    if (!(lip >= 0.0) || !std::isfinite(lip)) {
        throw std::invalid_argument("derive_constants: lip must be finite and >= 0");
    }
    if (!(c_vertical >= 0.0) || !std::isfinite(c_vertical)) {
        throw std::invalid_argument("derive_constants: c_vertical must be finite and >= 0");
    }

    ConstantBundle b;
    b.dim = dim;
    b.alpha = alpha;
    b.lip = lip;
    b.c_vertical = c_vertical;

    b.k_n = schwarz_constant(dim);
    b.gamma_star = gamma_star(b.k_n);
    b.cone_cos = 1.0 / std::sqrt(1.0 + lip * lip);

    b.c1 = (2.0 / b.gamma_star) * c_vertical;
    b.c1_paper = 7.0 * b.k_n * c_vertical;
    b.c2 = 4.0 * b.k_n * b.c1 /
           ((1.0 - alpha) * std::pow(b.cone_cos, 2.0 - alpha));
    b.c3 = (2.0 * lip + 3.0) * c_vertical + b.c2;
    return b;
}

} // namespace lipharm

#pragma once

namespace lipharm {

/// Volume of the unit ball in R^n (n >= 0), via the recurrence
/// V_0 = 1, V_1 = 2, V_n = 2 pi / n * V_{n-2}.
double ball_volume(int n);

/// K_N = 2 V_{N-1} / V_N for N >= 2. Appears as the gradient bound
/// |grad u(x)| <= K_N / d(x) for harmonic u with |u| <= 1.
double schwarz_constant(int n);

/// Root in (0,1) of 2 gamma k / (1 - gamma)^2 = 1/2, i.e.
/// gamma = (1+2k) - sqrt((1+2k)^2 - 1), evaluated in the cancellation-free
/// form 1 / (a + sqrt(a^2 - 1)) with a = 1+2k. Requires k > 0.
double gamma_star(double k);

/// Normalizing constant of the half-space Poisson kernel,
/// c_n = Gamma(n/2) / pi^(n/2) = 2 / (n V_n).
double poisson_constant(int n);

/// Everything the Hoelder estimate chain needs, derived from the four
/// inputs. c1 uses the factor 2/gamma_star the derivation of c2 relies on;
/// c1_paper records the alternative 7 K_N, which lands below 2/gamma_star
/// for every dim >= 2 and is reported for comparison.
struct ConstantBundle {
    int dim = 0;
    double alpha = 0.0;
    double lip = 0.0;
    double c_vertical = 0.0;

    double k_n = 0.0;
    double gamma_star = 0.0;
    double cone_cos = 0.0;

    double c1 = 0.0;       // (2 / gamma_star) * c_vertical
    double c1_paper = 0.0; // 7 K_N * c_vertical
    double c2 = 0.0;       // 4 K_N c1 / ((1-alpha) cos(gamma)^(2-alpha))
    double c3 = 0.0;       // (2L+3) c_vertical + c2
};

/// dim >= 2, alpha in (0,1), lip >= 0, c_vertical >= 0 (zero gives the
/// all-zero bundle of a constant field).
ConstantBundle derive_constants(int dim, double alpha, double lip,
                                double c_vertical);

} // namespace lipharm

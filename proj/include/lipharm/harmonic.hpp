#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lipharm/geometry.hpp"

namespace lipharm {

/// Dirichlet data on the boundary graph: value at the graph point
/// (x', Psi(x')) as a function of x'.
struct BoundaryData {
    std::function<double(std::span<const double>)> fn;
    double sup_bound = 0.0;
    std::optional<double> holder_constant;
    std::optional<double> holder_exponent;

    double operator()(std::span<const double> xp) const { return fn(xp); }

    static BoundaryData constant(double c);
    // 1 where the first parameter coordinate is > 0, else 0.
    static BoundaryData indicator_first_positive();
    // min(1, |x'|^alpha); Hoelder with constant 1 and exponent alpha.
    static BoundaryData abs_power(double alpha);
};

/// Bounded scalar field on an epigraph domain, usually harmonic. Canonical
/// kinds: separable-exp, pole, harmonic-measure, poisson-quadrature, wos;
/// custom() admits probe fields for calibration tests.
class HarmonicField {
public:
    using ValueFn = std::function<double(const Point&)>;
    using GradientFn = std::function<std::vector<double>(const Point&)>;

    static HarmonicField custom(std::string kind, int dim, ValueFn value,
                                GradientFn gradient, double sup_bound,
                                std::shared_ptr<const EpigraphDomain> domain,
                                bool stochastic = false);

    const std::string& kind() const { return kind_; }
    int dim() const { return dim_; }
    double sup_bound() const { return sup_bound_; }
    bool has_analytic_gradient() const { return static_cast<bool>(gradient_); }
    bool stochastic() const { return stochastic_; }
    const std::shared_ptr<const EpigraphDomain>& domain() const { return domain_; }

    double value(const Point& x) const;
    // Throws unsupported_error when no analytic gradient is attached.
    std::vector<double> analytic_gradient(const Point& x) const;

private:
    std::string kind_;
    int dim_ = 0;
    ValueFn value_;
    GradientFn gradient_;
    double sup_bound_ = 0.0;
    std::shared_ptr<const EpigraphDomain> domain_;
    bool stochastic_ = false;
};

/// U(x) = exp(-x_N) cos(x_1) on the half-space above Psi = 0; sup = 1 there.
HarmonicField make_separable_exp(int n);

/// Bounded harmonic field with a pole strictly below the graph:
/// |x-p|^(2-n) for n >= 3, Re(1/(z-p)) for n = 2. The certified sup bound
/// is dist(p, graph)^(2-n) resp. 1/dist, from the exact distance.
HarmonicField make_pole_field(const EpigraphDomain& domain, const Point& pole);
HarmonicField make_pole_field(int n, const Point& pole); // half-space Psi = 0

/// Half-plane harmonic measure of the positive boundary axis:
/// U(x_1, x_2) = 1 - theta/pi with theta = atan2(x_2, x_1) in (0, pi).
HarmonicField make_harmonic_measure_2d();

/// Half-plane Poisson integral quadrature: dyadic panels graded at the
/// kernel scale x_2, 16-node Gauss-Legendre per panel.
struct PoissonRule {
    double window = 1e7;      // integrate data over [-window, window]
    int nodes_per_panel = 16;
    double min_height = 1e-8; // below this the panel count certifies nothing
};

/// Kernel mass outside the window at x; times sup|data| bounds the
/// truncation error of the extension value.
double poisson_tail_bound(const PoissonRule& rule, const Point& x);

/// U(x) = integral of the half-plane Poisson kernel against data over the
/// window; dim 2 only. Evaluation below rule.min_height -> accuracy error.
HarmonicField make_poisson_extension(BoundaryData data, const PoissonRule& rule);

struct WosParams {
    double epsilon = 1e-3;
    double far_cutoff = 0.0; // <= 0: defaults to 1e3 * max(x_N, 1)
    double far_value = 0.0;
    std::size_t max_steps = 100000;
    std::size_t n_walks = 10000;
    std::uint64_t seed = 1;
    int workers = 1;         // <= 0: hardware concurrency
};

struct WosEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_walks = 0;
    double epsilon = 0.0;
    double truncated_fraction = 0.0; // walks ended by the far-field cutoff
    double maxed_fraction = 0.0;     // walks ended by the step limit
    bool truncation_warning = false; // truncated_fraction > 0.5
};

/// Walk-on-spheres estimate of the bounded harmonic extension of data at x.
/// Sphere radius per step is the certified bound vertical_gap * cos(gamma);
/// walks absorb when that bound drops below epsilon, taking the data value
/// at the current x'. Walk w draws from a stream derived from (seed, w) and
/// the reduction is index-ordered, so results do not depend on workers.
WosEstimate wos_evaluate(const EpigraphDomain& domain, const BoundaryData& data,
                         const Point& x, const WosParams& params);

/// Field wrapper around wos_evaluate (kind "wos", no gradient). Every
/// evaluation runs params.n_walks walks with the fixed params.seed.
HarmonicField make_wos_field(std::shared_ptr<const EpigraphDomain> domain,
                             BoundaryData data, const WosParams& params);

/// Boundary restriction of a field: data(x') = field((x', Psi(x'))).
BoundaryData boundary_trace(const HarmonicField& field,
                            const EpigraphDomain& domain);

struct StepPolicy {
    double delta = 1e-2; // step = delta * boundary distance ...
    double h_max = 1e-4; // ... capped so quadratic truncation stays small
};

/// Analytic gradient when attached, else central differences with step
/// h = min(delta * d(x), h_max). Requires an interior point of the field's
/// domain; stochastic fields are unsupported.
std::vector<double> gradient(const HarmonicField& field, const Point& x,
                             const StepPolicy& policy = {});

/// <grad U(x), direction>; the direction is normalized internally.
double directional_derivative(const HarmonicField& field, const Point& x,
                              std::span<const double> direction,
                              const StepPolicy& policy = {});

/// Central second-difference Laplacian estimate at step h. Requires the
/// stencil ball of radius h*sqrt(N) inside the domain; exact on quadratics.
double laplacian_residual(const HarmonicField& field, const Point& x, double h);

/// (shifted U)(x) = U(x', x_N + lambda), lambda >= 0; harmonic on the
/// original domain with the same sup bound.
HarmonicField shifted_field(const HarmonicField& field, double lambda);

} // namespace lipharm

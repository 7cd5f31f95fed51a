#include "lipharm/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "lipharm/constants.hpp"
#include "lipharm/errors.hpp"
#include "lipharm/rng.hpp"

namespace lipharm {

namespace {

std::shared_ptr<const EpigraphDomain> half_space(int n) {
    return std::make_shared<EpigraphDomain>(
        EpigraphDomain(LipschitzGraph::affine(std::vector<double>(n - 1, 0.0), 0.0)));
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

Point shifted_up(const Point& x, double lambda) {
    std::vector<double> c = x.coords();
    c.back() += lambda;
    return Point(std::move(c));
}

// 16-node Gauss-Legendre rule on [-1, 1].
constexpr int kGl16 = 8;
constexpr double kGl16X[kGl16] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542,
};
constexpr double kGl16W[kGl16] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806,
};

template <class F>
double gl16(const F& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < kGl16; ++i) {
        s += kGl16W[i] * (f(mid - half * kGl16X[i]) + f(mid + half * kGl16X[i]));
    }
    return s * half;
}

// Dyadic panel edges for the half-plane Poisson integral: offsets from x1
// grow geometrically at the kernel scale y, clipped to [-W, W]. Fixed breaks
// at 0 and +-1 keep the built-in data families (jump at 0, slope cap at
// |t| = 1) on panel boundaries, where panelwise Gauss stays spectral.
template <class F>
double poisson_panels(const F& integrand, double x1, double y, double window) {
    std::vector<double> edges{-window, window, x1};
    for (double c : {0.0, -1.0, 1.0}) {
        if (c > -window && c < window) edges.push_back(c);
    }
    for (double off = y; ; off *= 2.0) {
        double lo = x1 - off, hi = x1 + off;
        if (lo > -window) edges.push_back(lo);
        if (hi < window) edges.push_back(hi);
        if (lo <= -window && hi >= window) break;
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i + 1] > edges[i]) total += gl16(integrand, edges[i], edges[i + 1]);
    }
    return total;
}

} // namespace

BoundaryData BoundaryData::constant(double c) {
    if (!std::isfinite(c)) throw std::invalid_argument("boundary data: non-finite constant");
    BoundaryData d;
    d.fn = [c](std::span<const double>) { return c; };
    d.sup_bound = std::abs(c);
    d.holder_constant = 0.0;
    return d;
}

BoundaryData BoundaryData::indicator_first_positive() {
    BoundaryData d;
    d.fn = [](std::span<const double> xp) { return xp[0] > 0.0 ? 1.0 : 0.0; };
    d.sup_bound = 1.0;
    return d;
}

BoundaryData BoundaryData::abs_power(double alpha) {
    if (!(alpha > 0.0) || !(alpha <= 1.0)) {
        throw std::invalid_argument("boundary data: abs-power exponent must lie in (0,1]");
    }
    BoundaryData d;
    d.fn = [alpha](std::span<const double> xp) {
        return std::min(1.0, std::pow(norm2(xp), alpha));
    };
    d.sup_bound = 1.0;
    d.holder_constant = 1.0;
    d.holder_exponent = alpha;
    return d;
}

HarmonicField HarmonicField::custom(std::string kind, int dim, ValueFn value,
                                    GradientFn gradient, double sup_bound,
                                    std::shared_ptr<const EpigraphDomain> domain,
                                    bool stochastic) {
    if (dim < 2) throw std::invalid_argument("field: dimension must be >= 2");
    if (!value) throw std::invalid_argument("field: missing value function");
    if (!(sup_bound >= 0.0) || !std::isfinite(sup_bound)) {
        throw std::invalid_argument("field: sup bound must be finite and >= 0");
    }
    if (domain && domain->dim() != dim) {
        throw std::invalid_argument("field: domain dimension mismatch");
    }
    HarmonicField f;
    f.kind_ = std::move(kind);
    f.dim_ = dim;
    f.value_ = std::move(value);
    f.gradient_ = std::move(gradient);
    f.sup_bound_ = sup_bound;
    f.domain_ = std::move(domain);
    f.stochastic_ = stochastic;
    return f;
}

double HarmonicField::value(const Point& x) const {
    if (x.dim() != dim_) throw std::invalid_argument("field value: dimension mismatch");
    return value_(x);
}

std::vector<double> HarmonicField::analytic_gradient(const Point& x) const {
    if (!gradient_) throw unsupported_error("field has no analytic gradient");
    if (x.dim() != dim_) throw std::invalid_argument("field gradient: dimension mismatch");
    return gradient_(x);
}

HarmonicField make_separable_exp(int n) {
    if (n < 2) throw std::invalid_argument("separable-exp field: dimension must be >= 2");
    auto value = [](const Point& x) {
        return std::exp(-x.vertical()) * std::cos(x[0]);
    };
    auto grad = [n](const Point& x) {
        std::vector<double> g(static_cast<std::size_t>(n), 0.0);
        double e = std::exp(-x.vertical());
        g.front() = -e * std::sin(x[0]);
        g.back() = -e * std::cos(x[0]);
        return g;
    };
    return HarmonicField::custom("separable-exp", n, value, grad, 1.0, half_space(n));
}

HarmonicField make_pole_field(const EpigraphDomain& domain, const Point& pole) {
    int n = domain.dim();
    if (pole.dim() != n) throw std::invalid_argument("pole field: pole dimension mismatch");
    if (!(domain.vertical_gap(pole) < 0.0)) {
        throw std::invalid_argument("pole field: pole must lie strictly below the graph");
    }
    double dist = distance_to_graph(domain, pole);
    auto shared = std::make_shared<EpigraphDomain>(domain);
    std::vector<double> p = pole.coords();
    if (n == 2) {
        // Re(1/(z - p)) for z = x_1 + i x_2; gradient (Re f', -Im f') with
        // f'(z) = -1/(z-p)^2.
        auto value = [p](const Point& x) {
            double dx = x[0] - p[0], dy = x[1] - p[1];
            return dx / (dx * dx + dy * dy);
        };
        auto grad = [p](const Point& x) {
            double dx = x[0] - p[0], dy = x[1] - p[1];
            double r2 = dx * dx + dy * dy;
            double re = -(dx * dx - dy * dy) / (r2 * r2);
            double im = 2.0 * dx * dy / (r2 * r2);
            return std::vector<double>{re, -im};
        };
        return HarmonicField::custom("pole", 2, value, grad, 1.0 / dist, shared);
    }
    auto value = [p, n](const Point& x) {
        double r2 = 0.0;
        for (int i = 0; i < n; ++i) r2 += (x[i] - p[i]) * (x[i] - p[i]);
        return std::pow(r2, 0.5 * (2.0 - n));
    };
    auto grad = [p, n](const Point& x) {
        double r2 = 0.0;
        for (int i = 0; i < n; ++i) r2 += (x[i] - p[i]) * (x[i] - p[i]);
        double scale = (2.0 - n) * std::pow(r2, -0.5 * n);
        std::vector<double> g(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = scale * (x[i] - p[i]);
        return g;
    };
    return HarmonicField::custom("pole", n, value, grad,
                                 std::pow(dist, 2.0 - n), shared);
}

HarmonicField make_pole_field(int n, const Point& pole) {
    if (n < 2) throw std::invalid_argument("pole field: dimension must be >= 2");
    return make_pole_field(
        EpigraphDomain(LipschitzGraph::affine(std::vector<double>(n - 1, 0.0), 0.0)),
        pole);
}

HarmonicField make_harmonic_measure_2d() {
    auto value = [](const Point& x) {
        if (!(x[1] > 0.0)) {
            throw std::domain_error("harmonic measure: evaluation requires x_2 > 0");
        }
        return 1.0 - std::atan2(x[1], x[0]) / std::numbers::pi;
    };
    auto grad = [](const Point& x) {
        if (!(x[1] > 0.0)) {
            throw std::domain_error("harmonic measure: evaluation requires x_2 > 0");
        }
        double r2 = x[0] * x[0] + x[1] * x[1];
        return std::vector<double>{x[1] / (std::numbers::pi * r2),
                                   -x[0] / (std::numbers::pi * r2)};
    };
    return HarmonicField::custom("harmonic-measure", 2, value, grad, 1.0, half_space(2));
}

double poisson_tail_bound(const PoissonRule& rule, const Point& x) {
    if (x.dim() != 2) throw std::invalid_argument("poisson tail: dimension must be 2");
    double y = x.vertical();
    if (!(y > 0.0)) throw std::domain_error("poisson tail: requires x_2 > 0");
    return 1.0 - (std::atan((rule.window - x[0]) / y) +
                  std::atan((rule.window + x[0]) / y)) /
                     std::numbers::pi;
}

HarmonicField make_poisson_extension(BoundaryData data, const PoissonRule& rule) {
    if (!data.fn) throw std::invalid_argument("poisson extension: missing data");
    if (!(rule.window > 0.0) || !std::isfinite(rule.window)) {
        throw std::invalid_argument("poisson extension: window must be positive");
    }
    if (!(rule.min_height > 0.0)) {
        throw std::invalid_argument("poisson extension: min_height must be positive");
    }
    if (rule.nodes_per_panel != 16) {
        throw unsupported_error("poisson extension: only the 16-node panel rule is built in");
    }
    double c2 = poisson_constant(2);
    double sup = data.sup_bound;
    auto fn = data.fn;
    auto guard = [rule](const Point& x) {
        if (x.dim() != 2) throw std::invalid_argument("poisson extension: dimension must be 2");
        if (!(x.vertical() > 0.0)) {
            throw std::domain_error("poisson extension: requires x_2 > 0");
        }
        if (x.vertical() < rule.min_height) {
            throw accuracy_error(
                "poisson extension: evaluation height below the quadrature resolution "
                "(min_height)");
        }
        if (std::abs(x[0]) > 0.5 * rule.window) {
            throw accuracy_error(
                "poisson extension: evaluation point too close to the window edge for "
                "the tail bound");
        }
    };
    auto value = [fn, c2, rule, guard](const Point& x) {
        guard(x);
        double x1 = x[0], y = x.vertical();
        auto integrand = [&](double t) {
            double dt = x1 - t;
            return c2 * y / (dt * dt + y * y) * fn(std::span<const double>(&t, 1));
        };
        return poisson_panels(integrand, x1, y, rule.window);
    };
    auto grad = [fn, c2, rule, guard](const Point& x) {
        guard(x);
        double x1 = x[0], y = x.vertical();
        auto d1 = [&](double t) {
            double dt = x1 - t;
            double den = dt * dt + y * y;
            return -2.0 * c2 * y * dt / (den * den) * fn(std::span<const double>(&t, 1));
        };
        auto d2 = [&](double t) {
            double dt = x1 - t;
            double den = dt * dt + y * y;
            return c2 * (dt * dt - y * y) / (den * den) * fn(std::span<const double>(&t, 1));
        };
        return std::vector<double>{poisson_panels(d1, x1, y, rule.window),
                                   poisson_panels(d2, x1, y, rule.window)};
    };
    return HarmonicField::custom("poisson-quadrature", 2, value, grad, sup,
                                 half_space(2));
}

WosEstimate wos_evaluate(const EpigraphDomain& domain, const BoundaryData& data,
                         const Point& x, const WosParams& params) {
    if (params.n_walks < 1) throw std::invalid_argument("wos: n_walks must be >= 1");
    if (!(params.epsilon > 0.0)) throw std::invalid_argument("wos: epsilon must be > 0");
    if (params.max_steps < 1) throw std::invalid_argument("wos: max_steps must be >= 1");
    if (!data.fn) throw std::invalid_argument("wos: missing boundary data");
    if (!(domain.vertical_gap(x) > 0.0)) {
        throw std::domain_error("wos: start point not interior");
    }

    const int n = domain.dim();
    const double cone_cos = domain.graph().cone_cos();
    const double far_cutoff = params.far_cutoff > 0.0
                                  ? params.far_cutoff
                                  : 1e3 * std::max(x.vertical(), 1.0);
    const std::size_t n_walks = params.n_walks;

    enum : std::uint8_t { kAbsorbed = 0, kTruncated = 1, kMaxed = 2 };
    std::vector<double> values(n_walks);
    std::vector<std::uint8_t> ends(n_walks);

    auto run_range = [&](std::size_t lo, std::size_t hi) {
        std::vector<double> z(static_cast<std::size_t>(n));
        for (std::size_t w = lo; w < hi; ++w) {
            auto g = derive_stream(params.seed, w);
            z = x.coords();
            std::uint8_t end = kMaxed;
            double value = params.far_value;
            for (std::size_t step = 0; step < params.max_steps; ++step) {
                std::span<const double> zp(z.data(), z.size() - 1);
                double bound = (z.back() - domain.graph()(zp)) * cone_cos;
                if (bound < params.epsilon) {
                    value = data.fn(zp);
                    end = kAbsorbed;
                    break;
                }
                if (z.back() > far_cutoff) {
                    end = kTruncated;
                    break;
                }
                auto dir = unit_vector(g, n);
                for (int i = 0; i < n; ++i) {
                    z[static_cast<std::size_t>(i)] += bound * dir[static_cast<std::size_t>(i)];
                }
            }
            values[w] = value;
            ends[w] = end;
        }
    };

    int workers = params.workers > 0
                      ? params.workers
                      : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(workers), n_walks));
    if (workers <= 1) {
        run_range(0, n_walks);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        std::size_t chunk = (n_walks + static_cast<std::size_t>(workers) - 1) /
                            static_cast<std::size_t>(workers);
        for (int t = 0; t < workers; ++t) {
            std::size_t lo = static_cast<std::size_t>(t) * chunk;
            std::size_t hi = std::min(n_walks, lo + chunk);
            pool.emplace_back([&, t, lo, hi] {
                try {
                    run_range(lo, hi);
                } catch (...) {
                    errors[static_cast<std::size_t>(t)] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    // Index-ordered two-pass reduction: identical output for any worker count.
    double sum = 0.0;
    std::size_t truncated = 0, maxed = 0;
    for (std::size_t w = 0; w < n_walks; ++w) {
        sum += values[w];
        truncated += ends[w] == kTruncated;
        maxed += ends[w] == kMaxed;
    }
    WosEstimate est;
    est.n_walks = n_walks;
    est.epsilon = params.epsilon;
    est.mean = sum / static_cast<double>(n_walks);
    if (n_walks > 1) {
        double ss = 0.0;
        for (std::size_t w = 0; w < n_walks; ++w) {
            double d = values[w] - est.mean;
            ss += d * d;
        }
        est.std_error = std::sqrt(ss / static_cast<double>(n_walks - 1)) /
                        std::sqrt(static_cast<double>(n_walks));
    }
    est.truncated_fraction =
        static_cast<double>(truncated) / static_cast<double>(n_walks);
    est.maxed_fraction = static_cast<double>(maxed) / static_cast<double>(n_walks);
    est.truncation_warning = est.truncated_fraction > 0.5;
    return est;
}

HarmonicField make_wos_field(std::shared_ptr<const EpigraphDomain> domain,
                             BoundaryData data, const WosParams& params) {
    if (!domain) throw std::invalid_argument("wos field: missing domain");
    int n = domain->dim();
    double sup = std::max(data.sup_bound, std::abs(params.far_value));
    auto value = [domain, data, params](const Point& x) {
        return wos_evaluate(*domain, data, x, params).mean;
    };
    return HarmonicField::custom("wos", n, value, nullptr, sup, domain, true);
}

BoundaryData boundary_trace(const HarmonicField& field,
                            const EpigraphDomain& domain) {
    if (field.dim() != domain.dim()) {
        throw std::invalid_argument("boundary trace: dimension mismatch");
    }
    LipschitzGraph graph = domain.graph();
    HarmonicField f = field;
    BoundaryData d;
    d.fn = [f, graph](std::span<const double> xp) {
        return f.value(Point::over(xp, graph(xp)));
    };
    d.sup_bound = field.sup_bound();
    return d;
}

std::vector<double> gradient(const HarmonicField& field, const Point& x,
                             const StepPolicy& policy) {
    if (field.stochastic()) {
        throw unsupported_error("gradient: stochastic fields are not differentiable here");
    }
    if (x.dim() != field.dim()) throw std::invalid_argument("gradient: dimension mismatch");
    if (field.has_analytic_gradient()) return field.analytic_gradient(x);
    if (!(policy.delta > 0.0) || !(policy.h_max > 0.0)) {
        throw std::invalid_argument("gradient: step policy must be positive");
    }
    double h = policy.h_max;
    if (field.domain()) {
        double d = distance_exact(*field.domain(), x).value;
        h = std::min(policy.delta * d, policy.h_max);
    }
    const int n = x.dim();
    std::vector<double> g(static_cast<std::size_t>(n));
    Point plus = x, minus = x;
    for (int i = 0; i < n; ++i) {
        plus[i] = x[i] + h;
        minus[i] = x[i] - h;
        g[static_cast<std::size_t>(i)] =
            (field.value(plus) - field.value(minus)) / (2.0 * h);
        plus[i] = x[i];
        minus[i] = x[i];
    }
    return g;
}

double directional_derivative(const HarmonicField& field, const Point& x,
                              std::span<const double> direction,
                              const StepPolicy& policy) {
    if (static_cast<int>(direction.size()) != field.dim()) {
        throw std::invalid_argument("directional derivative: dimension mismatch");
    }
    double len = norm2(direction);
    if (!(len > 0.0)) {
        throw std::invalid_argument("directional derivative: zero direction");
    }
    auto g = gradient(field, x, policy);
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * direction[i] / len;
    return s;
}

double laplacian_residual(const HarmonicField& field, const Point& x, double h) {
    if (field.stochastic()) {
        throw unsupported_error("laplacian residual: stochastic fields unsupported");
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("laplacian residual: step must be positive");
    }
    if (x.dim() != field.dim()) {
        throw std::invalid_argument("laplacian residual: dimension mismatch");
    }
    const int n = x.dim();
    if (field.domain()) {
        double d = distance_exact(*field.domain(), x).value;
        if (d < h * std::sqrt(static_cast<double>(n))) {
            throw std::domain_error("laplacian residual: stencil ball leaves the domain");
        }
    }
    double center = field.value(x);
    double acc = 0.0;
    Point plus = x, minus = x;
    for (int i = 0; i < n; ++i) {
        plus[i] = x[i] + h;
        minus[i] = x[i] - h;
        acc += field.value(plus) - 2.0 * center + field.value(minus);
        plus[i] = x[i];
        minus[i] = x[i];
    }
    return acc / (h * h);
}

HarmonicField shifted_field(const HarmonicField& field, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("shifted field: lambda must be finite and >= 0");
    }
    HarmonicField base = field;
    auto value = [base, lambda](const Point& x) {
        return base.value(shifted_up(x, lambda));
    };
    HarmonicField::GradientFn grad;
    if (base.has_analytic_gradient()) {
        grad = [base, lambda](const Point& x) {
            return base.analytic_gradient(shifted_up(x, lambda));
        };
    }
    return HarmonicField::custom(field.kind(), field.dim(), value, grad,
                                 field.sup_bound(), field.domain(),
                                 field.stochastic());
}

} // namespace lipharm

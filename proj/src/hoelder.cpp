#include "lipharm/hoelder.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lipharm/errors.hpp"

namespace lipharm {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("seminorm: alpha must lie in (0,1)");
    }
}

double euclidean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace

std::string to_string(SeminormMode m) {
    switch (m) {
        case SeminormMode::Vertical: return "vertical";
        case SeminormMode::Global: return "global";
        case SeminormMode::Local: return "local";
    }
    return "?";
}

SeminormEstimate seminorm_over_pairs(
    const HarmonicField& field, double alpha,
    const std::vector<std::pair<Point, Point>>& pairs, SeminormMode mode) {
    require_alpha(alpha);
    if (pairs.empty()) throw std::invalid_argument("seminorm: empty sample set");

    SeminormEstimate est;
    est.mode = mode;
    est.alpha = alpha;
    est.n_samples = pairs.size();
    est.witness_x = pairs.front().first;
    est.witness_y = pairs.front().second;
    for (const auto& [x, y] : pairs) {
        double sep = distance(x, y);
        if (sep == 0.0) continue;
        double q = std::abs(field.value(x) - field.value(y)) / std::pow(sep, alpha);
        if (q > est.value) {
            est.value = q;
            est.witness_x = x;
            est.witness_y = y;
        }
    }
    return est;
}

SeminormEstimate vertical_seminorm(const HarmonicField& field,
                                   const EpigraphDomain& domain, double alpha,
                                   const VerticalSampler& sampler) {
    return seminorm_over_pairs(field, alpha, vertical_pairs(domain, sampler),
                               SeminormMode::Vertical);
}

SeminormEstimate global_seminorm(const HarmonicField& field,
                                 const EpigraphDomain& domain, double alpha,
                                 const PairSampler& sampler) {
    return seminorm_over_pairs(field, alpha, sample_pairs(domain, sampler),
                               SeminormMode::Global);
}

SeminormEstimate local_seminorm(const HarmonicField& field,
                                const EpigraphDomain& domain, double alpha,
                                const PairSampler& sampler) {
    require_alpha(alpha);
    auto pairs = sample_pairs(domain, sampler);
    std::vector<std::pair<Point, Point>> local;
    local.reserve(pairs.size());
    for (auto& pr : pairs) {
        if (distance(pr.first, pr.second) <
            0.5 * distance_exact(domain, pr.first).value) {
            local.push_back(std::move(pr));
        }
    }
    if (local.empty()) {
        SeminormEstimate est;
        est.mode = SeminormMode::Local;
        est.alpha = alpha;
        return est;
    }
    return seminorm_over_pairs(field, alpha, local, SeminormMode::Local);
}

double weighted_vertical_derivative_sup(const HarmonicField& field,
                                        const EpigraphDomain& domain,
                                        double alpha, double lambda,
                                        const InteriorSampler& sampler) {
    require_alpha(alpha);
    if (field.stochastic()) {
        throw unsupported_error("weighted derivative sup: stochastic fields unsupported");
    }
    HarmonicField shifted = shifted_field(field, lambda);
    double sup = 0.0;
    for (const Point& x : sample_interior(domain, sampler)) {
        double d = distance_exact(domain, x).value;
        auto g = gradient(shifted, x);
        sup = std::max(sup, std::pow(d, 1.0 - alpha) * std::abs(g.back()));
    }
    return sup;
}

double weighted_gradient_sup(const HarmonicField& field,
                             const EpigraphDomain& domain, double alpha,
                             const InteriorSampler& sampler) {
    require_alpha(alpha);
    if (field.stochastic()) {
        throw unsupported_error("weighted gradient sup: stochastic fields unsupported");
    }
    double sup = 0.0;
    for (const Point& x : sample_interior(domain, sampler)) {
        double d = distance_exact(domain, x).value;
        auto g = gradient(field, x);
        sup = std::max(sup, std::pow(d, 1.0 - alpha) * euclidean(g));
    }
    return sup;
}

TheoremSamplers TheoremSamplers::standard(int dim) {
    SampleBox box = SampleBox::standard(dim);
    TheoremSamplers s;
    s.vertical.box = box;
    s.interior.box = box;
    s.pairs.box = box;
    return s;
}

TheoremReport theorem_check(const HarmonicField& field,
                            const EpigraphDomain& domain, double alpha,
                            const TheoremSamplers& samplers, double tol,
                            double inflation) {
    require_alpha(alpha);
    if (!(tol >= 0.0)) throw std::invalid_argument("theorem check: tol must be >= 0");
    if (!(inflation >= 1.0)) {
        throw std::invalid_argument("theorem check: inflation factor must be >= 1");
    }

    TheoremReport rep;
    rep.alpha = alpha;
    rep.tol = tol;
    rep.inflation = inflation;

    rep.vertical_estimate = vertical_seminorm(field, domain, alpha, samplers.vertical);
    rep.c_vertical_hat = rep.vertical_estimate.value;

    double lip = domain.graph().lip_bound();
    rep.bundle = derive_constants(domain.dim(), alpha, lip,
                                  inflation * rep.c_vertical_hat);
    rep.bundle_raw = derive_constants(domain.dim(), alpha, lip, rep.c_vertical_hat);
    rep.paper_factor_smaller = rep.bundle.c1_paper < rep.bundle.c1 ||
                               7.0 * rep.bundle.k_n < 2.0 / rep.bundle.gamma_star;

    rep.weighted_vertical =
        weighted_vertical_derivative_sup(field, domain, alpha, 0.0, samplers.interior);
    rep.weighted_gradient = weighted_gradient_sup(field, domain, alpha, samplers.interior);
    rep.global_estimate = global_seminorm(field, domain, alpha, samplers.pairs);

    auto check = [tol](std::string name, double measured, double predicted) {
        InequalityCheck c;
        c.name = std::move(name);
        c.measured = measured;
        c.predicted = predicted;
        c.margin = measured > 0.0 ? predicted / measured
                                  : std::numeric_limits<double>::infinity();
        c.pass = measured <= predicted * (1.0 + tol);
        return c;
    };
    rep.checks.push_back(check("weighted_vertical_derivative_vs_c1",
                               rep.weighted_vertical, rep.bundle.c1));
    rep.checks.push_back(check("weighted_gradient_vs_c2", rep.weighted_gradient,
                               rep.bundle.c2));
    rep.checks.push_back(check("global_seminorm_vs_c3", rep.global_estimate.value,
                               rep.bundle.c3));
    rep.all_pass = true;
    for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
    return rep;
}

} // namespace lipharm

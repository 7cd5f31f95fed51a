#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lipharm/constants.hpp"
#include "lipharm/geometry.hpp"
#include "lipharm/harmonic.hpp"
#include "lipharm/sampling.hpp"

namespace lipharm {

enum class SeminormMode { Vertical, Global, Local };

std::string to_string(SeminormMode m);

/// Sampled supremum of |U(x)-U(y)| / |x-y|^alpha with its arg-max pair.
/// A lower bound of the true seminorm; re-evaluating the witness pair
/// reproduces value exactly.
struct SeminormEstimate {
    SeminormMode mode = SeminormMode::Global;
    double value = 0.0;
    Point witness_x;
    Point witness_y;
    std::size_t n_samples = 0;
    double alpha = 0.0;
};

/// Sup of the quotient over an explicit pair list. All seminorm ops reduce
/// to this, so subset relations between sample sets carry over to the
/// estimates.
SeminormEstimate seminorm_over_pairs(
    const HarmonicField& field, double alpha,
    const std::vector<std::pair<Point, Point>>& pairs, SeminormMode mode);

/// Quotients over vertical pairs only: the hypothesis constant C-hat.
SeminormEstimate vertical_seminorm(const HarmonicField& field,
                                   const EpigraphDomain& domain, double alpha,
                                   const VerticalSampler& sampler);

SeminormEstimate global_seminorm(const HarmonicField& field,
                                 const EpigraphDomain& domain, double alpha,
                                 const PairSampler& sampler);

/// Same pair stream as global_seminorm, filtered to |x-y| < d(x,dE)/2;
/// hence local <= global for equal sampler settings.
SeminormEstimate local_seminorm(const HarmonicField& field,
                                const EpigraphDomain& domain, double alpha,
                                const PairSampler& sampler);

/// sup over samples of d(x,dE)^(1-alpha) |d_N U_lambda(x)|, the quantity
/// whose lambda-uniform bound (2/gamma_star) C drives the first part of
/// the estimate chain.
double weighted_vertical_derivative_sup(const HarmonicField& field,
                                        const EpigraphDomain& domain,
                                        double alpha, double lambda,
                                        const InteriorSampler& sampler);

/// sup over samples of d(x,dE)^(1-alpha) |grad U(x)|.
double weighted_gradient_sup(const HarmonicField& field,
                             const EpigraphDomain& domain, double alpha,
                             const InteriorSampler& sampler);

struct TheoremSamplers {
    VerticalSampler vertical;
    InteriorSampler interior;
    PairSampler pairs;

    static TheoremSamplers standard(int dim);
};

struct InequalityCheck {
    std::string name;
    double measured = 0.0;
    double predicted = 0.0;
    double margin = 0.0; // predicted / measured; inf when measured = 0
    bool pass = false;
};

/// Full verification run: measured hypothesis constant in, the three
/// derived inequalities out.
struct TheoremReport {
    double alpha = 0.0;
    double tol = 0.0;
    double inflation = 0.0;

    SeminormEstimate vertical_estimate; // c_vertical_hat = its value
    double c_vertical_hat = 0.0;
    ConstantBundle bundle;     // derived from the inflated C-hat
    ConstantBundle bundle_raw; // derived from the raw C-hat, for reference

    double weighted_vertical = 0.0; // sup d^(1-a) |d_N U|
    double weighted_gradient = 0.0; // sup d^(1-a) |grad U|
    SeminormEstimate global_estimate;

    std::vector<InequalityCheck> checks; // vertical<=c1, gradient<=c2, global<=c3
    bool all_pass = false;

    // True when the alternative 7 K_N vertical factor lands below the
    // 2/gamma_star factor the chain actually needs (it does, for every
    // dim >= 2); recorded so reports surface the gap.
    bool paper_factor_smaller = false;
};

/// Measures C-hat by vertical_seminorm, inflates it (sampled sups are lower
/// bounds), derives the bundle and checks
///   sup d^(1-a)|d_N U| <= c1,  sup d^(1-a)|grad U| <= c2,
///   global seminorm <= c3,
/// each up to (1 + tol). Inequality failure is reported, not thrown.
TheoremReport theorem_check(const HarmonicField& field,
                            const EpigraphDomain& domain, double alpha,
                            const TheoremSamplers& samplers, double tol = 1e-9,
                            double inflation = 1.2);

} // namespace lipharm

#pragma once

#include <cstdint>
#include <vector>

#include "lipharm/geometry.hpp"
#include "lipharm/harmonic.hpp"
#include "lipharm/sampling.hpp"

namespace lipharm {

struct Polyline {
    std::vector<Point> vertices;
    std::vector<double> segment_lengths; // one per edge

    static Polyline through(std::vector<Point> vertices);
    double total_length() const;
    std::size_t n_segments() const { return segment_lengths.size(); }
};

struct CurveIntegralResult {
    double value = 0.0;      // integral of d(z,dE)^(alpha-1) |dz|
    double quad_error = 0.0; // quadrature + endpoint-tail error estimate
    std::size_t n_nodes = 0;
};

struct CurveQuadrature {
    // Dyadic grading from each segment end (ratio 1/2) down to this
    // fraction of the segment length; the remaining stub at a
    // near-boundary end of a vertical segment is bracketed analytically
    // via the cone bound.
    double grade_floor = 1e-12;
    double panel_rel_tol = 1e-12; // bisect a panel above this share of the total
    int max_bisections = 12;
};

/// Weighted length of the polyline inside the domain. The integrand blows
/// up (integrably) where a vertex nears the boundary; a quadrature sample
/// on or below the boundary at an interior segment point is a
/// nonintegrable_error.
CurveIntegralResult weighted_length(const Polyline& curve,
                                    const EpigraphDomain& domain, double alpha,
                                    const CurveQuadrature& quad = {});

/// Three-segment lift-across-descend curve x -> x_up -> y_up -> y with
/// common lifted height max(x_N, y_N) + (1+L)|x-y|, so the lower lift is
/// exactly (1+L)|x-y|. The middle segment keeps boundary clearance
/// >= |x-y|; that is verified per curve (accuracy_error on failure) since
/// it is the geometric crux of the construction. x = y degenerates to a
/// single-vertex polyline.
Polyline cigar_curve(const EpigraphDomain& domain, const Point& x, const Point& y);

struct DecadeRatio {
    double sep_lo = 0.0;
    double sep_hi = 0.0;
    std::size_t n = 0;
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
};

struct GehringMartioRecord {
    double alpha = 0.0;
    std::size_t n_pairs = 0;
    double max_ratio = 0.0;
    Point witness_x;
    Point witness_y;
    std::vector<DecadeRatio> decades;
};

/// Samples pair shapes and replays each one scaled across six separation
/// decades [1e-5, 10], computing weighted_length(cigar) / |x-y|^alpha.
/// Identical shapes across decades make the per-decade maxima agree
/// exactly on scale-invariant domains. A fixed slate of near-boundary
/// straddle shapes is always included, so the max is not left to luck.
GehringMartioRecord gehring_martio_check(const EpigraphDomain& domain,
                                         double alpha, std::size_t n_pairs,
                                         std::uint64_t seed);

struct GradientHoelderRecord {
    bool hypothesis_ok = false;   // |grad f| <= c_f d^(alpha-1) at samples
    double hypothesis_max = 0.0;  // sup of |grad f| d^(1-alpha) / c_f
    Point hypothesis_witness;
    bool pass = false;            // |f(x)-f(y)| <= c_d c_f |x-y|^alpha
    double worst_ratio = 0.0;     // sup of lhs / (c_d c_f |x-y|^alpha)
    Point witness_x;
    Point witness_y;
    std::size_t n_pairs = 0;
};

/// Checks the gradient hypothesis at the pair points first; when it holds,
/// checks the Hoelder conclusion over the pairs. Hypothesis failure is
/// recorded, not thrown.
GradientHoelderRecord gradient_to_hoelder_check(const HarmonicField& field,
                                                const EpigraphDomain& domain,
                                                double alpha, double c_f,
                                                double c_d,
                                                const PairSampler& sampler,
                                                double tol = 1e-9);

} // namespace lipharm

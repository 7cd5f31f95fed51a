#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lipharm/geometry.hpp"

namespace lipharm {

/// Sampling region over a domain: horizontal box times a height band above
/// the graph. Heights are drawn log-uniformly in [height_lo, height_hi];
/// the boundary blow-up d^(alpha-1) lives at small heights, so linear
/// spacing would never see it.
struct SampleBox {
    Box horizontal;
    double height_lo = 1e-6;
    double height_hi = 10.0;

    // [-10,10]^(dim-1) x (1e-6, 10].
    static SampleBox standard(int dim);
    void validate() const;
};

/// Deterministic grid for the vertical-pair seminorm: base points at x' = 0
/// and +-(log-spaced magnitudes in [xp_floor, box edge]) along the first
/// axis, all unordered pairs from a log-spaced height grid. Height gaps
/// then span from grid spacing times height_lo up to the full band, well
/// over four orders of magnitude.
struct VerticalSampler {
    SampleBox box;
    int n_magnitudes = 24; // per sign, log-spaced
    // Dense enough that the quotient maximizer of a smooth field (the
    // separable-exp one peaks near height 1.26) is hit to ~3 digits.
    int n_heights = 160;
    double xp_floor = 1e-5;

    void validate() const;
};

/// Random interior points: half uniform in the box, half with log-uniform
/// horizontal magnitude in [xp_floor, box edge] to probe every scale of
/// the corner at x' = 0. Heights log-uniform in the band.
struct InteriorSampler {
    SampleBox box;
    std::size_t n_points = 10000;
    std::uint64_t seed = 101;
    double xp_floor = 1e-5;

    void validate() const;
};

/// Random pairs: first point as in InteriorSampler, second displaced by a
/// log-uniform separation in [sep_lo, sep_hi] along a random direction
/// (redrawn, finally vertical, if the displaced point leaves the domain).
struct PairSampler {
    SampleBox box;
    std::size_t n_pairs = 10000;
    std::uint64_t seed = 202;
    double xp_floor = 1e-5;
    double sep_lo = 1e-4;
    double sep_hi = 10.0;

    void validate() const;
};

std::vector<Point> sample_interior(const EpigraphDomain& domain,
                                   const InteriorSampler& sampler);

std::vector<std::pair<Point, Point>> sample_pairs(const EpigraphDomain& domain,
                                                  const PairSampler& sampler);

/// Pairs differing only in the last coordinate, from the deterministic grid.
std::vector<std::pair<Point, Point>> vertical_pairs(const EpigraphDomain& domain,
                                                    const VerticalSampler& sampler);

} // namespace lipharm

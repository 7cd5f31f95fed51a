#include "lipharm/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lipharm/errors.hpp"
#include "lipharm/rng.hpp"

namespace lipharm {

namespace {

// Stream roles, so samplers sharing a master seed stay uncorrelated.
constexpr std::uint64_t kRoleInterior = 0x696e7400;
constexpr std::uint64_t kRolePairs = 0x70616900;

// Largest horizontal magnitude that fits the box along every axis.
double box_edge(const Box& box) {
    double edge = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < box.lo.size(); ++i) {
        edge = std::min(edge, std::max(-box.lo[i], box.hi[i]));
    }
    return edge;
}

// Half the points uniform in the box, half at log-uniform magnitude along
// a random direction: the corner scales near x' = 0 matter as much as the
// bulk.
std::vector<double> draw_horizontal(std::mt19937_64& g, const Box& box,
                                    double xp_floor, bool log_branch) {
    int d = box.dim();
    std::vector<double> xp(static_cast<std::size_t>(d));
    if (!log_branch) {
        for (int i = 0; i < d; ++i) {
            xp[static_cast<std::size_t>(i)] = uniform_in(g, box.lo[i], box.hi[i]);
        }
        return xp;
    }
    double m = log_uniform_in(g, xp_floor, box_edge(box));
    auto u = unit_vector(g, d);
    for (int i = 0; i < d; ++i) {
        xp[static_cast<std::size_t>(i)] =
            std::clamp(m * u[static_cast<std::size_t>(i)], box.lo[i], box.hi[i]);
    }
    return xp;
}

} // namespace

SampleBox SampleBox::standard(int dim) {
    if (dim < 2) throw std::invalid_argument("sample box: dimension must be >= 2");
    SampleBox b;
    b.horizontal.lo.assign(static_cast<std::size_t>(dim - 1), -10.0);
    b.horizontal.hi.assign(static_cast<std::size_t>(dim - 1), 10.0);
    return b;
}

void SampleBox::validate() const {
    horizontal.validate();
    if (!(height_lo > 0.0) || !(height_lo < height_hi) || !std::isfinite(height_hi)) {
        throw std::invalid_argument("sample box: need 0 < height_lo < height_hi < inf");
    }
}

void VerticalSampler::validate() const {
    box.validate();
    if (n_magnitudes < 1 || n_heights < 2) {
        throw std::invalid_argument("vertical sampler: need >= 1 magnitude and >= 2 heights");
    }
    if (!(xp_floor > 0.0) || !(xp_floor <= box_edge(box.horizontal))) {
        throw std::invalid_argument("vertical sampler: xp_floor outside (0, box edge]");
    }
}

void InteriorSampler::validate() const {
    box.validate();
    if (n_points < 1) throw std::invalid_argument("interior sampler: n_points must be >= 1");
    if (!(xp_floor > 0.0) || !(xp_floor <= box_edge(box.horizontal))) {
        throw std::invalid_argument("interior sampler: xp_floor outside (0, box edge]");
    }
}

void PairSampler::validate() const {
    box.validate();
    if (n_pairs < 1) throw std::invalid_argument("pair sampler: n_pairs must be >= 1");
    if (!(xp_floor > 0.0) || !(xp_floor <= box_edge(box.horizontal))) {
        throw std::invalid_argument("pair sampler: xp_floor outside (0, box edge]");
    }
    if (!(sep_lo > 0.0) || !(sep_lo < sep_hi) || !std::isfinite(sep_hi)) {
        throw std::invalid_argument("pair sampler: need 0 < sep_lo < sep_hi < inf");
    }
}

std::vector<Point> sample_interior(const EpigraphDomain& domain,
                                   const InteriorSampler& sampler) {
    sampler.validate();
    if (domain.dim() - 1 != sampler.box.horizontal.dim()) {
        throw std::invalid_argument("interior sampler: box dimension mismatch");
    }
    std::vector<Point> points;
    points.reserve(sampler.n_points);
    std::uint64_t seed = mix_seed(sampler.seed, kRoleInterior);
    for (std::size_t k = 0; k < sampler.n_points; ++k) {
        auto g = derive_stream(seed, k);
        auto xp = draw_horizontal(g, sampler.box.horizontal, sampler.xp_floor,
                                  k % 2 == 1);
        double h = log_uniform_in(g, sampler.box.height_lo, sampler.box.height_hi);
        points.push_back(domain.lift(xp, h));
    }
    return points;
}

std::vector<std::pair<Point, Point>> sample_pairs(const EpigraphDomain& domain,
                                                  const PairSampler& sampler) {
    sampler.validate();
    if (domain.dim() - 1 != sampler.box.horizontal.dim()) {
        throw std::invalid_argument("pair sampler: box dimension mismatch");
    }
    const int n = domain.dim();
    std::vector<std::pair<Point, Point>> pairs;
    pairs.reserve(sampler.n_pairs);
    std::uint64_t seed = mix_seed(sampler.seed, kRolePairs);
    for (std::size_t k = 0; k < sampler.n_pairs; ++k) {
        auto g = derive_stream(seed, k);
        auto xp = draw_horizontal(g, sampler.box.horizontal, sampler.xp_floor,
                                  k % 2 == 1);
        double h = log_uniform_in(g, sampler.box.height_lo, sampler.box.height_hi);
        Point x = domain.lift(xp, h);
        double sep = log_uniform_in(g, sampler.sep_lo, sampler.sep_hi);

        // Redraw directions that would leave the domain (or a tabulated
        // extent); straight up always stays inside an epigraph.
        std::vector<double> yc(static_cast<std::size_t>(n));
        bool ok = false;
        for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
            auto dir = unit_vector(g, n);
            for (int i = 0; i < n; ++i) {
                yc[static_cast<std::size_t>(i)] = x[i] + sep * dir[static_cast<std::size_t>(i)];
            }
            try {
                ok = domain.vertical_gap(Point(yc)) > 0.0;
            } catch (const extent_error&) {
                ok = false;
            }
        }
        if (!ok) {
            yc = x.coords();
            yc.back() += sep;
        }
        pairs.emplace_back(std::move(x), Point(yc));
    }
    return pairs;
}

std::vector<std::pair<Point, Point>> vertical_pairs(const EpigraphDomain& domain,
                                                    const VerticalSampler& sampler) {
    sampler.validate();
    const int d = domain.dim() - 1;
    if (d != sampler.box.horizontal.dim()) {
        throw std::invalid_argument("vertical sampler: box dimension mismatch");
    }

    // Base parameters: origin plus +-(log-spaced magnitudes) on the first
    // axis, from xp_floor out to the box edge.
    double edge = box_edge(sampler.box.horizontal);
    std::vector<double> bases{0.0};
    for (int i = 0; i < sampler.n_magnitudes; ++i) {
        double t = sampler.n_magnitudes == 1
                       ? 1.0
                       : static_cast<double>(i) /
                             static_cast<double>(sampler.n_magnitudes - 1);
        double m = sampler.xp_floor *
                   std::pow(edge / sampler.xp_floor, t);
        bases.push_back(m);
        bases.push_back(-m);
    }

    std::vector<double> heights(static_cast<std::size_t>(sampler.n_heights));
    for (int i = 0; i < sampler.n_heights; ++i) {
        double t = static_cast<double>(i) /
                   static_cast<double>(sampler.n_heights - 1);
        heights[static_cast<std::size_t>(i)] =
            sampler.box.height_lo *
            std::pow(sampler.box.height_hi / sampler.box.height_lo, t);
    }

    std::vector<std::pair<Point, Point>> pairs;
    pairs.reserve(bases.size() * heights.size() * (heights.size() - 1) / 2);
    std::vector<double> xp(static_cast<std::size_t>(d), 0.0);
    for (double base : bases) {
        xp[0] = base;
        std::vector<Point> column;
        column.reserve(heights.size());
        for (double h : heights) column.push_back(domain.lift(xp, h));
        for (std::size_t i = 0; i < column.size(); ++i) {
            for (std::size_t j = i + 1; j < column.size(); ++j) {
                pairs.emplace_back(column[i], column[j]);
            }
        }
    }
    return pairs;
}

} // namespace lipharm

#include "lipharm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lipharm/errors.hpp"
#include "lipharm/rng.hpp"

namespace lipharm {

namespace {

void require_finite(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
        }
    }
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Distance in the (t, y) plane from q to the segment [a, b].
double point_segment_distance(double qx, double qy, double ax, double ay,
                              double bx, double by) {
    double dx = bx - ax, dy = by - ay;
    double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) {
        t = ((qx - ax) * dx + (qy - ay) * dy) / len2;
        t = std::clamp(t, 0.0, 1.0);
    }
    double px = ax + t * dx, py = ay + t * dy;
    return std::hypot(qx - px, qy - py);
}

// Distance from q to the ray {a + t*dir : t >= 0}.
double point_ray_distance(double qx, double qy, double ax, double ay,
                          double dirx, double diry) {
    double len2 = dirx * dirx + diry * diry;
    double t = ((qx - ax) * dirx + (qy - ay) * diry) / len2;
    t = std::max(t, 0.0);
    double px = ax + t * dirx, py = ay + t * diry;
    return std::hypot(qx - px, qy - py);
}

} // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) {
        throw std::invalid_argument("Point: dimension must be >= 2");
    }
    require_finite(coords_, "Point");
}

Point::Point(std::initializer_list<double> coords)
    : Point(std::vector<double>(coords)) {}

Point Point::over(std::span<const double> xp, double xn) {
    std::vector<double> c(xp.begin(), xp.end());
    c.push_back(xn);
    return Point(std::move(c));
}

double distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("distance: dimension mismatch");
    }
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

void Box::validate() const {
    if (lo.empty() || lo.size() != hi.size()) {
        throw std::invalid_argument("Box: lo/hi must be non-empty and congruent");
    }
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]) || !(lo[i] < hi[i])) {
            throw std::invalid_argument("Box: degenerate or unbounded extent");
        }
    }
}

std::string to_string(GraphKind k) {
    switch (k) {
        case GraphKind::Affine: return "affine";
        case GraphKind::AbsCone: return "abs-cone";
        case GraphKind::PiecewiseLinear: return "piecewise-linear";
        case GraphKind::Tabulated: return "tabulated";
    }
    return "?";
}

LipschitzGraph LipschitzGraph::affine(std::vector<double> slope, double offset) {
    if (slope.empty()) throw std::invalid_argument("affine graph: empty slope");
    require_finite(slope, "affine graph");
    if (!std::isfinite(offset)) throw std::invalid_argument("affine graph: offset");
    LipschitzGraph g;
    g.kind_ = GraphKind::Affine;
    g.dim_minus_one_ = static_cast<int>(slope.size());
    g.lip_bound_ = norm2(slope);
    g.slope_ = std::move(slope);
    g.offset_ = offset;
    return g;
}

LipschitzGraph LipschitzGraph::abs_cone(double slope, int dim_minus_one) {
    if (!(slope >= 0.0) || !std::isfinite(slope)) {
        throw std::invalid_argument("abs-cone graph: slope must be finite and >= 0");
    }
    if (dim_minus_one < 1) throw std::invalid_argument("abs-cone graph: dimension");
    LipschitzGraph g;
    g.kind_ = GraphKind::AbsCone;
    g.dim_minus_one_ = dim_minus_one;
    g.lip_bound_ = slope;
    g.cone_slope_ = slope;
    return g;
}

LipschitzGraph LipschitzGraph::piecewise_linear(std::vector<double> knots_x,
                                                std::vector<double> knots_y) {
    if (knots_x.size() < 2 || knots_x.size() != knots_y.size()) {
        throw std::invalid_argument("piecewise-linear graph: need >= 2 matched knots");
    }
    require_finite(knots_x, "piecewise-linear graph");
    require_finite(knots_y, "piecewise-linear graph");
    double lip = 0.0;
    for (std::size_t i = 0; i + 1 < knots_x.size(); ++i) {
        double dx = knots_x[i + 1] - knots_x[i];
        if (!(dx > 0.0)) {
            throw std::invalid_argument("piecewise-linear graph: knots_x must increase");
        }
        lip = std::max(lip, std::abs((knots_y[i + 1] - knots_y[i]) / dx));
    }
    LipschitzGraph g;
    g.kind_ = GraphKind::PiecewiseLinear;
    g.dim_minus_one_ = 1;
    g.lip_bound_ = lip;
    g.knots_x_ = std::move(knots_x);
    g.knots_y_ = std::move(knots_y);
    return g;
}

LipschitzGraph LipschitzGraph::tabulated(double x0, double dx, std::vector<double> values) {
    if (!(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x0)) {
        throw std::invalid_argument("tabulated graph: bad grid");
    }
    if (values.size() < 2) throw std::invalid_argument("tabulated graph: need >= 2 values");
    require_finite(values, "tabulated graph");
    double lip = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        lip = std::max(lip, std::abs(values[i + 1] - values[i]) / dx);
    }
    LipschitzGraph g;
    g.kind_ = GraphKind::Tabulated;
    g.dim_minus_one_ = 1;
    g.lip_bound_ = lip;
    g.table_x0_ = x0;
    g.table_dx_ = dx;
    g.table_values_ = std::move(values);
    return g;
}

double LipschitzGraph::cone_angle() const { return std::atan(lip_bound_); }

double LipschitzGraph::cone_cos() const {
    return 1.0 / std::sqrt(1.0 + lip_bound_ * lip_bound_);
}

double LipschitzGraph::extent_lo() const { return table_x0_; }

double LipschitzGraph::extent_hi() const {
    return table_x0_ + table_dx_ * static_cast<double>(table_values_.size() - 1);
}

double LipschitzGraph::operator()(std::span<const double> xp) const {
    if (static_cast<int>(xp.size()) != dim_minus_one_) {
        throw std::invalid_argument("graph eval: parameter dimension mismatch");
    }
    require_finite(xp, "graph eval");
    switch (kind_) {
        case GraphKind::Affine: {
            double v = offset_;
            for (std::size_t i = 0; i < slope_.size(); ++i) v += slope_[i] * xp[i];
            return v;
        }
        case GraphKind::AbsCone:
            return cone_slope_ * norm2(xp);
        case GraphKind::PiecewiseLinear: {
            double x = xp[0];
            const auto& xs = knots_x_;
            const auto& ys = knots_y_;
            std::size_t n = xs.size();
            std::size_t seg;
            if (x <= xs.front()) {
                seg = 0;
            } else if (x >= xs.back()) {
                seg = n - 2;
            } else {
                seg = static_cast<std::size_t>(
                          std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) - 1;
            }
            double t = (x - xs[seg]) / (xs[seg + 1] - xs[seg]);
            return ys[seg] + t * (ys[seg + 1] - ys[seg]);
        }
        case GraphKind::Tabulated: {
            double x = xp[0];
            if (x < extent_lo() || x > extent_hi()) {
                throw extent_error("tabulated graph queried outside its extent");
            }
            double u = (x - table_x0_) / table_dx_;
            std::size_t i = std::min(static_cast<std::size_t>(u),
                                     table_values_.size() - 2);
            double t = u - static_cast<double>(i);
            return table_values_[i] + t * (table_values_[i + 1] - table_values_[i]);
        }
    }
    throw std::logic_error("graph eval: unreachable");
}

double LipschitzGraph::eval1(double x) const {
    return (*this)(std::span<const double>(&x, 1));
}

std::vector<double> LipschitzGraph::kinks() const {
    switch (kind_) {
        case GraphKind::Affine:
            return {};
        case GraphKind::AbsCone:
            return dim_minus_one_ == 1 ? std::vector<double>{0.0} : std::vector<double>{};
        case GraphKind::PiecewiseLinear:
            return std::vector<double>(knots_x_.begin() + 1, knots_x_.end() - 1);
        case GraphKind::Tabulated: {
            std::vector<double> k;
            for (std::size_t i = 1; i + 1 < table_values_.size(); ++i) {
                k.push_back(table_x0_ + table_dx_ * static_cast<double>(i));
            }
            return k;
        }
    }
    return {};
}

CertificationRecord certify_lipschitz(const LipschitzGraph& graph,
                                      std::size_t n_pairs, const Box& box,
                                      std::uint64_t seed) {
    if (n_pairs < 1) throw std::invalid_argument("certify_lipschitz: n_pairs >= 1");
    box.validate();
    if (box.dim() != graph.dim_minus_one()) {
        throw std::invalid_argument("certify_lipschitz: box dimension mismatch");
    }

    int d = box.dim();
    double diam = 0.0;
    for (int i = 0; i < d; ++i) diam = std::max(diam, box.hi[i] - box.lo[i]);

    CertificationRecord rec;
    rec.n_pairs = n_pairs;
    const double eps = std::numeric_limits<double>::epsilon();
    const double lip = graph.lip_bound();
    double worst_excess = 0.0;
    std::vector<double> x(d), y(d);
    for (std::size_t p = 0; p < n_pairs; ++p) {
        auto g = derive_stream(seed, p);
        for (int i = 0; i < d; ++i) x[i] = uniform_in(g, box.lo[i], box.hi[i]);
        if (p % 2 == 0) {
            for (int i = 0; i < d; ++i) y[i] = uniform_in(g, box.lo[i], box.hi[i]);
        } else {
            // near pair: log-uniform separation, clamped back into the box
            double sep = log_uniform_in(g, 1e-9 * diam, diam);
            auto dir = unit_vector(g, d);
            for (int i = 0; i < d; ++i) {
                y[i] = std::clamp(x[i] + sep * dir[i], box.lo[i], box.hi[i]);
            }
        }
        double dist2 = 0.0;
        for (int i = 0; i < d; ++i) dist2 += (x[i] - y[i]) * (x[i] - y[i]);
        if (dist2 == 0.0) continue;
        double dist = std::sqrt(dist2);
        double gx = graph(x), gy = graph(y);
        double q = std::abs(gx - gy) / dist;
        if (q > rec.max_quotient) {
            rec.max_quotient = q;
            rec.witness_x = x;
            rec.witness_y = y;
        }
        // The measured difference carries the rounding of both evaluations,
        // which dominates the quotient at the smallest separations even when
        // the declared bound holds. Certify against the guarded numerator.
        double guard = 16.0 * eps * (1.0 + lip) * (1.0 + std::abs(gx) + std::abs(gy));
        worst_excess = std::max(worst_excess, (std::abs(gx - gy) - guard) / dist);
    }
    rec.pass = worst_excess <= lip + 1e-12 * std::max(1.0, lip);
    return rec;
}

EpigraphDomain::EpigraphDomain(LipschitzGraph graph) : graph_(std::move(graph)) {}

double EpigraphDomain::vertical_gap(const Point& x) const {
    if (x.dim() != dim()) {
        throw std::invalid_argument("vertical_gap: point dimension mismatch");
    }
    return x.vertical() - graph_(x.horizontal());
}

Point EpigraphDomain::lift(std::span<const double> xp, double height) const {
    return Point::over(xp, graph_(xp) + height);
}

double distance_lower_bound(const EpigraphDomain& domain, const Point& x) {
    double gap = domain.vertical_gap(x);
    if (!(gap > 0.0)) {
        throw std::domain_error("distance_lower_bound: point not interior");
    }
    return gap * domain.graph().cone_cos();
}

double distance_to_graph(const EpigraphDomain& domain, const Point& x) {
    const auto& g = domain.graph();
    if (x.dim() != domain.dim()) {
        throw std::invalid_argument("distance: point dimension mismatch");
    }
    auto xp = x.horizontal();
    double h = x.vertical();
    switch (g.kind()) {
        case GraphKind::Affine: {
            double v = g.affine_offset();
            for (std::size_t i = 0; i < g.affine_slope().size(); ++i) {
                v += g.affine_slope()[i] * xp[i];
            }
            return std::abs(h - v) * g.cone_cos();
        }
        case GraphKind::AbsCone: {
            // The nearest branch lies in the plane through x' and e_N:
            // reduce to the right ray {(t, s t) : t >= 0} against (|x'|, h).
            double r = norm2(xp);
            return point_ray_distance(r, h, 0.0, 0.0, 1.0, g.cone_slope());
        }
        case GraphKind::PiecewiseLinear: {
            const auto& xs = g.knots_x();
            const auto& ys = g.knots_y();
            std::size_t n = xs.size();
            double q = xp[0];
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i + 1 < n; ++i) {
                best = std::min(best, point_segment_distance(q, h, xs[i], ys[i],
                                                             xs[i + 1], ys[i + 1]));
            }
            double s0 = (ys[1] - ys[0]) / (xs[1] - xs[0]);
            double s1 = (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
            best = std::min(best, point_ray_distance(q, h, xs[0], ys[0], -1.0, -s0));
            best = std::min(best, point_ray_distance(q, h, xs[n - 1], ys[n - 1], 1.0, s1));
            return best;
        }
        case GraphKind::Tabulated: {
            double q = xp[0];
            if (q < g.extent_lo() || q > g.extent_hi()) {
                throw extent_error("distance: query outside the table extent");
            }
            const auto& vs = g.table_values();
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
                double ax = g.table_x0() + g.table_dx() * static_cast<double>(i);
                best = std::min(best, point_segment_distance(q, h, ax, vs[i],
                                                             ax + g.table_dx(), vs[i + 1]));
            }
            // Boundary outside the table could only be closer if the ball of
            // radius `best` pokes past an extent end.
            if (q - best < g.extent_lo() - 1e-12 || q + best > g.extent_hi() + 1e-12) {
                throw extent_error("distance: boundary window leaves the table extent");
            }
            return best;
        }
    }
    throw std::logic_error("distance: unreachable");
}

DistanceResult distance_exact(const EpigraphDomain& domain, const Point& x,
                              double resolution) {
    if (!(resolution > 0.0)) {
        throw std::invalid_argument("distance_exact: resolution must be positive");
    }
    if (!(domain.vertical_gap(x) > 0.0)) {
        throw std::domain_error("distance_exact: point not interior");
    }
    return DistanceResult{distance_to_graph(domain, x), 0.0};
}

double shifted_distance_bound(const EpigraphDomain& domain, const Point& x,
                              double lambda) {
    if (!(lambda >= 0.0)) {
        throw std::invalid_argument("shifted_distance_bound: lambda must be >= 0");
    }
    if (!(domain.vertical_gap(x) > 0.0)) {
        throw std::domain_error("shifted_distance_bound: point not interior");
    }
    double d;
    try {
        d = distance_to_graph(domain, x);
    } catch (const extent_error&) {
        d = distance_lower_bound(domain, x);
    }
    return (d + lambda) * domain.graph().cone_cos();
}

ClearanceResult segment_clearance(const EpigraphDomain& domain, const Point& a,
                                  const Point& b, int n_check) {
    if (!(domain.vertical_gap(a) > 0.0) || !(domain.vertical_gap(b) > 0.0)) {
        throw std::domain_error("segment_clearance: endpoint not interior");
    }
    if (a == b) {
        return ClearanceResult{distance_exact(domain, a).value, a};
    }
    if (n_check < 2) throw std::invalid_argument("segment_clearance: n_check >= 2");

    ClearanceResult res;
    res.value = std::numeric_limits<double>::infinity();
    std::vector<double> c(static_cast<std::size_t>(a.dim()));
    for (int k = 0; k < n_check; ++k) {
        double t = static_cast<double>(k) / static_cast<double>(n_check - 1);
        for (int i = 0; i < a.dim(); ++i) c[static_cast<std::size_t>(i)] = a[i] + t * (b[i] - a[i]);
        Point z(c);
        double gap = domain.vertical_gap(z);
        double v = gap > 0.0 ? distance_to_graph(domain, z) : gap;
        if (v < res.value) {
            res.value = v;
            res.witness = z;
        }
    }
    return res;
}

} // namespace lipharm

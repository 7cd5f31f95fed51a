#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lipharm {

/// Point in R^N with the split x = (x', x_N): x' are the first N-1
/// coordinates (the graph parameter), x_N the height.
class Point {
public:
    Point() = default;
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords);
    static Point over(std::span<const double> xp, double xn);

    int dim() const { return static_cast<int>(coords_.size()); }
    double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return coords_[static_cast<std::size_t>(i)]; }
    std::span<const double> horizontal() const {
        return {coords_.data(), coords_.size() - 1};
    }
    double vertical() const { return coords_.back(); }
    const std::vector<double>& coords() const { return coords_; }

    bool operator==(const Point&) const = default;

private:
    std::vector<double> coords_;
};

double distance(const Point& a, const Point& b);

/// Axis-aligned box, used as a sampling region.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    int dim() const { return static_cast<int>(lo.size()); }
    void validate() const; // throws std::invalid_argument on empty/degenerate box
};

enum class GraphKind { Affine, AbsCone, PiecewiseLinear, Tabulated };

std::string to_string(GraphKind k);

/// Boundary function Psi : R^(N-1) -> R with a declared Lipschitz bound L.
/// Four concrete shapes; all exact-distance oracles in this project are
/// built on them.
class LipschitzGraph {
public:
    // Psi(x') = slope . x' + offset, L = |slope|.
    static LipschitzGraph affine(std::vector<double> slope, double offset);
    // Psi(x') = slope * |x'| with apex value 0 at the origin, L = slope.
    static LipschitzGraph abs_cone(double slope, int dim_minus_one);
    // 1-D parameter; linear between knots, extended by the end slopes.
    static LipschitzGraph piecewise_linear(std::vector<double> knots_x,
                                           std::vector<double> knots_y);
    // 1-D parameter; values on the regular grid x0 + i*dx, linear in
    // between, undefined outside the extent.
    static LipschitzGraph tabulated(double x0, double dx, std::vector<double> values);

    GraphKind kind() const { return kind_; }
    int dim_minus_one() const { return dim_minus_one_; }
    double lip_bound() const { return lip_bound_; }
    double cone_angle() const;          // arctan L in [0, pi/2)
    double cone_cos() const;            // 1/sqrt(1+L^2)

    double operator()(std::span<const double> xp) const;
    double eval1(double x) const;       // 1-D parameter convenience

    // Parameter values where Psi has a kink (1-D kinds only).
    std::vector<double> kinks() const;

    // Tabulated extent [x0, x0+(n-1)dx]; other kinds cover all of R^(N-1).
    bool has_extent() const { return kind_ == GraphKind::Tabulated; }
    double extent_lo() const;
    double extent_hi() const;

    const std::vector<double>& affine_slope() const { return slope_; }
    double affine_offset() const { return offset_; }
    double cone_slope() const { return cone_slope_; }
    const std::vector<double>& knots_x() const { return knots_x_; }
    const std::vector<double>& knots_y() const { return knots_y_; }
    double table_x0() const { return table_x0_; }
    double table_dx() const { return table_dx_; }
    const std::vector<double>& table_values() const { return table_values_; }

private:
    LipschitzGraph() = default;

    GraphKind kind_ = GraphKind::Affine;
    int dim_minus_one_ = 1;
    double lip_bound_ = 0.0;

    std::vector<double> slope_; // affine
    double offset_ = 0.0;       // affine
    double cone_slope_ = 0.0;   // abs-cone
    std::vector<double> knots_x_, knots_y_; // piecewise-linear
    double table_x0_ = 0.0, table_dx_ = 1.0; // tabulated
    std::vector<double> table_values_;
};

struct CertificationRecord {
    double max_quotient = 0.0;
    std::vector<double> witness_x;
    std::vector<double> witness_y;
    std::size_t n_pairs = 0;
    bool pass = false;
};

/// Samples n_pairs point pairs in the box and checks the difference
/// quotient |Psi(x)-Psi(y)|/|x-y| against the declared bound. Half the
/// pairs are drawn independently, half at log-uniform small separations to
/// probe local slopes. pass subtracts a rounding guard from each numerator
/// first; max_quotient and the witness stay raw.
CertificationRecord certify_lipschitz(const LipschitzGraph& graph,
                                      std::size_t n_pairs, const Box& box,
                                      std::uint64_t seed);

/// The strict epigraph E_Psi = { (x', x_N) : x_N > Psi(x') }.
class EpigraphDomain {
public:
    explicit EpigraphDomain(LipschitzGraph graph);

    int dim() const { return graph_.dim_minus_one() + 1; }
    const LipschitzGraph& graph() const { return graph_; }

    // x_N - Psi(x'); positive iff x is interior.
    double vertical_gap(const Point& x) const;
    bool contains(const Point& x) const { return vertical_gap(x) > 0.0; }

    // Point (x', Psi(x') + height) strictly above the graph.
    Point lift(std::span<const double> xp, double height) const;

private:
    LipschitzGraph graph_;
};

/// Certified lower bound (x_N - Psi(x')) * cos(arctan L) <= d(x, dE).
/// Requires an interior point.
double distance_lower_bound(const EpigraphDomain& domain, const Point& x);

struct DistanceResult {
    double value = 0.0;
    double error_bound = 0.0; // value - error_bound <= true distance <= value
};

/// Exact distance to the boundary graph. All four graph kinds reduce to
/// closed-form point/segment/ray distances, so the error bound is zero;
/// `resolution` is validated but only consulted as a subdivision hint.
/// Requires an interior point.
DistanceResult distance_exact(const EpigraphDomain& domain, const Point& x,
                              double resolution = 1e-6);

/// Distance from an arbitrary point (either side) to the boundary graph.
double distance_to_graph(const EpigraphDomain& domain, const Point& x);

/// Cone bound for the lifted point x + lambda*e_N:
/// d(x_lambda, dE) >= (d(x) + lambda) * cos(arctan L).
double shifted_distance_bound(const EpigraphDomain& domain, const Point& x,
                              double lambda);

struct ClearanceResult {
    double value = 0.0;
    Point witness;
};

/// Minimum boundary distance over n_check equispaced samples of [a, b].
/// If a sample leaves the domain the (nonpositive) vertical gap is
/// reported for it, so callers can detect the violation by sign.
ClearanceResult segment_clearance(const EpigraphDomain& domain, const Point& a,
                                  const Point& b, int n_check);

} // namespace lipharm

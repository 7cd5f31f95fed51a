#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "lipharm/errors.hpp"
#include "lipharm/extension.hpp"
#include "lipharm/hoelder.hpp"
#include "oracles.hpp"

using namespace lipharm;

namespace {

const EpigraphDomain& halfplane() {
    static EpigraphDomain dom(LipschitzGraph::affine({0.0}, 0.0));
    return dom;
}

} // namespace

TEST_SUITE("extension") {

TEST_CASE("polyline construction and validation") {
    auto line = Polyline::through({Point{0.0, 1.0}, Point{0.0, 3.0}, Point{1.0, 3.0}});
    CHECK(line.n_segments() == 2);
    CHECK(line.segment_lengths[0] == doctest::Approx(2.0));
    CHECK(line.total_length() == doctest::Approx(3.0));

    auto single = Polyline::through({Point{0.5, 0.5}});
    CHECK(single.n_segments() == 0);
    CHECK(single.total_length() == 0.0);

    CHECK_THROWS_AS(Polyline::through({}), std::invalid_argument);
    CHECK_THROWS_AS(Polyline::through({Point{0.0, 1.0}, Point{0.0, 0.0, 1.0}}),
                    std::invalid_argument);
}

TEST_CASE("weighted length matches closed forms on the half-plane") {
    const auto& hp = halfplane();
    // vertical: integral of t^(alpha-1) from a to b is (b^a - a^a)/alpha
    auto v = weighted_length(Polyline::through({Point{0.0, 1.0}, Point{0.0, 2.0}}),
                             hp, 0.5);
    CHECK(v.value == doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-12));
    CHECK(v.quad_error < 1e-9);
    CHECK(v.n_nodes > 0);

    auto q = weighted_length(Polyline::through({Point{0.0, 1.0}, Point{0.0, 2.0}}),
                             hp, 0.25);
    CHECK(q.value ==
          doctest::Approx(4.0 * (std::pow(2.0, 0.25) - 1.0)).epsilon(1e-12));

    // slanted: d(z(t)) = 1 + t with |dz| = sqrt(2) dt
    auto s = weighted_length(Polyline::through({Point{0.0, 1.0}, Point{1.0, 2.0}}),
                             hp, 0.5);
    CHECK(s.value ==
          doctest::Approx(2.0 * std::sqrt(2.0) * (std::sqrt(2.0) - 1.0))
              .epsilon(1e-12));

    // horizontal at constant distance
    auto h = weighted_length(Polyline::through({Point{0.0, 4.0}, Point{3.0, 4.0}}),
                             hp, 0.5);
    CHECK(h.value == doctest::Approx(3.0 / 2.0).epsilon(1e-12));

    // a vertical segment may start on the boundary: integrable endpoint
    auto b = weighted_length(Polyline::through({Point{0.0, 0.0}, Point{0.0, 1.0}}),
                             hp, 0.5);
    CHECK(b.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::fabs(b.value - 2.0) <= b.quad_error + 1e-12);
}

TEST_CASE("weighted length is additive along a split segment") {
    const auto& hp = halfplane();
    auto whole = weighted_length(
        Polyline::through({Point{0.0, 1.0}, Point{1.0, 2.0}}), hp, 0.5);
    auto split = weighted_length(
        Polyline::through({Point{0.0, 1.0}, Point{0.5, 1.5}, Point{1.0, 2.0}}),
        hp, 0.5);
    CHECK(std::fabs(whole.value - split.value) <=
          whole.quad_error + split.quad_error + 1e-10);

    auto empty = weighted_length(Polyline::through({Point{0.0, 1.0}}), hp, 0.5);
    CHECK(empty.value == 0.0);
    CHECK(empty.quad_error == 0.0);

    // zero-length segments contribute nothing
    auto dup = weighted_length(
        Polyline::through({Point{0.0, 1.0}, Point{0.0, 1.0}}), hp, 0.5);
    CHECK(dup.value == 0.0);
}

TEST_CASE("weighted length refuses nonintegrable and ill-posed curves") {
    const auto& hp = halfplane();
    // crossing the boundary at an interior point of a segment
    CHECK_THROWS_AS(weighted_length(Polyline::through({Point{-1.0, 1.0},
                                                       Point{1.0, -1.0}}),
                                    hp, 0.5),
                    nonintegrable_error);
    // dipping below an interior peak between interior endpoints
    EpigraphDomain tent(
        LipschitzGraph::piecewise_linear({-2.0, 0.0, 2.0}, {0.0, 2.0, 0.0}));
    CHECK_THROWS_AS(weighted_length(Polyline::through({Point{-2.0, 1.9},
                                                       Point{2.0, 1.9}}),
                                    tent, 0.5),
                    nonintegrable_error);
    // a slanted segment ending on the boundary has no certified bracket
    CHECK_THROWS_AS(weighted_length(Polyline::through({Point{0.0, 0.0},
                                                       Point{1.0, 1.0}}),
                                    hp, 0.5),
                    accuracy_error);

    CHECK_THROWS_AS(weighted_length(Polyline::through({Point{0.0, 1.0},
                                                       Point{0.0, 2.0}}),
                                    hp, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(weighted_length(Polyline::through({Point{0.0, 0.0, 1.0},
                                                       Point{0.0, 0.0, 2.0}}),
                                    hp, 0.5),
                    std::invalid_argument);
}

TEST_CASE("cigar curves lift, cross, and descend as documented") {
    const auto& hp = halfplane();
    auto c = cigar_curve(hp, Point{0.0, 1.0}, Point{0.0, 2.0});
    REQUIRE(c.vertices.size() == 4);
    CHECK(c.vertices[0] == Point{0.0, 1.0});
    CHECK(c.vertices[1] == Point{0.0, 3.0});
    CHECK(c.vertices[2] == Point{0.0, 3.0});
    CHECK(c.vertices[3] == Point{0.0, 2.0});
    auto wl = weighted_length(c, hp, 0.5);
    // 2(sqrt(3)-1) + 2(sqrt(3)-sqrt(2)) = 4 sqrt(3) - 2 - 2 sqrt(2)
    CHECK(wl.value ==
          doctest::Approx(4.0 * std::sqrt(3.0) - 2.0 - 2.0 * std::sqrt(2.0))
              .epsilon(1e-12));

    // lifted height above the higher endpoint is exactly (1+L)|x-y|
    EpigraphDomain cone(LipschitzGraph::abs_cone(1.0, 1));
    Point x{-1.0, 2.0}, y{2.0, 4.0};
    double sep = distance(x, y);
    auto cc = cigar_curve(cone, x, y);
    REQUIRE(cc.vertices.size() == 4);
    double top = 4.0 + 2.0 * sep;
    CHECK(cc.vertices[1].vertical() == doctest::Approx(top).epsilon(1e-15));
    CHECK(cc.vertices[2].vertical() == cc.vertices[1].vertical());
    CHECK(cc.vertices[1].horizontal()[0] == x[0]);
    CHECK(cc.vertices[2].horizontal()[0] == y[0]);
    // the crossing segment keeps clearance >= |x-y|
    auto clr = segment_clearance(cone, cc.vertices[1], cc.vertices[2], 129);
    CHECK(clr.value >= sep * (1.0 - 1e-9));

    auto degenerate = cigar_curve(hp, Point{0.3, 0.7}, Point{0.3, 0.7});
    CHECK(degenerate.vertices.size() == 1);
    CHECK(weighted_length(degenerate, hp, 0.5).value == 0.0);

    CHECK_THROWS_AS(cigar_curve(hp, Point{0.0, -1.0}, Point{0.0, 1.0}),
                    std::domain_error);
    CHECK_THROWS_AS(cigar_curve(hp, Point{0.0, 0.0}, Point{0.0, 1.0}),
                    std::domain_error);
}

TEST_CASE("gehring-martio ratios replay identically across decades") {
    const auto& hp = halfplane();
    auto rec = gehring_martio_check(hp, 0.5, 600, 11);
    CHECK(rec.alpha == 0.5);
    CHECK(rec.n_pairs == 600);
    REQUIRE(rec.decades.size() == 6);
    double overall = 0.0;
    for (std::size_t d = 0; d < 6; ++d) {
        const auto& dec = rec.decades[d];
        CAPTURE(d);
        CHECK(dec.n == 100);
        CHECK(dec.sep_lo == doctest::Approx(1e-5 * std::pow(10.0, double(d))));
        CHECK(dec.sep_hi == doctest::Approx(10.0 * dec.sep_lo));
        CHECK(dec.mean_ratio <= dec.max_ratio);
        CHECK(dec.max_ratio > 0.0);
        // the half-plane is scale invariant, so replayed shapes agree
        CHECK(dec.max_ratio ==
              doctest::Approx(rec.decades[0].max_ratio).epsilon(1e-12));
        overall = std::max(overall, dec.max_ratio);
    }
    CHECK(rec.max_ratio == overall);
    // the witness pair reproduces the recorded ratio
    double sep = distance(rec.witness_x, rec.witness_y);
    double again = weighted_length(cigar_curve(hp, rec.witness_x, rec.witness_y),
                                   hp, 0.5)
                       .value /
                   std::pow(sep, 0.5);
    CHECK(again == rec.max_ratio);

    EpigraphDomain cone(LipschitzGraph::abs_cone(1.0, 1));
    auto r3 = gehring_martio_check(cone, 0.5, 300, 3);
    auto r4 = gehring_martio_check(cone, 0.5, 300, 4);
    CHECK(std::fabs(r3.max_ratio - r4.max_ratio) <=
          0.1 * std::max(r3.max_ratio, r4.max_ratio));

    CHECK_THROWS_AS(gehring_martio_check(hp, 0.5, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gehring_martio_check(hp, 1.0, 10, 1), std::invalid_argument);
}

TEST_CASE("gradient hypothesis transfers to the hoelder conclusion") {
    const auto& hp = halfplane();
    double alpha = 0.5;
    auto gm = gehring_martio_check(hp, alpha, 120, 11);
    double c_d = 1.2 * gm.max_ratio;

    // f = x2^alpha saturates the hypothesis with c_f = alpha exactly
    auto f = HarmonicField::custom(
        "probe", 2, [alpha](const Point& x) { return std::pow(x[1], alpha); },
        [alpha](const Point& x) {
            return std::vector<double>{0.0, alpha * std::pow(x[1], alpha - 1.0)};
        },
        4.0, nullptr);
    PairSampler sampler;
    sampler.box = SampleBox::standard(2);
    sampler.n_pairs = 2000;
    auto rec = gradient_to_hoelder_check(f, hp, alpha, alpha, c_d, sampler);
    CHECK(rec.n_pairs == 2000);
    CHECK(rec.hypothesis_ok);
    CHECK(rec.hypothesis_max == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rec.pass);
    CHECK(rec.worst_ratio > 0.0);
    CHECK(rec.worst_ratio <= 0.5); // |a^c - b^c| <= |a-b|^c leaves headroom

    // understating c_f flips the hypothesis flag and skips the conclusion
    auto weak = gradient_to_hoelder_check(f, hp, alpha, 0.5 * alpha, c_d, sampler);
    CHECK(!weak.hypothesis_ok);
    CHECK(weak.hypothesis_max == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(!weak.pass);
    CHECK(weak.worst_ratio == 0.0);

    // a bounded harmonic field with measured gradient constant passes too
    EpigraphDomain cone(LipschitzGraph::abs_cone(1.0, 1));
    auto pole = make_pole_field(cone, Point{0.0, -1.0});
    InteriorSampler interior;
    interior.box = SampleBox::standard(2);
    interior.n_points = 4000;
    double c_f = 1.05 * weighted_gradient_sup(pole, cone, alpha, interior);
    auto gmc = gehring_martio_check(cone, alpha, 120, 11);
    auto rp = gradient_to_hoelder_check(pole, cone, alpha, c_f,
                                        1.2 * gmc.max_ratio, sampler);
    CHECK(rp.hypothesis_ok);
    CHECK(rp.pass);

    CHECK_THROWS_AS(gradient_to_hoelder_check(f, hp, alpha, 0.0, c_d, sampler),
                    std::invalid_argument);
    CHECK_THROWS_AS(gradient_to_hoelder_check(f, hp, alpha, alpha, -1.0, sampler),
                    std::invalid_argument);
}

} // TEST_SUITE

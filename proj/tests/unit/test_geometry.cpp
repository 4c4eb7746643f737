#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "generators.hpp"
#include "lvef/error.hpp"
#include "lvef/geometry.hpp"
#include "lvef/metrics.hpp"
#include "oracles.hpp"

using namespace lvef;

namespace {

BinaryMask block(int w, int h, int x0, int y0, int x1, int y1) {
    BinaryMask m(w, h);
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) m.set(x, y);
    }
    return m;
}

template <typename F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no lvef::Error thrown";
    return ErrorKind::IoError;
}

bool is_boundary_pixel(const BinaryMask& m, int x, int y) {
    if (!m.at(x, y)) return false;
    return !m.at(x - 1, y) || !m.at(x + 1, y) || !m.at(x, y - 1) || !m.at(x, y + 1);
}

}  // namespace

TEST(Point, SignedAreaOrientation) {
    const std::vector<Point2> ccw = {{0, 0}, {4, 0}, {4, 3}, {0, 3}};
    EXPECT_DOUBLE_EQ(signed_area(ccw), 12.0);
    const std::vector<Point2> cw(ccw.rbegin(), ccw.rend());
    EXPECT_DOUBLE_EQ(signed_area(cw), -12.0);
}

TEST(Point, GeometricToleranceScalesWithDiagonal) {
    const std::vector<Point2> pts = {{0, 0}, {3, 4}};
    EXPECT_DOUBLE_EQ(geometric_tolerance(pts), 5e-6);
}

TEST(BinaryMask, RejectsBadPixelsAndSizes) {
    EXPECT_EQ(kind_of([] { BinaryMask(2, 2, {0, 1, 2, 0}); }), ErrorKind::InvalidPixelValue);
    EXPECT_EQ(kind_of([] { BinaryMask(2, 2, {0, 1, 1}); }), ErrorKind::DimensionMismatch);
    EXPECT_EQ(kind_of([] { BinaryMask(0, 2); }), ErrorKind::DimensionMismatch);
}

TEST(ExtractContour, TwoByTwoBlockGivesFourCentersCounterclockwise) {
    const Contour c = extract_contour(block(4, 4, 1, 1, 2, 2));
    const std::vector<Point2> expected = {{1, 1}, {2, 1}, {2, 2}, {1, 2}};
    EXPECT_EQ(c.points, expected);
    EXPECT_GT(signed_area(c.points), 0.0);
}

TEST(ExtractContour, EmptyAndDegenerate) {
    EXPECT_EQ(kind_of([] { extract_contour(BinaryMask(4, 4)); }), ErrorKind::EmptyMask);
    EXPECT_EQ(kind_of([] { extract_contour(block(4, 4, 1, 1, 1, 1)); }), ErrorKind::DegenerateRegion);
    EXPECT_EQ(kind_of([] { extract_contour(block(4, 4, 1, 1, 2, 1)); }), ErrorKind::DegenerateRegion);
}

TEST(ExtractContour, LargerComponentWins) {
    BinaryMask m = block(12, 12, 1, 1, 5, 5);
    m.set(9, 9);
    const auto sizes = oracle::component_sizes(m);
    ASSERT_EQ(sizes, (std::vector<int>{25, 1}));

    const Contour c = extract_contour(m);
    EXPECT_EQ(c.size(), 16u);
    for (const auto& p : c.points) {
        EXPECT_GE(p.x, 1);
        EXPECT_LE(p.x, 5);
        EXPECT_GE(p.y, 1);
        EXPECT_LE(p.y, 5);
    }
    EXPECT_DOUBLE_EQ(mask_area(m), 25.0);
}

TEST(ExtractContour, PropertyPointsAreConnectedBoundaryPixels) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        SCOPED_TRACE("seed " + std::to_string(seed));
        gen::Rng rng(seed);
        const BinaryMask m = gen::blob_mask(rng, 40, 30, gen::uniform_int(rng, 1, 3));
        Contour c;
        try {
            c = extract_contour(m);
        } catch (const Error& e) {
            EXPECT_TRUE(e.kind() == ErrorKind::EmptyMask || e.kind() == ErrorKind::DegenerateRegion);
            continue;
        }
        const BinaryMask region = largest_component(m);
        EXPECT_GE(signed_area(c.points), 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            const int x = static_cast<int>(c[i].x);
            const int y = static_cast<int>(c[i].y);
            EXPECT_TRUE(region.at(x, y));
            EXPECT_TRUE(is_boundary_pixel(region, x, y));
            const Point2 d = c.edge_end(i) - c[i];
            EXPECT_LE(std::max(std::abs(d.x), std::abs(d.y)), 1.0);
            EXPECT_GT(std::abs(d.x) + std::abs(d.y), 0.0);
        }
    }
}

TEST(Components, PropertyMatchFloodFill) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        SCOPED_TRACE("seed " + std::to_string(seed));
        gen::Rng rng(seed);
        const BinaryMask m = gen::noise_mask(rng, gen::uniform_int(rng, 1, 25), gen::uniform_int(rng, 1, 25),
                                             gen::uniform(rng, 0.05, 0.6));
        const auto sizes = oracle::component_sizes(m);
        EXPECT_EQ(count_components(m), static_cast<int>(sizes.size()));
        EXPECT_DOUBLE_EQ(mask_area(m), sizes.empty() ? 0.0 : sizes.front());
        EXPECT_EQ(largest_component(m).count(), sizes.empty() ? 0u : static_cast<std::size_t>(sizes.front()));
    }
}

TEST(MaskArea, Examples) {
    EXPECT_DOUBLE_EQ(mask_area(block(4, 4, 0, 0, 1, 1)), 4.0);
    EXPECT_DOUBLE_EQ(mask_area(BinaryMask(4, 4)), 0.0);
}

TEST(ConvexHull, SquareWithCenter) {
    const std::vector<Point2> pts = {{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}};
    const Contour h = convex_hull(pts);
    EXPECT_EQ(h.size(), 4u);
    EXPECT_GT(signed_area(h.points), 0.0);
    using Corners = std::set<std::pair<double, double>>;
    Corners got;
    for (auto p : h.points) got.insert({p.x, p.y});
    const Corners want = {{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    EXPECT_EQ(got, want);
}

TEST(ConvexHull, ThreePointsAndDegenerate) {
    const std::vector<Point2> tri = {{0, 0}, {5, 1}, {2, 4}};
    EXPECT_EQ(convex_hull(tri).size(), 3u);
    const std::vector<Point2> line = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
    EXPECT_EQ(kind_of([&] { convex_hull(line); }), ErrorKind::DegenerateInput);
    const std::vector<Point2> dup = {{1, 1}, {1, 1}, {2, 2}};
    EXPECT_EQ(kind_of([&] { convex_hull(dup); }), ErrorKind::DegenerateInput);
}

TEST(ConvexHull, PropertyMatchesBruteForce) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        SCOPED_TRACE("seed " + std::to_string(seed));
        gen::Rng rng(seed);
        std::vector<Point2> pts;
        if (seed % 2 == 0) {
            // 100 points in a disc
            while (pts.size() < 100) {
                const Point2 p{gen::uniform(rng, -1, 1), gen::uniform(rng, -1, 1)};
                if (norm(p) <= 1.0) pts.push_back(50.0 * p);
            }
        } else {
            // small integer lattice: many duplicates and collinear triples
            for (int i = 0; i < 60; ++i) pts.push_back({double(gen::uniform_int(rng, 0, 6)), double(gen::uniform_int(rng, 0, 6))});
        }
        const Contour h = convex_hull(pts);
        std::vector<Point2> got = h.points;
        std::sort(got.begin(), got.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
        EXPECT_EQ(got, oracle::brute_hull_vertices(pts));

        for (std::size_t i = 0; i < h.size(); ++i) {
            EXPECT_GT(orient(h[i], h.edge_end(i), h[(i + 2) % h.size()]), 0.0);
        }
    }
}

TEST(Rasterize, AxisAlignedSquare) {
    const Contour sq{{{1, 1}, {3, 1}, {3, 3}, {1, 3}}};
    const BinaryMask m = rasterize_polygon(sq, 5, 5);
    EXPECT_EQ(m.count(), 9u);
    EXPECT_EQ(m, oracle::rasterize_per_pixel(sq, 5, 5));
}

TEST(Rasterize, OutsideGridIsEmpty) {
    const Contour far{{{20, 20}, {30, 20}, {25, 30}}};
    EXPECT_EQ(rasterize_polygon(far, 5, 5).count(), 0u);
    const Contour neg{{{-10, -10}, {-2, -10}, {-5, -3}}};
    EXPECT_EQ(rasterize_polygon(neg, 5, 5).count(), 0u);
}

TEST(Rasterize, PropertyMatchesPerPixelOracle) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        SCOPED_TRACE("seed " + std::to_string(seed));
        gen::Rng rng(seed);
        Contour poly;
        const int n = gen::uniform_int(rng, 3, 12);
        if (seed % 3 == 0) {
            // lattice vertices put many pixel centers exactly on edges
            for (int i = 0; i < n; ++i) poly.points.push_back({double(gen::uniform_int(rng, -3, 23)), double(gen::uniform_int(rng, -3, 23))});
        } else if (seed % 3 == 1) {
            poly = gen::convex_polygon(rng, n);
            for (auto& p : poly.points) p = 0.25 * p;
        } else {
            poly.points = gen::random_points(rng, n, -3.0, 23.0);
        }
        const BinaryMask got = rasterize_polygon(poly, 20, 20);
        const BinaryMask want = oracle::rasterize_per_pixel(poly, 20, 20);
        for (int y = 0; y < 20; ++y) {
            for (int x = 0; x < 20; ++x) {
                if (got.at(x, y) == want.at(x, y)) continue;
                // only pixels within rounding distance of an edge may differ
                EXPECT_LT(oracle::distance_to_boundary(poly, {double(x), double(y)}), 1e-7) << "pixel " << x << "," << y;
            }
        }
    }
}

TEST(Rasterize, PropertyContourRoundTripOnConvexBlobs) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SCOPED_TRACE("seed " + std::to_string(seed));
        gen::Rng rng(seed);
        const BinaryMask m = gen::ellipse_mask(64, 64, gen::uniform(rng, 24, 40), gen::uniform(rng, 24, 40),
                                               gen::uniform(rng, 6, 20), gen::uniform(rng, 6, 20),
                                               gen::uniform(rng, 0, std::numbers::pi));
        const BinaryMask back = rasterize_polygon(extract_contour(m), 64, 64);
        EXPECT_GE(dice(back, m), 0.95);
    }
}

TEST(Rasterize, PropertyAreaNearShoelaceForLargeConvexPolygons) {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        SCOPED_TRACE("seed " + std::to_string(seed));
        gen::Rng rng(seed);
        const Contour c = gen::convex_polygon(rng, gen::uniform_int(rng, 3, 12));
        double diam = 0.0;
        for (auto p : c.points) {
            for (auto q : c.points) diam = std::max(diam, distance(p, q));
        }
        const double shoelace = signed_area(c.points);
        // slivers can be long yet only a pixel or two wide
        if (diam < 20.0 || shoelace < 0.2 * diam * diam) continue;
        ++checked;
        EXPECT_NEAR(mask_area(rasterize_polygon(c, 101, 101)), shoelace, 0.15 * shoelace);
    }
    EXPECT_GE(checked, 50);
}

namespace {

// Edge-by-edge parametric hits with t >= 0, merged when closer than 1e-9.
std::vector<double> oracle_ray_hits(Point2 o, Point2 d, const Contour& poly) {
    std::vector<double> ts;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point2 a = poly[i];
        const Point2 e = poly.edge_end(i) - a;
        const double den = cross(d, e);
        if (den == 0.0) continue;
        const double t = cross(a - o, e) / den;
        const double u = cross(a - o, d) / den;
        if (t >= 0.0 && u >= -1e-12 && u <= 1.0 + 1e-12) ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
    std::vector<double> out;
    for (double t : ts) {
        if (out.empty() || t - out.back() > 1e-9) out.push_back(t);
    }
    return out;
}

}  // namespace

TEST(RayIntersection, Examples) {
    const Contour sq{{{0, 0}, {2, 0}, {2, 2}, {0, 2}}};
    const auto hits = intersect_ray_polygon({1, 1}, {1, 0}, sq);
    ASSERT_EQ(hits.size(), 1u);
    EXPECT_NEAR(hits[0].x, 2.0, 1e-12);
    EXPECT_NEAR(hits[0].y, 1.0, 1e-12);
    EXPECT_TRUE(intersect_ray_polygon({5, 5}, {1, 1}, sq).empty());
    // through a vertex: reported once
    const auto corner = intersect_ray_polygon({1, 1}, {1, 1}, sq);
    ASSERT_EQ(corner.size(), 1u);
    EXPECT_NEAR(corner[0].x, 2.0, 1e-12);
}

TEST(RayIntersection, PropertyConvexPolygonHitCounts) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        SCOPED_TRACE("seed " + std::to_string(seed));
        gen::Rng rng(seed);
        const Contour c = gen::convex_polygon(rng, gen::uniform_int(rng, 3, 10));
        Point2 centroid{0, 0};
        for (auto p : c.points) centroid = centroid + p;
        centroid = (1.0 / c.size()) * centroid;

        const double th = gen::uniform(rng, 0, 2 * std::numbers::pi);
        const Point2 dir{std::cos(th), std::sin(th)};
        const auto inside = intersect_ray_polygon(centroid, dir, c);
        ASSERT_EQ(inside.size(), 1u);
        const auto want = oracle_ray_hits(centroid, dir, c);
        ASSERT_EQ(want.size(), 1u);
        EXPECT_NEAR(distance(inside[0], centroid + want[0] * dir), 0.0, 1e-9);

        const Point2 start = centroid - 200.0 * dir;
        const auto through = intersect_ray_polygon(start, dir, c);
        ASSERT_EQ(through.size(), 2u);
        EXPECT_LT(distance(start, through[0]), distance(start, through[1]));
        const auto want2 = oracle_ray_hits(start, dir, c);
        ASSERT_EQ(want2.size(), 2u);
        for (int k = 0; k < 2; ++k) EXPECT_NEAR(distance(through[k], start + want2[k] * dir), 0.0, 1e-9);
    }
}

TEST(NearestPoint, UsesEdgesNotOnlyVertices) {
    const Contour sq{{{0, 0}, {10, 0}, {10, 10}, {0, 10}}};
    const NearestPoint np = nearest_point_on_contour({5, -3}, sq);
    EXPECT_NEAR(np.point.x, 5.0, 1e-12);
    EXPECT_NEAR(np.point.y, 0.0, 1e-12);
    EXPECT_NEAR(np.distance, 3.0, 1e-12);
}

TEST(IsSimple, DetectsBowtie) {
    EXPECT_TRUE(is_simple(Contour{{{0, 0}, {4, 0}, {4, 4}, {0, 4}}}));
    EXPECT_FALSE(is_simple(Contour{{{0, 0}, {4, 4}, {4, 0}, {0, 4}}}));
}

TEST(TriangleContains, BoundaryWithinTolerance) {
    const Triangle t{{0, 0}, {4, 0}, {0, 4}};
    EXPECT_TRUE(triangle_contains(t, {1, 1}, 1e-9));
    EXPECT_TRUE(triangle_contains(t, {2, 2}, 1e-9));
    EXPECT_FALSE(triangle_contains(t, {2.1, 2.1}, 1e-9));
}

// Minimum-area enclosing triangle of a convex polygon.
//
// Some optimal triangle has two sides flush with polygon edges: a locally
// minimal triangle has a flush side and touches the polygon at the midpoint
// of every other side, and when neither remaining side is flush the apex can
// slide parallel to the flush side at constant area until one of them is.
// For each pair of flush edge lines the best third side is then either
// flush with another edge, or pivots on a vertex that it touches at its
// midpoint. Every candidate is validated with local support tests only.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lvef/error.hpp"
#include "lvef/geometry.hpp"

namespace lvef {

namespace {

Point2 unit(Point2 v) {
    const double n = norm(v);
    return {v.x / n, v.y / n};
}

// Interior of a counterclockwise polygon is to the left of each edge.
Point2 inward_normal(Point2 edge) { return unit(Point2{-edge.y, edge.x}); }

void validate_convex(const Contour& hull, double tol) {
    const std::size_t n = hull.size();
    if (n < 3) {
        throw Error(ErrorKind::DegenerateInput, "hull needs at least 3 vertices, got " + std::to_string(n));
    }
    for (const auto& p : hull.points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw Error(ErrorKind::DegenerateInput, "hull has a non-finite vertex");
        }
    }
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 prev = hull[(i + n - 1) % n];
        const Point2 cur = hull[i];
        const Point2 next = hull[(i + 1) % n];
        const double chord = distance(prev, next);
        if (chord == 0.0 || orient(prev, cur, next) / chord <= tol) {
            throw Error(ErrorKind::DegenerateInput,
                        "hull vertex " + std::to_string(i) + " is reflex, collinear or duplicated");
        }
        turning += std::atan2(cross(cur - prev, next - cur), dot(cur - prev, next - cur));
    }
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
        throw Error(ErrorKind::DegenerateInput, "hull winds more than once");
    }
}

struct Wedge {
    Point2 apex;
    Point2 u1;  // unit direction of the ray along the first line
    Point2 u2;  // unit direction of the ray along the second line
    double det; // cross(u1, u2)
};

}  // namespace

Triangle min_enclosing_triangle(const Contour& hull) {
    const double tol = geometric_tolerance(hull.points);
    validate_convex(hull, tol);

    const std::size_t n = hull.size();
    std::vector<Point2> dir(n), inward(n);
    for (std::size_t i = 0; i < n; ++i) {
        dir[i] = unit(hull.edge_end(i) - hull[i]);
        inward[i] = inward_normal(dir[i]);
    }

    double best_area = std::numeric_limits<double>::infinity();
    Triangle best{};

    auto consider = [&](const Wedge& w, double s, double t) {
        const double area = 0.5 * s * t * std::abs(w.det);
        if (area < best_area) {
            best_area = area;
            best = Triangle{w.apex, w.apex + s * w.u1, w.apex + t * w.u2};
        }
    };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double denom = cross(dir[i], dir[j]);
            if (std::abs(denom) <= 1e-12) continue;  // parallel flush lines bound no triangle

            const double r = cross(hull[j] - hull[i], dir[j]) / denom;
            Wedge w;
            w.apex = hull[i] + r * dir[i];
            w.u1 = dot(inward[j], dir[i]) > 0.0 ? dir[i] : -1.0 * dir[i];
            w.u2 = dot(inward[i], dir[j]) > 0.0 ? dir[j] : -1.0 * dir[j];
            w.det = cross(w.u1, w.u2);

            // Third side flush with edge k.
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                if (dot(inward[k], w.apex - hull[k]) <= tol) continue;  // apex must lie inside edge k's half-plane
                const double c1 = cross(w.u1, dir[k]);
                const double c2 = cross(w.u2, dir[k]);
                if (std::abs(c1) <= 1e-12 || std::abs(c2) <= 1e-12) continue;
                const double s = cross(hull[k] - w.apex, dir[k]) / c1;
                const double t = cross(hull[k] - w.apex, dir[k]) / c2;
                if (s <= tol || t <= tol) continue;
                consider(w, s, t);
            }

            // Third side pivoting on vertex m, which is the side's midpoint.
            for (std::size_t m = 0; m < n; ++m) {
                const Point2 rel = hull[m] - w.apex;
                const double alpha = cross(rel, w.u2) / w.det;
                const double beta = cross(w.u1, rel) / w.det;
                if (alpha <= tol || beta <= tol) continue;
                const double s = 2.0 * alpha;
                const double t = 2.0 * beta;
                const Point2 x1 = w.apex + s * w.u1;
                const Point2 x2 = w.apex + t * w.u2;
                const double side_len = distance(x1, x2);
                const double apex_side = orient(x1, x2, w.apex) > 0.0 ? 1.0 : -1.0;
                const Point2 prev = hull[(m + n - 1) % n];
                const Point2 next = hull[(m + 1) % n];
                if (apex_side * orient(x1, x2, prev) / side_len < -tol) continue;
                if (apex_side * orient(x1, x2, next) / side_len < -tol) continue;
                consider(w, s, t);
            }
        }
    }

    if (!std::isfinite(best_area)) {
        throw Error(ErrorKind::DegenerateInput, "no enclosing triangle found");
    }
    if (best.signed_area() < 0.0) std::swap(best.b, best.c);
    return best;
}

}  // namespace lvef

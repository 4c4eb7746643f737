#pragma once

// Binary-mask and polygon primitives.
//
// Coordinates are in pixel units with x = column and y = row; pixel (i, j)
// has its center at (i, j). "Counterclockwise" everywhere means a positive
// shoelace area in that (x, y) frame.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lvef {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
    friend constexpr Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
    friend constexpr bool operator==(Point2, Point2) = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
/// Twice the signed area of (o, a, b); positive for a left turn.
constexpr double orient(Point2 o, Point2 a, Point2 b) { return cross(a - o, b - o); }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
constexpr Point2 midpoint(Point2 a, Point2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

/// W x H grid of {0,1} pixels, row-major.
class BinaryMask {
public:
    BinaryMask(int width, int height);
    BinaryMask(int width, int height, std::vector<std::uint8_t> pixels);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    bool in_bounds(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width_ && y < height_; }
    bool at(int x, int y) const noexcept { return in_bounds(x, y) && pixels_[index(x, y)] != 0; }
    void set(int x, int y, bool value = true);

    std::size_t count() const noexcept;
    bool empty() const noexcept { return count() == 0; }

    std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> pixels_;
};

/// Ordered, implicitly closed polygon.
struct Contour {
    std::vector<Point2> points;

    std::size_t size() const noexcept { return points.size(); }
    const Point2& operator[](std::size_t i) const { return points[i]; }
    /// i-th edge runs from points[i] to points[(i + 1) % size()].
    Point2 edge_end(std::size_t i) const { return points[(i + 1) % points.size()]; }
};

struct Triangle {
    Point2 a;
    Point2 b;
    Point2 c;

    double signed_area() const { return 0.5 * orient(a, b, c); }
    double area() const { return std::abs(signed_area()); }
    Point2 vertex(int i) const { return i == 0 ? a : (i == 1 ? b : c); }
};

/// Shoelace signed area; positive for counterclockwise order.
double signed_area(std::span<const Point2> polygon);

/// 1e-6 x bounding-box diagonal of the points: the containment and
/// collinearity tolerance used across the geometry routines.
double geometric_tolerance(std::span<const Point2> points);

/// Keeps only the largest 8-connected foreground component. Ties go to the
/// component reached first in raster order.
BinaryMask largest_component(const BinaryMask& mask);

/// Number of 8-connected foreground components.
int count_components(const BinaryMask& mask);

/// Moore-neighbor trace of the largest 8-connected component's outer
/// boundary over pixel centers, counterclockwise, starting at the
/// component's first pixel in raster order.
/// Throws EmptyMask or DegenerateRegion.
Contour extract_contour(const BinaryMask& mask);

/// Foreground pixel count of the largest 8-connected component.
double mask_area(const BinaryMask& mask);

/// Counterclockwise hull without collinear vertices. Throws DegenerateInput.
Contour convex_hull(std::span<const Point2> points);

/// Minimum-area triangle enclosing a convex counterclockwise polygon. The
/// result always has at least one side flush with a hull edge.
/// Throws DegenerateInput for non-convex or collinear input.
Triangle min_enclosing_triangle(const Contour& hull);

/// Pixel (i, j) is set iff its center lies inside or on the polygon under
/// the even-odd rule.
BinaryMask rasterize_polygon(const Contour& polygon, int width, int height);

/// All intersections of the ray origin + t * direction (t >= 0) with the
/// polygon's edges, sorted by t. A hit on a shared vertex is reported once.
std::vector<Point2> intersect_ray_polygon(Point2 origin, Point2 direction, const Contour& polygon);

struct NearestPoint {
    Point2 point;
    double distance = 0.0;
};

/// Closest point on the closed polyline (edges, not only vertices).
NearestPoint nearest_point_on_contour(Point2 p, const Contour& contour);

/// True when no two non-adjacent edges touch or cross.
bool is_simple(const Contour& polygon);

/// True if p lies inside or on the triangle, within tol.
bool triangle_contains(const Triangle& t, Point2 p, double tol);

}  // namespace lvef

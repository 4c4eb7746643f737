#include "lvef/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "lvef/error.hpp"

namespace lvef {

namespace {

constexpr std::array<std::array<int, 2>, 8> kMoore = {{
    {-1, 0},   // W
    {-1, -1},  // NW
    {0, -1},   // N
    {1, -1},   // NE
    {1, 0},    // E
    {1, 1},    // SE
    {0, 1},    // S
    {-1, 1},   // SW
}};

int moore_index(int dx, int dy) {
    for (int k = 0; k < 8; ++k) {
        if (kMoore[k][0] == dx && kMoore[k][1] == dy) return k;
    }
    return -1;
}

struct Labeling {
    std::vector<int> labels;  // -1 background, otherwise component id
    std::vector<std::size_t> sizes;
};

Labeling label_components(const BinaryMask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    Labeling out;
    out.labels.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), -1);
    std::vector<std::pair<int, int>> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * w + x;
            if (!mask.at(x, y) || out.labels[idx] >= 0) continue;
            const int id = static_cast<int>(out.sizes.size());
            std::size_t size = 0;
            out.labels[idx] = id;
            stack.emplace_back(x, y);
            while (!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                ++size;
                for (const auto& d : kMoore) {
                    const int nx = cx + d[0];
                    const int ny = cy + d[1];
                    if (!mask.at(nx, ny)) continue;
                    const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
                    if (out.labels[nidx] >= 0) continue;
                    out.labels[nidx] = id;
                    stack.emplace_back(nx, ny);
                }
            }
            out.sizes.push_back(size);
        }
    }
    return out;
}

int largest_label(const Labeling& lab) {
    int best = -1;
    std::size_t best_size = 0;
    for (std::size_t i = 0; i < lab.sizes.size(); ++i) {
        if (lab.sizes[i] > best_size) {
            best_size = lab.sizes[i];
            best = static_cast<int>(i);
        }
    }
    return best;
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool segments_touch(Point2 a, Point2 b, Point2 c, Point2 d) {
    const int o1 = sign(orient(a, b, c));
    const int o2 = sign(orient(a, b, d));
    const int o3 = sign(orient(c, d, a));
    const int o4 = sign(orient(c, d, b));
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

}  // namespace

BinaryMask::BinaryMask(int width, int height) : BinaryMask(width, height, {}) {}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width <= 0 || height <= 0) {
        throw Error(ErrorKind::DimensionMismatch,
                    "mask dimensions must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
    }
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (pixels_.empty()) {
        pixels_.assign(n, 0);
    } else if (pixels_.size() != n) {
        throw Error(ErrorKind::DimensionMismatch,
                    "pixel buffer holds " + std::to_string(pixels_.size()) + " values, expected " + std::to_string(n));
    }
    for (std::size_t i = 0; i < pixels_.size(); ++i) {
        if (pixels_[i] > 1) {
            throw Error(ErrorKind::InvalidPixelValue, "pixel " + std::to_string(i) + " is " +
                                                          std::to_string(pixels_[i]) + ", expected 0 or 1");
        }
    }
}

void BinaryMask::set(int x, int y, bool value) {
    if (!in_bounds(x, y)) return;
    pixels_[index(x, y)] = value ? 1 : 0;
}

std::size_t BinaryMask::count() const noexcept {
    return static_cast<std::size_t>(std::count(pixels_.begin(), pixels_.end(), std::uint8_t{1}));
}

double signed_area(std::span<const Point2> polygon) {
    const std::size_t n = polygon.size();
    if (n < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        twice += cross(polygon[i], polygon[(i + 1) % n]);
    }
    return 0.5 * twice;
}

double geometric_tolerance(std::span<const Point2> points) {
    if (points.empty()) return 0.0;
    double min_x = points[0].x, max_x = points[0].x, min_y = points[0].y, max_y = points[0].y;
    for (const auto& p : points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    return 1e-6 * std::hypot(max_x - min_x, max_y - min_y);
}

BinaryMask largest_component(const BinaryMask& mask) {
    const Labeling lab = label_components(mask);
    BinaryMask out(mask.width(), mask.height());
    const int keep = largest_label(lab);
    if (keep < 0) return out;
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (lab.labels[static_cast<std::size_t>(y) * mask.width() + x] == keep) out.set(x, y);
        }
    }
    return out;
}

int count_components(const BinaryMask& mask) {
    return static_cast<int>(label_components(mask).sizes.size());
}

double mask_area(const BinaryMask& mask) {
    const Labeling lab = label_components(mask);
    const int keep = largest_label(lab);
    return keep < 0 ? 0.0 : static_cast<double>(lab.sizes[static_cast<std::size_t>(keep)]);
}

Contour extract_contour(const BinaryMask& mask) {
    const BinaryMask region = largest_component(mask);
    int sx = -1, sy = -1;
    for (int y = 0; y < region.height() && sx < 0; ++y) {
        for (int x = 0; x < region.width(); ++x) {
            if (region.at(x, y)) {
                sx = x;
                sy = y;
                break;
            }
        }
    }
    if (sx < 0) throw Error(ErrorKind::EmptyMask, "mask has no foreground pixel");

    std::vector<Point2> trace;
    trace.push_back({static_cast<double>(sx), static_cast<double>(sy)});

    // The raster-first pixel always has a non-region west neighbor.
    int cx = sx, cy = sy, back = 0;
    const std::size_t max_steps = 4 * static_cast<std::size_t>(region.width()) * region.height() + 8;
    for (std::size_t step = 0; step < max_steps; ++step) {
        int found = -1;
        for (int k = 1; k <= 8; ++k) {
            const int idx = (back + k) % 8;
            if (region.at(cx + kMoore[idx][0], cy + kMoore[idx][1])) {
                found = idx;
                break;
            }
        }
        if (found < 0) break;  // isolated pixel

        const int nx = cx + kMoore[found][0];
        const int ny = cy + kMoore[found][1];
        if (cx == sx && cy == sy && trace.size() > 1 && nx == static_cast<int>(trace[1].x) &&
            ny == static_cast<int>(trace[1].y)) {
            break;
        }
        const int prev = (found + 7) % 8;
        back = moore_index(cx + kMoore[prev][0] - nx, cy + kMoore[prev][1] - ny);
        cx = nx;
        cy = ny;
        trace.push_back({static_cast<double>(cx), static_cast<double>(cy)});
    }
    if (trace.size() > 1 && trace.back() == trace.front()) trace.pop_back();

    std::vector<Point2> distinct = trace;
    std::sort(distinct.begin(), distinct.end(),
              [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3) {
        throw Error(ErrorKind::DegenerateRegion,
                    "largest component has " + std::to_string(distinct.size()) + " boundary pixel(s)");
    }

    Contour out{std::move(trace)};
    if (signed_area(out.points) < 0.0) {
        std::reverse(out.points.begin() + 1, out.points.end());
    }
    return out;
}

Contour convex_hull(std::span<const Point2> points) {
    std::vector<Point2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) {
        throw Error(ErrorKind::DegenerateInput, "need at least 3 distinct points, got " + std::to_string(pts.size()));
    }
    const double tol = geometric_tolerance(pts);

    // A point is dropped when it sits within tol of the chord that skips it.
    auto not_left = [tol](Point2 o, Point2 a, Point2 b) {
        const double len = distance(o, b);
        return orient(o, a, b) <= tol * len;
    };

    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && not_left(hull[k - 2], hull[k - 1], p)) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        const Point2 p = pts[i];
        while (k >= lower && not_left(hull[k - 2], hull[k - 1], p)) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    if (hull.size() < 3) {
        throw Error(ErrorKind::DegenerateInput, "all points are collinear");
    }
    return Contour{std::move(hull)};
}

BinaryMask rasterize_polygon(const Contour& polygon, int width, int height) {
    BinaryMask out(width, height);
    const std::size_t n = polygon.size();
    if (n < 2) return out;

    constexpr double eps = 1e-9;
    double min_y = polygon[0].y, max_y = polygon[0].y;
    for (const auto& p : polygon.points) {
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const int row_lo = std::max(0, static_cast<int>(std::ceil(min_y - eps)));
    const int row_hi = std::min(height - 1, static_cast<int>(std::floor(max_y + eps)));

    auto fill_span = [&](int row, double x0, double x1) {
        const int lo = std::max(0, static_cast<int>(std::ceil(x0 - eps)));
        const int hi = std::min(width - 1, static_cast<int>(std::floor(x1 + eps)));
        for (int x = lo; x <= hi; ++x) out.set(x, row);
    };

    // Interior: even-odd scanline with half-open edge rule.
    std::vector<double> xs;
    for (int row = row_lo; row <= row_hi; ++row) {
        const double y = row;
        xs.clear();
        for (std::size_t i = 0; i < n; ++i) {
            const Point2 p = polygon[i];
            const Point2 q = polygon.edge_end(i);
            if (p.y == q.y) continue;
            const double lo = std::min(p.y, q.y);
            const double hi = std::max(p.y, q.y);
            if (y >= lo && y < hi) xs.push_back(p.x + (y - p.y) * (q.x - p.x) / (q.y - p.y));
        }
        std::sort(xs.begin(), xs.end());
        for (std::size_t i = 0; i + 1 < xs.size(); i += 2) fill_span(row, xs[i], xs[i + 1]);
    }

    // Boundary: pixel centers lying exactly on an edge.
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 p = polygon[i];
        const Point2 q = polygon.edge_end(i);
        const int lo = std::max(row_lo, static_cast<int>(std::ceil(std::min(p.y, q.y) - eps)));
        const int hi = std::min(row_hi, static_cast<int>(std::floor(std::max(p.y, q.y) + eps)));
        for (int row = lo; row <= hi; ++row) {
            if (std::abs(p.y - q.y) <= eps) {
                if (std::abs(p.y - row) <= eps) fill_span(row, std::min(p.x, q.x), std::max(p.x, q.x));
                continue;
            }
            const double x = p.x + (row - p.y) * (q.x - p.x) / (q.y - p.y);
            const double rx = std::round(x);
            if (std::abs(x - rx) <= eps) out.set(static_cast<int>(rx), row);
        }
    }
    return out;
}

std::vector<Point2> intersect_ray_polygon(Point2 origin, Point2 direction, const Contour& polygon) {
    struct Hit {
        double t;
        Point2 p;
    };
    std::vector<Hit> hits;
    const double dd = dot(direction, direction);
    if (dd == 0.0 || polygon.size() < 2) return {};
    constexpr double eps = 1e-12;

    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Point2 a = polygon[i];
        const Point2 b = polygon.edge_end(i);
        const Point2 e = b - a;
        const Point2 ao = a - origin;
        const double denom = cross(direction, e);
        const double scale = norm(direction) * norm(e);
        if (std::abs(denom) > eps * scale) {
            const double t = cross(ao, e) / denom;
            const double u = cross(ao, direction) / denom;
            if (t >= -eps && u >= -eps && u <= 1.0 + eps) {
                const double tc = std::max(t, 0.0);
                hits.push_back({tc, origin + tc * direction});
            }
        } else if (std::abs(cross(ao, direction)) <= eps * norm(ao) * norm(direction) + eps) {
            // Collinear edge: report the endpoints that lie on the ray.
            for (Point2 end : {a, b}) {
                const double t = dot(end - origin, direction) / dd;
                if (t >= -eps) hits.push_back({std::max(t, 0.0), end});
            }
        }
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& l, const Hit& r) { return l.t < r.t; });

    const double tol = std::max(geometric_tolerance(polygon.points), 1e-12);
    std::vector<Point2> out;
    for (const auto& h : hits) {
        if (!out.empty() && distance(out.back(), h.p) <= tol) continue;
        out.push_back(h.p);
    }
    return out;
}

NearestPoint nearest_point_on_contour(Point2 p, const Contour& contour) {
    NearestPoint best{contour.points.empty() ? p : contour[0], std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < contour.size(); ++i) {
        const Point2 a = contour[i];
        const Point2 b = contour.edge_end(i);
        const Point2 e = b - a;
        const double len2 = dot(e, e);
        const double t = len2 > 0.0 ? std::clamp(dot(p - a, e) / len2, 0.0, 1.0) : 0.0;
        const Point2 q = a + t * e;
        const double d = distance(p, q);
        if (d < best.distance) best = {q, d};
    }
    return best;
}

bool is_simple(const Contour& polygon) {
    const std::size_t n = polygon.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = polygon[i];
        const Point2 b = polygon.edge_end(i);
        if (a == b) return false;
        // Adjacent edges may only share their common vertex.
        const Point2 c = polygon.edge_end((i + 1) % n);
        if (orient(a, b, c) == 0.0 && dot(b - a, c - b) < 0.0) return false;
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (segments_touch(a, b, polygon[j], polygon.edge_end(j))) return false;
        }
    }
    return true;
}

bool triangle_contains(const Triangle& t, Point2 p, double tol) {
    const double s = t.signed_area() >= 0.0 ? 1.0 : -1.0;
    for (int i = 0; i < 3; ++i) {
        const Point2 u = t.vertex(i);
        const Point2 v = t.vertex((i + 1) % 3);
        const double len = distance(u, v);
        if (len == 0.0) return false;
        if (s * orient(u, v, p) / len < -tol) return false;
    }
    return true;
}

}  // namespace lvef

#include "polyrelax/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "polyrelax/errors.hpp"

namespace polyrelax {

namespace {

// z-component of (a - o) x (b - o): positive when o->a->b turns left.
double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

} // namespace

std::vector<Point> convex_hull(std::vector<Point> points) {
    std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const Point& a, const Point& b) {
                                 return a.x() == b.x() && a.y() == b.y();
                             }),
                 points.end());
    const std::size_t n = points.size();
    if (n < 3)
        throw DegenerateHullError("convex hull needs 3 distinct points");

    // Monotone chain; strict turns only, so collinear points are dropped.
    std::vector<Point> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower hull
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
        hull[k++] = points[i];
    }
    const std::size_t lower_end = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper hull
        while (k >= lower_end && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0)
            --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);  // last point repeats the first
    if (hull.size() < 3)
        throw DegenerateHullError("all points are collinear");
    return hull;
}

bool point_in_convex_polygon(const Point& q, const std::vector<Point>& hull,
                             double slack) {
    // Signed distance to each CCW edge must be >= -slack.
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point& a = hull[i];
        const Point& b = hull[(i + 1) % hull.size()];
        const double len = (b - a).norm();
        if (len == 0.0) continue;
        if (cross(a, b, q) / len < -slack) return false;
    }
    return true;
}

double distance_to_segment(const Point& q, const Point& a, const Point& b) {
    const Point ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (q - a).norm();
    const double t = std::clamp((q - a).dot(ab) / len2, 0.0, 1.0);
    return (q - (a + t * ab)).norm();
}

double distance_to_convex_polygon(const Point& q,
                                  const std::vector<Point>& hull) {
    if (point_in_convex_polygon(q, hull, 0.0)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i) {
        best = std::min(best, distance_to_segment(q, hull[i],
                                                  hull[(i + 1) % hull.size()]));
    }
    return best;
}

} // namespace polyrelax

#pragma once

#include <vector>

#include <Eigen/Core>

namespace polyrelax {

using Point = Eigen::Vector2d;

// Convex hull by the monotone-chain algorithm. Returns vertices in
// counter-clockwise order, collinear points dropped. Throws
// DegenerateHullError when all inputs are (numerically) collinear.
std::vector<Point> convex_hull(std::vector<Point> points);

// True when q lies inside or on the boundary of the CCW-ordered convex
// polygon, allowing `slack` of outward violation per edge.
bool point_in_convex_polygon(const Point& q, const std::vector<Point>& hull,
                             double slack = 0.0);

double distance_to_segment(const Point& q, const Point& a, const Point& b);

// Euclidean distance from q to the convex polygon (0 when inside).
double distance_to_convex_polygon(const Point& q,
                                  const std::vector<Point>& hull);

} // namespace polyrelax

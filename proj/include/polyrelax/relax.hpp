#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <vector>

#include "polyrelax/geometry.hpp"
#include "polyrelax/partition.hpp"

namespace polyrelax {

struct Line {
    double slope;
    double intercept;

    double at(double x) const noexcept { return slope * x + intercept; }
};

// One subinterval's relaxation: the triangle spanned by the secant and the
// two endpoint tangents. v_left/v_right lie on the graph; v_apex is the
// tangent intersection.
struct Triangle {
    Point v_left;
    Point v_right;
    Point v_apex;
    Curvature curvature;  // convex or concave, never linear

    // Piecewise-linear tangent pair through v_left -> v_apex -> v_right.
    double tangent_envelope(double x) const;
    // Secant through v_left -> v_right.
    double secant(double x) const;
    // Graph-side bounds at x: convex pieces have tangents below the secant.
    double lower(double x) const;
    double upper(double x) const;
};

// The full relaxation: one triangle per subinterval, consecutive triangles
// sharing a graph vertex.
struct TriangleChain {
    std::vector<Triangle> triangles;
    Partition partition;
    std::shared_ptr<const FunctionOracle> oracle;
    std::vector<double> bounds;  // per-triangle strength bound

    std::size_t size() const noexcept { return triangles.size(); }
    double max_bound() const;

    double lower_envelope(double x) const;
    double upper_envelope(double x) const;
};

enum class StopReason { tolerance_met, budget_exhausted };

struct RefineReport {
    Partition partition;
    std::size_t iterations = 0;    // bisections performed
    double final_bound = 0.0;      // max per-subinterval bound
    double final_exact = 0.0;      // exact strength of the final chain
    StopReason stop_reason = StopReason::tolerance_met;
    // Max bound after 0, 1, ..., iterations bisections (non-increasing).
    std::vector<double> bound_history;
};

// y = f(x0) + f'(x0) (x - x0).
Line tangent_line(const FunctionOracle& oracle, double x0);

// Through (a, f(a)) and (b, f(b)).
Line secant_line(const FunctionOracle& oracle, double a, double b);

// Intersection of the endpoint tangents; throws ParallelTangentsError when
// |f'(a) - f'(b)| <= tol_d.
Point tangent_intersection(const FunctionOracle& oracle, double a, double b,
                           double tol_d = kDefaultTolD);

TriangleChain build_chain(std::shared_ptr<const FunctionOracle> oracle,
                          const Partition& p);

// Max over triangles of the tangent/secant gap at the apex abscissa, where
// the piecewise-linear gap attains its maximum.
double exact_strength(const TriangleChain& chain);

// (b - a) |f'(a) - f'(b)| / 4, an upper bound on the subinterval's exact
// strength.
double bound_strength(const FunctionOracle& oracle, double a, double b);

// Bisects the max-bound subinterval (leftmost on ties) until the bound
// drops to eps (stop: tolerance_met) or max_parts points were added (stop:
// budget_exhausted). eps may be infinity (stop immediately) or 0 (pure
// budget mode).
RefineReport refine(const std::shared_ptr<const FunctionOracle>& oracle,
                    const Partition& p0, double eps, std::size_t max_parts);

// ceil(max(2, 1.5 sqrt((b-a) |f'(b)-f'(a)| / (2 delta)))): bisections that
// guarantee the bound drops below delta on [a, b].
std::size_t iteration_bound(const FunctionOracle& oracle, double a, double b,
                            double delta);

// Hausdorff distance estimate between the hull of the chain's vertices and
// the hull of sample_n graph samples (plus partition points); only hull
// vertices are scanned since the max is attained at one.
double estimate_hausdorff(const TriangleChain& chain, std::size_t sample_n);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace polyrelax

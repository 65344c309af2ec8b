#pragma once

#include <cstddef>
#include <vector>

#include "polyrelax/domain.hpp"
#include "polyrelax/oracle.hpp"

namespace polyrelax {

// Derivative-equality tolerance used by base_partition and
// tangent_intersection preconditions.
inline constexpr double kDefaultTolD = 1e-8;
// Curvature classification tolerance.
inline constexpr double kDefaultCurvatureTol = 1e-9;
// Default grid resolution for break-point detection.
inline constexpr std::size_t kDefaultGridN = 2048;

enum class Curvature { convex, concave, linear };

struct SubInterval {
    double a, b;       // a < b
    double fa, fb;     // cached oracle values
    double da, db;     // cached oracle derivatives
    Curvature curvature;
};

enum class Provenance { base, refined };

// Ordered points x_0 < ... < x_k spanning [lower, upper] plus the derived
// subinterval records. Immutable value; bisect returns a new partition.
struct Partition {
    std::vector<double> points;
    std::vector<SubInterval> subintervals;
    Provenance provenance = Provenance::base;

    std::size_t size() const noexcept { return subintervals.size(); }

    // Index of the subinterval containing x (clamped to the ends).
    std::size_t locate(double x) const;
};

// Scans the curvature proxy c(x) = f'(x+h) - f'(x-h), h = width/grid_n, for
// sign changes and localizes each by bisection to width <= tol. tol <= 0
// selects the default 1e-10 * width. Returned points are strictly interior
// and pairwise >= 2h apart (near-boundary and clustered roots are merged or
// dropped).
std::vector<double> detect_breakpoints(const FunctionOracle& oracle,
                                       const Domain& dom,
                                       std::size_t grid_n = kDefaultGridN,
                                       double tol = 0.0);

// Points = {lower} + breakpoints + {upper}; any subinterval whose end
// derivatives agree within tol_d gets its midpoint inserted (once per
// original subinterval). Throws DegenerateFunctionError if end derivatives
// still agree after insertion (locally linear function).
Partition base_partition(const FunctionOracle& oracle, const Domain& dom,
                         std::vector<double> breakpoints,
                         double tol_d = kDefaultTolD);

// Splits subinterval `index` at its midpoint; children inherit the parent's
// curvature label. Throws NumericalCollapseError when the midpoint equals an
// endpoint in floating point.
Partition bisect(const Partition& p, std::size_t index,
                 const FunctionOracle& oracle);

// Sign of f'(b) - f'(a): positive convex, negative concave, within tol
// linear. Cross-checked against the midpoint-secant test; disagreement
// throws InconsistentCurvatureError (usually a missed break point).
Curvature curvature(const FunctionOracle& oracle, double a, double b,
                    double tol = kDefaultCurvatureTol);

} // namespace polyrelax

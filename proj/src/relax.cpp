#include "polyrelax/relax.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace polyrelax {

namespace {

double lerp_y(const Point& p, const Point& q, double x) {
    return p.y() + (x - p.x()) * (q.y() - p.y()) / (q.x() - p.x());
}

// Apex from cached subinterval data; the public tangent_intersection
// re-queries the oracle and must agree bit-for-bit (deterministic oracle).
Point apex_from(const SubInterval& s, double tol_d) {
    if (std::fabs(s.da - s.db) <= tol_d)
        throw ParallelTangentsError(
            "tangents at " + std::to_string(s.a) + " and " + std::to_string(s.b) +
            " are parallel within tolerance");
    const double xs = (s.fb - s.fa + s.da * s.a - s.db * s.b) / (s.da - s.db);
    const double ys = s.fa + s.da * (xs - s.a);
    if (!std::isfinite(xs) || !std::isfinite(ys))
        throw NonFiniteError("tangent intersection is non-finite");
    return Point(xs, ys);
}

} // namespace

double Triangle::tangent_envelope(double x) const {
    return x <= v_apex.x() ? lerp_y(v_left, v_apex, x) : lerp_y(v_apex, v_right, x);
}

double Triangle::secant(double x) const { return lerp_y(v_left, v_right, x); }

double Triangle::lower(double x) const {
    return curvature == Curvature::convex ? tangent_envelope(x) : secant(x);
}

double Triangle::upper(double x) const {
    return curvature == Curvature::convex ? secant(x) : tangent_envelope(x);
}

double TriangleChain::max_bound() const {
    if (bounds.empty()) throw EmptyChainError("chain has no triangles");
    return *std::max_element(bounds.begin(), bounds.end());
}

double TriangleChain::lower_envelope(double x) const {
    return triangles[partition.locate(x)].lower(x);
}

double TriangleChain::upper_envelope(double x) const {
    return triangles[partition.locate(x)].upper(x);
}

Line tangent_line(const FunctionOracle& oracle, double x0) {
    const double f = oracle.value(x0);
    const double d = oracle.derivative(x0);
    if (!std::isfinite(f) || !std::isfinite(d))
        throw NonFiniteError("tangent data non-finite at x=" + std::to_string(x0));
    return Line{d, f - d * x0};
}

Line secant_line(const FunctionOracle& oracle, double a, double b) {
    if (b - a == 0.0)
        throw NumericalCollapseError("secant over a zero-width interval");
    const double fa = oracle.value(a);
    const double fb = oracle.value(b);
    const double slope = (fb - fa) / (b - a);
    return Line{slope, fa - slope * a};
}

Point tangent_intersection(const FunctionOracle& oracle, double a, double b,
                           double tol_d) {
    SubInterval s{a, b, oracle.value(a), oracle.value(b),
                  oracle.derivative(a), oracle.derivative(b), Curvature::convex};
    return apex_from(s, tol_d);
}

double bound_strength(const FunctionOracle& oracle, double a, double b) {
    return (b - a) * std::fabs(oracle.derivative(a) - oracle.derivative(b)) / 4.0;
}

TriangleChain build_chain(std::shared_ptr<const FunctionOracle> oracle,
                          const Partition& p) {
    if (p.subintervals.empty()) throw EmptyChainError("empty partition");
    TriangleChain chain;
    chain.partition = p;
    chain.oracle = std::move(oracle);
    chain.triangles.reserve(p.subintervals.size());
    chain.bounds.reserve(p.subintervals.size());
    for (const SubInterval& s : p.subintervals) {
        if (s.curvature == Curvature::linear)
            throw DegenerateFunctionError(
                "cannot build a triangle over a linear subinterval");
        const Point apex = apex_from(s, kDefaultTolD);
        if (!(s.a < apex.x() && apex.x() < s.b))
            throw ParallelTangentsError(
                "tangent intersection fell outside [" + std::to_string(s.a) +
                ", " + std::to_string(s.b) + "]; the piece is numerically linear");
        chain.triangles.push_back(
            Triangle{Point(s.a, s.fa), Point(s.b, s.fb), apex, s.curvature});
        chain.bounds.push_back((s.b - s.a) * std::fabs(s.da - s.db) / 4.0);
    }
    return chain;
}

double exact_strength(const TriangleChain& chain) {
    if (chain.triangles.empty()) throw EmptyChainError("chain has no triangles");
    double best = 0.0;
    for (const Triangle& t : chain.triangles) {
        // The tangent/secant gap is piecewise linear and vanishes at both
        // subinterval ends, so its maximum sits at the apex abscissa.
        best = std::max(best, std::fabs(t.v_apex.y() - t.secant(t.v_apex.x())));
    }
    return best;
}

RefineReport refine(const std::shared_ptr<const FunctionOracle>& oracle,
                    const Partition& p0, double eps, std::size_t max_parts) {
    if (std::isnan(eps) || eps < 0.0)
        throw NumericError("refine requires eps >= 0 or infinity");
    if (p0.subintervals.empty()) throw EmptyChainError("empty partition");

    Partition p = p0;
    std::vector<double> eb;
    eb.reserve(p.size());
    for (const SubInterval& s : p.subintervals)
        eb.push_back((s.b - s.a) * std::fabs(s.da - s.db) / 4.0);

    RefineReport report;
    std::size_t added = 0;
    for (;;) {
        const auto max_it = std::max_element(eb.begin(), eb.end());
        const std::size_t idx = static_cast<std::size_t>(max_it - eb.begin());
        const double worst = *max_it;  // leftmost among ties
        report.bound_history.push_back(worst);
        if (worst <= eps) {
            report.stop_reason = StopReason::tolerance_met;
            break;
        }
        if (added == max_parts) {
            report.stop_reason = StopReason::budget_exhausted;
            break;
        }
        p = bisect(p, idx, *oracle);
        const SubInterval& l = p.subintervals[idx];
        const SubInterval& r = p.subintervals[idx + 1];
        eb[idx] = (l.b - l.a) * std::fabs(l.da - l.db) / 4.0;
        eb.insert(eb.begin() + static_cast<std::ptrdiff_t>(idx) + 1,
                  (r.b - r.a) * std::fabs(r.da - r.db) / 4.0);
        ++added;
    }
    report.partition = std::move(p);
    report.iterations = added;
    report.final_bound = report.bound_history.back();
    report.final_exact = exact_strength(build_chain(oracle, report.partition));
    return report;
}

std::size_t iteration_bound(const FunctionOracle& oracle, double a, double b,
                            double delta) {
    if (!(delta > 0.0)) throw NumericError("iteration_bound requires delta > 0");
    const double gap = std::fabs(oracle.derivative(b) - oracle.derivative(a));
    const double v = 1.5 * std::sqrt((b - a) * gap / (2.0 * delta));
    return static_cast<std::size_t>(std::ceil(std::max(2.0, v)));
}

double estimate_hausdorff(const TriangleChain& chain, std::size_t sample_n) {
    if (sample_n < 64) throw NumericError("estimate_hausdorff requires sample_n >= 64");
    if (chain.triangles.empty()) throw EmptyChainError("chain has no triangles");
    const FunctionOracle& oracle = *chain.oracle;

    std::vector<Point> relax_pts;
    for (const Triangle& t : chain.triangles) {
        relax_pts.push_back(t.v_left);
        relax_pts.push_back(t.v_apex);
    }
    relax_pts.push_back(chain.triangles.back().v_right);

    const double lo = chain.partition.points.front();
    const double hi = chain.partition.points.back();
    std::vector<Point> graph_pts;
    graph_pts.reserve(sample_n + chain.partition.points.size());
    for (std::size_t j = 0; j < sample_n; ++j) {
        const double x = lo + (hi - lo) * static_cast<double>(j) /
                                  static_cast<double>(sample_n - 1);
        graph_pts.emplace_back(x, oracle.value(x));
    }
    for (double x : chain.partition.points) graph_pts.emplace_back(x, oracle.value(x));

    const std::vector<Point> hull_a = convex_hull(relax_pts);
    const std::vector<Point> hull_b = convex_hull(graph_pts);

    // The max over hull A is attained at one of its vertices.
    double worst = 0.0;
    for (const Point& v : hull_a)
        worst = std::max(worst, distance_to_convex_polygon(v, hull_b));
    return worst;
}

} // namespace polyrelax

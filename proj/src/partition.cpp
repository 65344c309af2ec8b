#include "polyrelax/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace polyrelax {

namespace {

SubInterval make_subinterval(const FunctionOracle& oracle, double a, double b,
                             Curvature curv) {
    return SubInterval{a, b,
                       oracle.value(a), oracle.value(b),
                       oracle.derivative(a), oracle.derivative(b), curv};
}

// Curvature proxy c(x) = f'(x+h) - f'(x-h), whose sign tracks f''.
double proxy(const FunctionOracle& oracle, double x, double h) {
    return oracle.derivative(x + h) - oracle.derivative(x - h);
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

} // namespace

std::size_t Partition::locate(double x) const {
    // Last point <= x, clamped so boundary queries map to a real subinterval.
    auto it = std::upper_bound(points.begin(), points.end(), x);
    std::size_t idx = it == points.begin()
                          ? 0
                          : static_cast<std::size_t>(it - points.begin()) - 1;
    if (idx >= subintervals.size()) idx = subintervals.size() - 1;
    return idx;
}

Curvature curvature(const FunctionOracle& oracle, double a, double b,
                    double tol) {
    const double da = oracle.derivative(a);
    const double db = oracle.derivative(b);
    const double diff = db - da;
    Curvature by_derivative;
    if (std::fabs(diff) <= tol) by_derivative = Curvature::linear;
    else if (diff > 0.0) by_derivative = Curvature::convex;
    else by_derivative = Curvature::concave;

    // Midpoint-secant cross-check: a convex piece lies below its secant.
    const double fa = oracle.value(a);
    const double fb = oracle.value(b);
    const double m = 0.5 * (a + b);
    const double fm = oracle.value(m);
    const double sm = fa + (fb - fa) * (m - a) / (b - a);
    const double scale = std::max({1.0, std::fabs(fa), std::fabs(fb)});
    if (by_derivative == Curvature::convex && fm > sm + tol * scale)
        throw InconsistentCurvatureError(
            "derivatives indicate convex but f(mid) lies above the secant on [" +
            std::to_string(a) + ", " + std::to_string(b) +
            "] — likely a missed break point");
    if (by_derivative == Curvature::concave && fm < sm - tol * scale)
        throw InconsistentCurvatureError(
            "derivatives indicate concave but f(mid) lies below the secant on [" +
            std::to_string(a) + ", " + std::to_string(b) +
            "] — likely a missed break point");
    return by_derivative;
}

std::vector<double> detect_breakpoints(const FunctionOracle& oracle,
                                       const Domain& dom, std::size_t grid_n,
                                       double tol) {
    if (grid_n < 16) throw NumericError("detect_breakpoints requires grid_n >= 16");
    const double width = dom.width();
    if (tol <= 0.0) tol = 1e-10 * width;
    const double h = width / static_cast<double>(grid_n);

    // Proxy values at interior grid points x_j = lower + j h, j = 1..grid_n-1;
    // x_j +- h stays inside the domain.
    std::vector<double> xs, cs;
    xs.reserve(grid_n - 1);
    cs.reserve(grid_n - 1);
    for (std::size_t j = 1; j < grid_n; ++j) {
        const double x = dom.lower + static_cast<double>(j) * h;
        xs.push_back(x);
        cs.push_back(proxy(oracle, x, h));
    }

    std::vector<double> roots;
    for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
        const int s0 = sign_of(cs[j]);
        const int s1 = sign_of(cs[j + 1]);
        if (s0 == 0) {
            roots.push_back(xs[j]);
            continue;
        }
        if (s0 * s1 >= 0) continue;
        // Bisect c to localize the sign change.
        double lo = xs[j], hi = xs[j + 1];
        double clo = cs[j];
        for (int it = 0; it < 200 && hi - lo > tol; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double cm = proxy(oracle, mid, h);
            if (cm == 0.0) {
                lo = hi = mid;
                break;
            }
            if (sign_of(cm) == sign_of(clo)) {
                lo = mid;
                clo = cm;
            } else {
                hi = mid;
            }
        }
        roots.push_back(0.5 * (lo + hi));
    }
    if (sign_of(cs.back()) == 0) roots.push_back(xs.back());

    // Merge clusters closer than 2h and drop points within 2h of a boundary.
    std::sort(roots.begin(), roots.end());
    std::vector<double> merged;
    std::size_t i = 0;
    while (i < roots.size()) {
        std::size_t j = i + 1;
        double sum = roots[i];
        while (j < roots.size() && roots[j] - roots[j - 1] < 2.0 * h) {
            sum += roots[j];
            ++j;
        }
        merged.push_back(sum / static_cast<double>(j - i));
        i = j;
    }
    std::vector<double> result;
    for (double r : merged)
        if (r >= dom.lower + 2.0 * h && r <= dom.upper - 2.0 * h)
            result.push_back(r);
    return result;
}

Partition base_partition(const FunctionOracle& oracle, const Domain& dom,
                         std::vector<double> breakpoints, double tol_d) {
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i] > dom.lower && breakpoints[i] < dom.upper))
            throw NumericError("break point " + std::to_string(breakpoints[i]) +
                               " is not strictly inside the domain");
        if (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))
            throw NumericError("break points must be strictly increasing");
    }

    std::vector<double> raw;
    raw.push_back(dom.lower);
    raw.insert(raw.end(), breakpoints.begin(), breakpoints.end());
    raw.push_back(dom.upper);

    // Def. of the base partition: a subinterval whose end derivatives agree
    // gets its midpoint inserted, once; if the halves still have matching end
    // derivatives the function is locally linear and cannot be relaxed.
    std::vector<double> pts;
    for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
        const double a = raw[i];
        const double b = raw[i + 1];
        pts.push_back(a);
        if (std::fabs(oracle.derivative(a) - oracle.derivative(b)) <= tol_d) {
            const double m = 0.5 * (a + b);
            if (m <= a || m >= b)
                throw NumericalCollapseError(
                    "midpoint insertion collapsed onto a subinterval endpoint");
            if (std::fabs(oracle.derivative(a) - oracle.derivative(m)) <= tol_d ||
                std::fabs(oracle.derivative(m) - oracle.derivative(b)) <= tol_d)
                throw DegenerateFunctionError(
                    "end derivatives still equal after midpoint insertion; "
                    "the function is locally linear on [" + std::to_string(a) +
                    ", " + std::to_string(b) + "]");
            pts.push_back(m);
        }
    }
    pts.push_back(dom.upper);

    Partition p;
    p.points = pts;
    p.provenance = Provenance::base;
    p.subintervals.reserve(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Curvature c = curvature(oracle, pts[i], pts[i + 1]);
        if (c == Curvature::linear)
            throw DegenerateFunctionError(
                "subinterval [" + std::to_string(pts[i]) + ", " +
                std::to_string(pts[i + 1]) + "] is linear");
        p.subintervals.push_back(make_subinterval(oracle, pts[i], pts[i + 1], c));
    }
    return p;
}

Partition bisect(const Partition& p, std::size_t index,
                 const FunctionOracle& oracle) {
    if (index >= p.subintervals.size())
        throw Error("bisect: subinterval index out of range");
    const SubInterval& s = p.subintervals[index];
    const double m = 0.5 * (s.a + s.b);
    if (m <= s.a || m >= s.b)
        throw NumericalCollapseError(
            "subinterval [" + std::to_string(s.a) + ", " + std::to_string(s.b) +
            "] cannot be bisected in floating point");

    const double fm = oracle.value(m);
    const double dm = oracle.derivative(m);

    Partition out;
    out.points = p.points;
    out.points.insert(out.points.begin() + static_cast<std::ptrdiff_t>(index) + 1, m);
    out.provenance = Provenance::refined;
    out.subintervals = p.subintervals;
    // Children inherit the parent's curvature label.
    SubInterval left{s.a, m, s.fa, fm, s.da, dm, s.curvature};
    SubInterval right{m, s.b, fm, s.fb, dm, s.db, s.curvature};
    out.subintervals[index] = left;
    out.subintervals.insert(
        out.subintervals.begin() + static_cast<std::ptrdiff_t>(index) + 1, right);
    return out;
}

} // namespace polyrelax

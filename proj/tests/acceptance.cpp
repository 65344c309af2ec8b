// End-to-end acceptance run: ten independent criteria covering base
// partitions, relaxation strength, refinement behaviour, solver agreement,
// containment, convergence, derivative accuracy, and the worked cubic
// geometry. One PASS/FAIL line per criterion; exit is nonzero if any fail.
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "polyrelax/geometry.hpp"
#include "polyrelax/model.hpp"
#include "polyrelax/relax.hpp"
#include "polyrelax/simplex.hpp"

#include "helpers.hpp"

using namespace polyrelax;

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;

struct Bench {
    const char* text;
    double lo, hi;
    std::vector<double> expected_base;  // reference partition points
    double strength0;                   // bound strength of the base chain
    std::size_t count_eps1, count_eps01;  // sizes at eps = 0.1 / 0.01
    double cell50, cell100;             // budgeted strength reference cells
};

const std::vector<Bench>& benches() {
    static const std::vector<Bench> b = {
        {"sin(x)", 0.0, kTwoPi, {0.0, kPi, kTwoPi}, 1.5707, 12, 28, 0.0009,
         0.0009},
        {"x^3", -1.0, 1.0, {-1.0, 0.0, 1.0}, 0.7500, 6, 26, 0.0014, 0.0004},
        {"x*abs(x)", -2.0, 2.0, {-2.0, 0.0, 2.0}, 2.0000, 16, 32, 0.0078,
         0.0020},
        {"1/(1+exp(-x))", -5.0, 5.0, {-5.0, 0.0, 5.0}, 0.3042, 6, 14, 0.0009,
         4.32e-5},
    };
    return b;
}

std::shared_ptr<const FunctionOracle> oracle_of(const Bench& b) {
    return make_expr_oracle(b.text, Domain(b.lo, b.hi));
}

Partition base_of(const Bench& b,
                  const std::shared_ptr<const FunctionOracle>& f) {
    const Domain dom(b.lo, b.hi);
    return base_partition(*f, dom, detect_breakpoints(*f, dom));
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// 1. detected base partitions land on the curvature switch points
bool base_partitions_match() {
    for (const Bench& b : benches()) {
        auto f = oracle_of(b);
        Partition p = base_of(b, f);
        if (p.points.size() != b.expected_base.size()) return false;
        for (std::size_t i = 0; i < p.points.size(); ++i)
            if (!near(p.points[i], b.expected_base[i], 1e-6)) return false;
    }
    return true;
}

// 2. bound strengths of the base chains hit the reference values
bool base_strengths_match() {
    for (const Bench& b : benches()) {
        auto f = oracle_of(b);
        TriangleChain chain = build_chain(f, base_of(b, f));
        if (!near(chain.max_bound(), b.strength0, 1e-3)) return false;
    }
    return true;
}

// 3. tolerance-driven refinement lands on the reference subinterval counts
bool refinement_counts_match() {
    for (const Bench& b : benches()) {
        auto f = oracle_of(b);
        Partition p = base_of(b, f);
        const auto count = [&](double eps) {
            return refine(f, p, eps, 100000).partition.size();
        };
        const auto within2 = [](std::size_t got, std::size_t want) {
            const double diff =
                static_cast<double>(got) - static_cast<double>(want);
            return std::fabs(diff) <= 2.0;
        };
        if (!within2(count(0.1), b.count_eps1)) return false;
        if (!within2(count(0.01), b.count_eps01)) return false;
    }
    return true;
}

// 4. budgeted refinement tightens the bound toward the reference cells.
// KNOWN RED: two reference cells lie below what midpoint bisection can
// reach at these budgets. Greedy max-bound bisection is optimal among
// midpoint schemes (per-piece bounds shrink under splitting because f' is
// monotone on each base piece), yet its best values are 0.004536 for sin
// at budget 50 (allowed 0.0036) and 1.8493e-4 for the logistic at budget
// 100 (allowed 1.728e-4). The check is kept as stated rather than widened.
bool budgeted_strengths_match() {
    bool ok = true;
    for (const Bench& b : benches()) {
        auto f = oracle_of(b);
        Partition p = base_of(b, f);
        const double s0 = build_chain(f, p).max_bound();
        const double s50 = refine(f, p, 0.0, 50).final_bound;
        const double s100 = refine(f, p, 0.0, 100).final_bound;
        if (!(s50 <= 4.0 * b.cell50)) ok = false;
        if (!(s100 <= 4.0 * b.cell100)) ok = false;
        if (!(s50 < s0 && s100 < s0)) ok = false;
        if (!(s100 <= s50)) ok = false;
    }
    return ok;
}

// 5. gamma relaxation lower bounds at both tolerances
bool gamma_bounds_match() {
    auto f = make_expr_oracle("gamma(x)", Domain(0.5, 5.0));
    const Domain dom(0.5, 5.0);
    Partition p = base_partition(*f, dom, detect_breakpoints(*f, dom));

    TriangleChain coarse = build_chain(f, p);
    const YBounds loose = bound_y(coarse, ObjSense::minimize);
    if (!near(loose.milp, -10.5610, 1e-2)) return false;
    if (!near(loose.lp, -10.5610, 1e-2)) return false;

    TriangleChain fine = build_chain(f, refine(f, p, 0.001, 100000).partition);
    const YBounds tight = bound_y(fine, ObjSense::minimize);
    if (!near(tight.milp, 0.8855, 1e-3)) return false;
    if (!near(tight.lp, 0.8855, 1e-3)) return false;
    return true;
}

// 6. ten thousand graph samples per function stay between the envelopes
bool containment_holds() {
    for (const Bench& b : benches()) {
        auto f = oracle_of(b);
        Partition p = refine(f, base_of(b, f), 0.1, 100000).partition;
        TriangleChain chain = build_chain(f, p);
        for (int i = 0; i < 10000; ++i) {
            const double x = b.lo + (b.hi - b.lo) * i / 9999.0;
            const double fx = f->value(x);
            if (fx < chain.lower_envelope(x) - 1e-9) return false;
            if (fx > chain.upper_envelope(x) + 1e-9) return false;
        }
    }
    return true;
}

// 7. relaxed switch variables stay integral and the objective matches the
//    convex-combination formulation
bool relaxation_is_locally_ideal() {
    auto f = make_expr_oracle("sin(x)", Domain(0.0, kTwoPi));
    Partition p = base_partition(*f, Domain(0.0, kTwoPi), {kPi});
    std::mt19937_64 rng = testutil::seeded_rng(314);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);

    for (std::size_t k = 2; k <= 8; ++k) {
        while (p.size() < k) p = bisect(p, 0, *f);
        TriangleChain chain = build_chain(f, p);
        ConstraintSystem relaxed = relax_integrality(build_milp(chain));
        ConstraintSystem hull = build_lp(chain);

        for (int trial = 0; trial < 100; ++trial) {
            const Objective obj{ObjSense::minimize,
                                {{"x", coef(rng)}, {"y", coef(rng)}}};
            SimplexResult a = solve_lp(relaxed, obj);
            SimplexResult b = solve_lp(hull, obj);
            if (a.status != SimplexResult::Status::optimal) return false;
            if (b.status != SimplexResult::Status::optimal) return false;
            if (std::fabs(a.objective - b.objective) > 1e-7) return false;
            for (const auto& [name, val] : a.point)
                if (name.rfind("z_", 0) == 0 &&
                    std::fabs(val - std::round(val)) > 1e-7)
                    return false;
        }
    }
    return true;
}

// 8. long refinement run: monotone bounds, Hausdorff dominated by the
//    strength, consecutive hulls nested
bool convergence_holds() {
    auto f = make_expr_oracle("sin(x)", Domain(0.0, kTwoPi));
    Partition p = base_partition(*f, Domain(0.0, kTwoPi), {kPi});

    auto hull_of = [&](const TriangleChain& chain) {
        std::vector<Point> pts;
        for (const Triangle& t : chain.triangles) {
            pts.push_back(t.v_left);
            pts.push_back(t.v_apex);
        }
        pts.push_back(chain.triangles.back().v_right);
        return convex_hull(pts);
    };

    TriangleChain chain = build_chain(f, p);
    std::vector<Point> prev_hull = hull_of(chain);
    double prev_bound = chain.max_bound();

    for (int step = 1; step <= 200; ++step) {
        p = refine(f, p, 0.0, 1).partition;
        chain = build_chain(f, p);

        const double bound = chain.max_bound();
        if (bound > prev_bound + 1e-15) return false;
        prev_bound = bound;

        std::vector<Point> hull = hull_of(chain);
        for (const Point& v : hull)
            if (!point_in_convex_polygon(v, prev_hull, 1e-9)) return false;
        prev_hull = hull;

        if (step % 20 == 0) {
            const double dh = estimate_hausdorff(chain, 2048);
            if (dh > exact_strength(chain) + 1e-6) return false;
        }
    }
    return prev_bound < 1e-3;
}

// 9. dual-number derivatives track central finite differences
bool derivatives_match() {
    struct Probe {
        const char* text;
        double lo, hi;
    };
    const Probe probes[] = {
        {"sin(x)", -6.0, 6.0},  {"cos(x)", -6.0, 6.0}, {"tan(x)", -1.4, 1.4},
        {"exp(x)", -3.0, 3.0},  {"log(x)", 0.1, 10.0}, {"sqrt(x)", 0.01, 9.0},
        {"abs(x)", 0.05, 2.0},  {"erf(x)", -2.0, 2.0}, {"gamma(x)", 0.5, 8.0},
        {"x^3", -2.0, 2.0},
    };
    std::mt19937_64 rng = testutil::seeded_rng(42);
    for (const Probe& probe : probes) {
        ExprPtr ast = parse_expression(probe.text);
        std::uniform_real_distribution<double> dist(probe.lo, probe.hi);
        auto value_at = [&](double x) { return eval_dual(ast, x).val; };
        for (int i = 0; i < 1000; ++i) {
            const double x = dist(rng);
            const double ad = eval_dual(ast, x).der;
            const double fd = testutil::central_diff(value_at, x);
            if (std::fabs(ad - fd) > 1e-6 * std::max(1.0, std::fabs(fd)))
                return false;
        }
    }
    return true;
}

// 10. worked cubic: apex and graph-vertex geometry
bool cubic_geometry_matches() {
    auto f = make_expr_oracle("x^3", Domain(-1.5, 2.0));
    Partition p = base_partition(*f, Domain(-1.5, 2.0), {0.0});
    TriangleChain chain = build_chain(f, p);
    if (chain.size() != 2) return false;

    const Triangle& t0 = chain.triangles[0];
    const Triangle& t1 = chain.triangles[1];
    if (!near(t0.v_apex.x(), -1.0, 1e-2)) return false;
    if (!near(t0.v_apex.y(), 0.0, 1e-2)) return false;
    if (!near(t1.v_apex.x(), 1.33, 1e-2)) return false;
    if (!near(t1.v_apex.y(), 0.0, 1e-2)) return false;

    if (!near(t0.v_left.x(), -1.5, 1e-12)) return false;
    if (!near(t0.v_left.y(), -3.375, 1e-12)) return false;
    if (!near(t0.v_right.x(), 0.0, 1e-12)) return false;
    if (!near(t0.v_right.y(), 0.0, 1e-12)) return false;
    if (!near(t1.v_left.x(), 0.0, 1e-12)) return false;
    if (!near(t1.v_right.x(), 2.0, 1e-12)) return false;
    if (!near(t1.v_right.y(), 8.0, 1e-12)) return false;
    return true;
}

} // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<bool()> run;
    };
    const std::vector<Criterion> criteria = {
        {"base partitions recover the curvature switch points (1e-6)",
         base_partitions_match},
        {"base-chain bound strengths match reference values (1e-3)",
         base_strengths_match},
        {"tolerance-driven refinement reaches reference counts (+/-2)",
         refinement_counts_match},
        {"budgeted refinement tightens strengths toward reference cells",
         budgeted_strengths_match},
        {"gamma y-bounds reach reference values at both tolerances",
         gamma_bounds_match},
        {"10^4 graph samples per function stay inside the envelopes (1e-9)",
         containment_holds},
        {"relaxed switches stay integral and match the hull LP (1e-7)",
         relaxation_is_locally_ideal},
        {"200 refinements: monotone bounds, dominated Hausdorff, nested hulls",
         convergence_holds},
        {"dual-number derivatives track finite differences (1e-6 relative)",
         derivatives_match},
        {"worked cubic geometry: apexes (1e-2) and graph vertices (1e-12)",
         cubic_geometry_matches},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        bool ok = false;
        std::string note;
        try {
            ok = criteria[i].run();
        } catch (const std::exception& e) {
            note = std::string(" (exception: ") + e.what() + ")";
        }
        std::printf("[%s] criterion %zu: %s%s\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].label, note.c_str());
        if (!ok) ++failures;
    }
    std::printf("%zu of %zu criteria passed\n", criteria.size() - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}

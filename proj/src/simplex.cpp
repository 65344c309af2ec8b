#include "polyrelax/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace polyrelax {

namespace {

constexpr double kInfBound = std::numeric_limits<double>::infinity();
constexpr double kCostTol = 1e-9;   // reduced-cost optimality threshold
constexpr double kPivotTol = 1e-9;  // smallest acceptable pivot magnitude
constexpr double kFeasTol = 1e-7;   // phase-1 objective feasibility cut-off
constexpr std::size_t kMaxPivots = 100000;
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

enum class VStat { basic, at_lower, at_upper, free_at_zero };

// Dense bounded-variable tableau. Nonbasic variables sit at a bound (or at
// zero when free); basic values are recomputed from the pivoted right side
// every iteration, so bound flips need no bookkeeping.
struct Tableau {
    Eigen::MatrixXd T;    // B^-1 A, m x N
    Eigen::VectorXd rhs;  // B^-1 b
    std::vector<double> lo, up;
    std::vector<VStat> stat;
    std::vector<std::size_t> basis;  // basis[i] = column basic in row i
    std::size_t pivots = 0;

    std::size_t rows() const { return static_cast<std::size_t>(T.rows()); }
    std::size_t cols() const { return static_cast<std::size_t>(T.cols()); }

    double nb_value(std::size_t j) const {
        switch (stat[j]) {
            case VStat::at_lower: return lo[j];
            case VStat::at_upper: return up[j];
            default: return 0.0;
        }
    }

    Eigen::VectorXd basic_values() const {
        Eigen::VectorXd xb = rhs;
        for (std::size_t j = 0; j < cols(); ++j) {
            if (stat[j] == VStat::basic) continue;
            const double v = nb_value(j);
            if (v != 0.0) xb -= T.col(j) * v;
        }
        return xb;
    }

    void pivot(std::size_t r, std::size_t c, VStat leaving_stat) {
        const double piv = T(r, c);
        T.row(r) /= piv;
        rhs(static_cast<Eigen::Index>(r)) /= piv;
        for (std::size_t i = 0; i < rows(); ++i) {
            if (i == r) continue;
            const double f = T(i, c);
            if (f == 0.0) continue;
            T.row(i) -= f * T.row(r);
            rhs(static_cast<Eigen::Index>(i)) -=
                f * rhs(static_cast<Eigen::Index>(r));
        }
        // Kill residual round-off in the entering column.
        for (std::size_t i = 0; i < rows(); ++i) T(i, c) = i == r ? 1.0 : 0.0;
        stat[basis[r]] = leaving_stat;
        basis[r] = c;
        stat[c] = VStat::basic;
        ++pivots;
    }
};

enum class LoopResult { optimal, unbounded };

// Primal simplex minimizing c^T x with Bland's smallest-index rule for both
// the entering and the leaving choice.
LoopResult minimize(Tableau& tab, const Eigen::VectorXd& c) {
    const std::size_t m = tab.rows();
    const std::size_t n = tab.cols();
    for (;;) {
        if (tab.pivots >= kMaxPivots)
            throw MaxIterationsError("simplex exceeded the pivot limit");

        Eigen::VectorXd cb(static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i)
            cb(static_cast<Eigen::Index>(i)) = c(static_cast<Eigen::Index>(tab.basis[i]));
        const Eigen::RowVectorXd y = cb.transpose() * tab.T;

        // Entering column: smallest index with an improving direction.
        std::size_t enter = kNone;
        double sigma = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (tab.stat[j] == VStat::basic) continue;
            if (!(tab.up[j] - tab.lo[j] > 0.0)) continue;  // fixed column
            const double zc = c(static_cast<Eigen::Index>(j)) -
                              y(static_cast<Eigen::Index>(j));
            if ((tab.stat[j] == VStat::at_lower ||
                 tab.stat[j] == VStat::free_at_zero) &&
                zc < -kCostTol) {
                enter = j;
                sigma = 1.0;
                break;
            }
            if ((tab.stat[j] == VStat::at_upper ||
                 tab.stat[j] == VStat::free_at_zero) &&
                zc > kCostTol) {
                enter = j;
                sigma = -1.0;
                break;
            }
        }
        if (enter == kNone) return LoopResult::optimal;

        // Ratio test: basic row bounds and the entering column's own range.
        const Eigen::VectorXd xb = tab.basic_values();
        double best_t = tab.up[enter] - tab.lo[enter];  // own-bound flip cap
        std::size_t leave_row = kNone;
        VStat leave_stat = VStat::at_lower;
        for (std::size_t i = 0; i < m; ++i) {
            const double a = sigma * tab.T(static_cast<Eigen::Index>(i),
                                           static_cast<Eigen::Index>(enter));
            if (std::fabs(a) <= kPivotTol) continue;
            const std::size_t bi = tab.basis[i];
            double t;
            VStat hit;
            if (a > 0.0) {  // basic value decreases toward its lower bound
                if (tab.lo[bi] == -kInfBound) continue;
                t = (xb(static_cast<Eigen::Index>(i)) - tab.lo[bi]) / a;
                hit = VStat::at_lower;
            } else {  // basic value increases toward its upper bound
                if (tab.up[bi] == kInfBound) continue;
                t = (xb(static_cast<Eigen::Index>(i)) - tab.up[bi]) / a;
                hit = VStat::at_upper;
            }
            if (t < 0.0) t = 0.0;  // shield against round-off
            if (t < best_t ||
                (t == best_t && leave_row != kNone && bi < tab.basis[leave_row])) {
                best_t = t;
                leave_row = i;
                leave_stat = hit;
            }
        }

        if (leave_row == kNone) {
            if (best_t == kInfBound) return LoopResult::unbounded;
            // Bound flip: the entering variable crosses to its other bound.
            tab.stat[enter] =
                sigma > 0.0 ? VStat::at_upper : VStat::at_lower;
            ++tab.pivots;
            continue;
        }
        tab.pivot(leave_row, enter, leave_stat);
    }
}

} // namespace

SimplexResult solve_lp(const ConstraintSystem& sys, const Objective& obj) {
    const std::size_t n = sys.variables.size();
    const std::size_t m = sys.constraints.size();

    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t j = 0; j < n; ++j) {
        const VarDef& v = sys.variables[j];
        if (v.kind == VarKind::binary)
            throw Error("solve_lp requires a continuous system; relax integrality first");
        if (!index.emplace(v.name, j).second)
            throw Error("duplicate variable name '" + v.name + "'");
    }

    // Column layout: structural | slack (one per inequality) | artificial.
    std::size_t n_slack = 0;
    for (const LinConstraint& con : sys.constraints)
        if (con.sense != Sense::eq) ++n_slack;
    const std::size_t total = n + n_slack + m;

    Tableau tab;
    tab.T = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                  static_cast<Eigen::Index>(total));
    tab.rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    tab.lo.assign(total, 0.0);
    tab.up.assign(total, kInfBound);
    tab.stat.assign(total, VStat::at_lower);
    tab.basis.resize(m);

    for (std::size_t j = 0; j < n; ++j) {
        const VarDef& v = sys.variables[j];
        if (v.lower > v.upper)
            return {SimplexResult::Status::infeasible, 0.0, {}};
        tab.lo[j] = v.lower;
        tab.up[j] = v.upper;
        if (v.lower != -kInfBound) tab.stat[j] = VStat::at_lower;
        else if (v.upper != kInfBound) tab.stat[j] = VStat::at_upper;
        else tab.stat[j] = VStat::free_at_zero;
    }

    std::size_t slack_cursor = n;
    for (std::size_t i = 0; i < m; ++i) {
        const LinConstraint& con = sys.constraints[i];
        for (const LinTerm& term : con.terms) {
            auto it = index.find(term.var);
            if (it == index.end())
                throw Error("constraint references unknown variable '" + term.var + "'");
            tab.T(static_cast<Eigen::Index>(i),
                  static_cast<Eigen::Index>(it->second)) += term.coef;
        }
        tab.rhs(static_cast<Eigen::Index>(i)) = con.rhs;
        if (con.sense != Sense::eq) {
            // Slack with coefficient +1; sense encoded in its bounds.
            tab.T(static_cast<Eigen::Index>(i),
                  static_cast<Eigen::Index>(slack_cursor)) = 1.0;
            if (con.sense == Sense::le) {
                tab.lo[slack_cursor] = 0.0;
                tab.up[slack_cursor] = kInfBound;
                tab.stat[slack_cursor] = VStat::at_lower;
            } else {
                tab.lo[slack_cursor] = -kInfBound;
                tab.up[slack_cursor] = 0.0;
                tab.stat[slack_cursor] = VStat::at_upper;
            }
            ++slack_cursor;
        }
    }

    // Sign-flip rows so every initial residual is nonnegative, then seat one
    // artificial per row as the starting basis.
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total));
    for (std::size_t j = 0; j < n + n_slack; ++j)
        x0(static_cast<Eigen::Index>(j)) = tab.nb_value(j);
    Eigen::VectorXd resid =
        tab.rhs - tab.T.leftCols(static_cast<Eigen::Index>(n + n_slack)) *
                      x0.head(static_cast<Eigen::Index>(n + n_slack));
    for (std::size_t i = 0; i < m; ++i) {
        if (resid(static_cast<Eigen::Index>(i)) < 0.0) {
            tab.T.row(static_cast<Eigen::Index>(i)) *= -1.0;
            tab.rhs(static_cast<Eigen::Index>(i)) *= -1.0;
        }
        const std::size_t art = n + n_slack + i;
        tab.T(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(art)) = 1.0;
        tab.lo[art] = 0.0;
        tab.up[art] = kInfBound;
        tab.stat[art] = VStat::basic;
        tab.basis[i] = art;
    }

    // Phase 1: drive the artificial sum to zero.
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total));
    for (std::size_t i = 0; i < m; ++i)
        c1(static_cast<Eigen::Index>(n + n_slack + i)) = 1.0;
    if (minimize(tab, c1) == LoopResult::unbounded)
        throw NumericError("phase-1 simplex reported unbounded; numerical trouble");
    {
        const Eigen::VectorXd xb = tab.basic_values();
        double infeas = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (tab.basis[i] >= n + n_slack)
                infeas += std::fabs(xb(static_cast<Eigen::Index>(i)));
        for (std::size_t j = n + n_slack; j < total; ++j)
            if (tab.stat[j] != VStat::basic) infeas += tab.nb_value(j);
        if (infeas > kFeasTol)
            return {SimplexResult::Status::infeasible, 0.0, {}};
    }

    // Phase 2: pin artificials at zero and optimize the real objective.
    for (std::size_t j = n + n_slack; j < total; ++j) {
        tab.lo[j] = 0.0;
        tab.up[j] = 0.0;
        if (tab.stat[j] != VStat::basic) tab.stat[j] = VStat::at_lower;
    }
    const bool maximize = obj.sense == ObjSense::maximize;
    Eigen::VectorXd c2 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total));
    for (const LinTerm& term : obj.terms) {
        auto it = index.find(term.var);
        if (it == index.end())
            throw Error("objective references unknown variable '" + term.var + "'");
        c2(static_cast<Eigen::Index>(it->second)) +=
            maximize ? -term.coef : term.coef;
    }
    if (minimize(tab, c2) == LoopResult::unbounded)
        return {SimplexResult::Status::unbounded, 0.0, {}};

    SimplexResult result;
    result.status = SimplexResult::Status::optimal;
    const Eigen::VectorXd xb = tab.basic_values();
    std::vector<double> x(total);
    for (std::size_t j = 0; j < total; ++j)
        x[j] = tab.stat[j] == VStat::basic ? 0.0 : tab.nb_value(j);
    for (std::size_t i = 0; i < m; ++i)
        x[tab.basis[i]] = xb(static_cast<Eigen::Index>(i));
    double value = 0.0;
    for (const LinTerm& term : obj.terms) value += term.coef * x[index[term.var]];
    result.objective = value;
    for (std::size_t j = 0; j < n; ++j)
        result.point[sys.variables[j].name] = x[j];
    return result;
}

} // namespace polyrelax

#pragma once

#include <map>
#include <string>

#include "polyrelax/model.hpp"

namespace polyrelax {

struct SimplexResult {
    enum class Status { optimal, infeasible, unbounded };

    Status status;
    double objective = 0.0;
    std::map<std::string, double> point;
};

// Two-phase bounded-variable primal simplex (dense tableau, Bland's rule).
// Requires an all-continuous system; throws MaxIterationsError after 1e5
// pivots.
SimplexResult solve_lp(const ConstraintSystem& sys, const Objective& obj);

} // namespace polyrelax

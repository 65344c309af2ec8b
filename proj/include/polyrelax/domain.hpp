#pragma once

#include <cmath>

#include "polyrelax/errors.hpp"

namespace polyrelax {

// Closed interval [lower, upper] the function is relaxed over.
struct Domain {
    double lower;
    double upper;

    Domain(double lo, double hi) : lower(lo), upper(hi) {
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw NumericError("domain bounds must be finite");
        if (!(lo < hi))
            throw NumericError("domain requires lower < upper");
    }

    double width() const noexcept { return upper - lower; }
};

} // namespace polyrelax

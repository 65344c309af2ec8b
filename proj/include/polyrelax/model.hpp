#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyrelax/relax.hpp"

namespace polyrelax {

enum class VarKind { continuous, binary };

struct VarDef {
    std::string name;
    double lower;  // may be -inf
    double upper;  // may be +inf
    VarKind kind;

    friend bool operator==(const VarDef&, const VarDef&) = default;
};

enum class Sense { le, eq, ge };

struct LinTerm {
    std::string var;
    double coef;

    friend bool operator==(const LinTerm&, const LinTerm&) = default;
};

struct LinConstraint {
    std::vector<LinTerm> terms;
    Sense sense;
    double rhs;

    friend bool operator==(const LinConstraint&, const LinConstraint&) = default;
};

enum class ObjSense { minimize, maximize };

struct Objective {
    ObjSense sense;
    std::vector<LinTerm> terms;

    friend bool operator==(const Objective&, const Objective&) = default;
};

struct ModelMetadata {
    std::string function;
    double lower = 0.0;
    double upper = 0.0;
    std::vector<double> partition;
    double strength_bound = 0.0;
    // "incremental-milp", "incremental-lp" (integrality relaxed), or
    // "lambda-lp".
    std::string formulation;

    friend bool operator==(const ModelMetadata&, const ModelMetadata&) = default;
};

struct ConstraintSystem {
    std::vector<VarDef> variables;
    std::vector<LinConstraint> constraints;
    std::optional<Objective> objective;
    ModelMetadata metadata;

    const VarDef* find_variable(const std::string& name) const;

    friend bool operator==(const ConstraintSystem&, const ConstraintSystem&) = default;
};

// Incremental MILP: variables x, y, d1_i, d2_i in [0,1] (i = 1..k), binary
// z_i (i = 1..k-1); y- and x-definition equalities with per-triangle
// coefficients (apex - v_left) and (v_right - v_left), d1_1 + d2_1 <= 1, and
// for i >= 2 the chain d1_i + d2_i <= z_{i-1} <= d2_{i-1} as two rows.
ConstraintSystem build_milp(const TriangleChain& chain);

// Convex-combination LP over the vertex set {v_0, apexes..., v_k}: lam_j in
// the unit simplex, x and y defined as the combination.
ConstraintSystem build_lp(const TriangleChain& chain);

// Same system with binaries re-declared continuous in [0,1].
ConstraintSystem relax_integrality(const ConstraintSystem& sys);

// Extremum of y over the relaxation, computed from vertex sets directly.
// milp: over all graph vertices and apexes; lp: over {v_0, apexes, v_k}.
struct YBounds {
    double milp;
    double lp;
};
YBounds bound_y(const TriangleChain& chain, ObjSense sense);

} // namespace polyrelax

#include "polyrelax/model.hpp"

#include <algorithm>
#include <cmath>

namespace polyrelax {

namespace {

constexpr double kPlusInf = std::numeric_limits<double>::infinity();

ModelMetadata metadata_for(const TriangleChain& chain, const char* formulation) {
    ModelMetadata md;
    md.function = chain.oracle->description();
    md.lower = chain.partition.points.front();
    md.upper = chain.partition.points.back();
    md.partition = chain.partition.points;
    md.strength_bound = chain.max_bound();
    md.formulation = formulation;
    return md;
}

std::string indexed(const char* stem, std::size_t i) {
    return std::string(stem) + "_" + std::to_string(i);
}

} // namespace

const VarDef* ConstraintSystem::find_variable(const std::string& name) const {
    for (const VarDef& v : variables)
        if (v.name == name) return &v;
    return nullptr;
}

ConstraintSystem build_milp(const TriangleChain& chain) {
    const std::size_t k = chain.size();
    if (k == 0) throw EmptyChainError("cannot build a model from an empty chain");

    ConstraintSystem sys;
    sys.metadata = metadata_for(chain, "incremental-milp");

    sys.variables.push_back(
        {"x", sys.metadata.lower, sys.metadata.upper, VarKind::continuous});
    sys.variables.push_back({"y", -kPlusInf, kPlusInf, VarKind::continuous});
    for (std::size_t i = 1; i <= k; ++i) {
        sys.variables.push_back({indexed("d1", i), 0.0, 1.0, VarKind::continuous});
        sys.variables.push_back({indexed("d2", i), 0.0, 1.0, VarKind::continuous});
    }
    for (std::size_t i = 1; i + 1 <= k; ++i)
        sys.variables.push_back({indexed("z", i), 0.0, 1.0, VarKind::binary});

    // (x, y) = v_0 + sum_i d1_i (apex_i - vleft_i) + d2_i (vright_i - vleft_i),
    // written as one equality row per coordinate.
    LinConstraint yrow, xrow;
    yrow.terms.push_back({"y", 1.0});
    xrow.terms.push_back({"x", 1.0});
    for (std::size_t i = 0; i < k; ++i) {
        const Triangle& t = chain.triangles[i];
        yrow.terms.push_back({indexed("d1", i + 1), -(t.v_apex.y() - t.v_left.y())});
        yrow.terms.push_back({indexed("d2", i + 1), -(t.v_right.y() - t.v_left.y())});
        xrow.terms.push_back({indexed("d1", i + 1), -(t.v_apex.x() - t.v_left.x())});
        xrow.terms.push_back({indexed("d2", i + 1), -(t.v_right.x() - t.v_left.x())});
    }
    yrow.sense = Sense::eq;
    yrow.rhs = chain.triangles.front().v_left.y();
    xrow.sense = Sense::eq;
    xrow.rhs = chain.triangles.front().v_left.x();
    sys.constraints.push_back(std::move(yrow));
    sys.constraints.push_back(std::move(xrow));

    // First triangle is always available: d1_1 + d2_1 <= 1.
    sys.constraints.push_back(
        {{{indexed("d1", 1), 1.0}, {indexed("d2", 1), 1.0}}, Sense::le, 1.0});

    // Triangle i opens only when its predecessor is filled:
    // d1_i + d2_i <= z_{i-1} and z_{i-1} <= d2_{i-1}.
    for (std::size_t i = 2; i <= k; ++i) {
        sys.constraints.push_back({{{indexed("d1", i), 1.0},
                                    {indexed("d2", i), 1.0},
                                    {indexed("z", i - 1), -1.0}},
                                   Sense::le, 0.0});
        sys.constraints.push_back(
            {{{indexed("z", i - 1), 1.0}, {indexed("d2", i - 1), -1.0}},
             Sense::le, 0.0});
    }
    return sys;
}

ConstraintSystem build_lp(const TriangleChain& chain) {
    const std::size_t k = chain.size();
    if (k == 0) throw EmptyChainError("cannot build a model from an empty chain");

    // Vertex set {v_0, apexes..., v_k}; interior graph vertices are convex
    // combinations of neighboring apexes and need no multiplier.
    std::vector<Point> verts;
    verts.push_back(chain.triangles.front().v_left);
    for (const Triangle& t : chain.triangles) verts.push_back(t.v_apex);
    verts.push_back(chain.triangles.back().v_right);

    ConstraintSystem sys;
    sys.metadata = metadata_for(chain, "lambda-lp");

    sys.variables.push_back(
        {"x", sys.metadata.lower, sys.metadata.upper, VarKind::continuous});
    sys.variables.push_back({"y", -kPlusInf, kPlusInf, VarKind::continuous});
    for (std::size_t j = 1; j <= verts.size(); ++j)
        sys.variables.push_back({indexed("lam", j), 0.0, 1.0, VarKind::continuous});

    LinConstraint yrow, xrow, simplex;
    yrow.terms.push_back({"y", 1.0});
    xrow.terms.push_back({"x", 1.0});
    for (std::size_t j = 0; j < verts.size(); ++j) {
        yrow.terms.push_back({indexed("lam", j + 1), -verts[j].y()});
        xrow.terms.push_back({indexed("lam", j + 1), -verts[j].x()});
        simplex.terms.push_back({indexed("lam", j + 1), 1.0});
    }
    yrow.sense = Sense::eq;
    yrow.rhs = 0.0;
    xrow.sense = Sense::eq;
    xrow.rhs = 0.0;
    simplex.sense = Sense::eq;
    simplex.rhs = 1.0;
    sys.constraints.push_back(std::move(yrow));
    sys.constraints.push_back(std::move(xrow));
    sys.constraints.push_back(std::move(simplex));
    return sys;
}

ConstraintSystem relax_integrality(const ConstraintSystem& sys) {
    if (sys.metadata.formulation != "incremental-milp")
        throw Error("relax_integrality expects an incremental-milp system");
    ConstraintSystem out = sys;
    for (VarDef& v : out.variables)
        if (v.kind == VarKind::binary) v.kind = VarKind::continuous;
    out.metadata.formulation = "incremental-lp";
    return out;
}

YBounds bound_y(const TriangleChain& chain, ObjSense sense) {
    if (chain.triangles.empty()) throw EmptyChainError("chain has no triangles");
    const bool maximize = sense == ObjSense::maximize;
    auto better = [maximize](double a, double b) { return maximize ? std::max(a, b) : std::min(a, b); };

    // LP hull: extremum over {v_0, apexes, v_k}.
    double lp = chain.triangles.front().v_left.y();
    for (const Triangle& t : chain.triangles) lp = better(lp, t.v_apex.y());
    lp = better(lp, chain.triangles.back().v_right.y());

    // MILP projection: every graph vertex joins the candidate set.
    double milp = lp;
    for (const Triangle& t : chain.triangles) milp = better(milp, t.v_right.y());
    return {milp, lp};
}

} // namespace polyrelax

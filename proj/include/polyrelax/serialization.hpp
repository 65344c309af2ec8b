#pragma once

#include <string>

#include "polyrelax/model.hpp"

namespace polyrelax {

// Deterministic JSON with fixed key order and 17-significant-digit reals;
// infinite bounds serialize as null.
std::string export_json(const ConstraintSystem& sys);

// Inverse of export_json (accepts any JSON matching the schema).
ConstraintSystem import_json(const std::string& text);

// CPLEX-style LP text: Minimize/Subject To/Bounds/Binaries/End, constraints
// named c1..cm. Throws NameClashError for names the format cannot express.
std::string export_lp_format(const ConstraintSystem& sys);

} // namespace polyrelax

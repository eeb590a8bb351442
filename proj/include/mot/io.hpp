#pragma once

#include <json.hpp>
#include <string>

#include "mot/coupling.hpp"
#include "mot/geometry.hpp"
#include "mot/measures.hpp"
#include "mot/paving.hpp"
#include "mot/pwl.hpp"

// JSON schemas:
//   measure   {"dim": d, "atoms": [{"point": [...], "weight": w}, ...]}
//   polytope  {"dim": d, "vertices": [[...], ...], "affine_dim": k}
//   coupling  {"mu_support": [[...]], "nu_support": [[...]], "matrix": [[...]]}
//   paving    {"cells": [{"members": [...], "hull_vertices": [[...]], "affine_dim": k}],
//              "singletons": [...]}
//   pwl       {"dim": d, "pieces": [{"gradient": [...], "offset": c}, ...]}
// Parse failures throw Error(ParseError); semantic failures keep their own code.
namespace mot::io {

using nlohmann::json;

json to_json(const Vector& v);
Vector vector_from_json(const json& j);

json to_json(const DiscreteMeasure& m);
DiscreteMeasure measure_from_json(const json& j);

json to_json(const Polytope& p);
Polytope polytope_from_json(const json& j);

json to_json(const Coupling& c);
Coupling coupling_from_json(const json& j);

json to_json(const ConvexPaving& p);
/// Singleton cells are rebuilt from mu's atoms.
ConvexPaving paving_from_json(const json& j, const DiscreteMeasure& mu);

json to_json(const PwlConvex& phi);
PwlConvex pwl_from_json(const json& j);

json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

}  // namespace mot::io

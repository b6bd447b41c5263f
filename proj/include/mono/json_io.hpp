#pragma once

#include "mono/fibergeom.hpp"
#include "mono/hsets.hpp"

#include <json.hpp>

namespace mono {

using Json = nlohmann::json;

// Rational strings like "3/2" or "-4".
Rational rational_from_json(const Json& j);
std::vector<Rational> rationals_from_json(const Json& j, const char* field);

// Series: {"vars":["x","y"], "trunc": 16 | "exact",
//          "terms":[{"exp":[2,1],"coef":"3/2"}, ...]}
Json series_to_json(const Series& s);
Series series_from_json(const Json& j);

// Transforms carry 1-based variable indices on the wire.
Json transform_to_json(const ElementaryTransform& nu);
ElementaryTransform transform_from_json(const Json& j);

Json path_to_json(const TransformPath& path);
TransformPath path_from_json(const Json& j);

// {"alpha":[2,1], "unit_constant":"3"}
Json certificate_to_json(const NormalCertificate& cert);
NormalCertificate certificate_from_json(const Json& j);

Json quadrant_to_json(const SubQuadrant& q);
SubQuadrant quadrant_from_json(const Json& j);
Json chart_to_json(const Chart& c);
Json coverage_to_json(const CoverageReport& r);

// {"polyradius":["1","1"], "eq": <series or null>, "ineqs":[<series>...]}
Json hbasic_to_json(const HBasicSet& a);
HBasicSet hbasic_from_json(const Json& j);

// HBasicSet fields plus "split_n" (and an optional "d" hint, checked).
Json manifold_to_json(const ManifoldSpec& m);
ManifoldSpec manifold_from_json(const Json& j);

// Expanded part of a monomialization tree.
Json tree_to_json(const NodePtr& root);
std::string tree_to_dot(const NodePtr& root);

// Default variable names x, y, z, w, x5, x6, ...
std::vector<std::string> default_var_names(unsigned n);

} // namespace mono

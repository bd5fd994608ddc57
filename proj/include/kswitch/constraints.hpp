#pragma once

#include <array>
#include <string>
#include <string_view>

#include "kswitch/constraint.hpp"
#include "kswitch/constraints/bipartite_projection.hpp"
#include "kswitch/constraints/colored_triangles.hpp"
#include "kswitch/constraints/component_sizes.hpp"
#include "kswitch/constraints/degree_correlation.hpp"
#include "kswitch/constraints/triangle_count.hpp"
#include "kswitch/error.hpp"

namespace kswitch {

inline constexpr std::array<std::string_view, 6> kConstraintNames = {
    "none", "c0", "colored-triangles", "degree-corr", "triangles", "components"};

/// Builds the named constraint with its parameters captured from the starter.
inline AnyConstraint make_constraint(std::string_view name, const Graph& g0) {
  if (name == "none") return NoConstraint{};
  if (name == "c0") return BipartiteProjection::from_starter(g0);
  if (name == "colored-triangles") return ColoredTriangles::from_starter(g0);
  if (name == "degree-corr") return DegreeCorrelation::from_starter(g0);
  if (name == "triangles") return TriangleCount::from_starter(g0);
  if (name == "components") return ComponentSizes::from_starter(g0);
  throw Error(ErrorCode::ConfigInvalid, "unknown constraint '" + std::string(name) + "'");
}

}  // namespace kswitch

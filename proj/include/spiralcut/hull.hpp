#pragma once
#include <vector>

#include "spiralcut/mesh.hpp"

namespace spiralcut {

// Triangulated convex hull via incremental insertion with exact-sign
// orientation tests. Points landing exactly on a hull face plane grow the
// face as a coplanar fan (merged afterwards under one face id); points on
// or inside the hull are absorbed.
Polyhedron convex_hull(const std::vector<Vec3>& points);

}  // namespace spiralcut

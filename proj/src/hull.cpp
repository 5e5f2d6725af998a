#include "spiralcut/hull.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace spiralcut {

namespace {

struct HullFace {
    int v[3];
    bool alive = true;
};

// visible(q) from ccw face (a,b,c) <=> orient3d(a,b,c,q) < 0
inline bool strictly_visible(const std::vector<Vec3>& pts, const HullFace& f, const Vec3& q) {
    return orient3d(pts[f.v[0]], pts[f.v[1]], pts[f.v[2]], q) < 0.0;
}

bool collinear3(const Vec3& a, const Vec3& b, const Vec3& c) {
    return orient2d({a.x, a.y}, {b.x, b.y}, {c.x, c.y}) == 0.0 &&
           orient2d({a.x, a.z}, {b.x, b.z}, {c.x, c.z}) == 0.0 &&
           orient2d({a.y, a.z}, {b.y, b.z}, {c.y, c.z}) == 0.0;
}

}  // namespace

Polyhedron convex_hull(const std::vector<Vec3>& points) {
    const int n = static_cast<int>(points.size());
    if (n < 4) throw DegenerateInput("convex hull needs at least 4 points");

    // Initial affinely independent quadruple.
    int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
    for (int i = 1; i < n && i1 < 0; ++i)
        if ((points[i] - points[i0]).norm() > 0.0) i1 = i;
    if (i1 < 0) throw DegenerateInput("all points coincide");
    for (int i = i1 + 1; i < n && i2 < 0; ++i)
        if (!collinear3(points[i0], points[i1], points[i])) i2 = i;
    if (i2 < 0) throw DegenerateInput("all points collinear");
    for (int i = 1; i < n && i3 < 0; ++i)
        if (i != i1 && i != i2 && orient3d(points[i0], points[i1], points[i2], points[i]) != 0.0)
            i3 = i;
    if (i3 < 0) throw DegenerateInput("all points coplanar");

    if (orient3d(points[i0], points[i1], points[i2], points[i3]) < 0.0) std::swap(i1, i2);

    std::vector<HullFace> faces;
    faces.push_back({{i0, i1, i2}});
    faces.push_back({{i0, i3, i1}});
    faces.push_back({{i1, i3, i2}});
    faces.push_back({{i2, i3, i0}});

    std::vector<char> used(n, 0);
    used[i0] = used[i1] = used[i2] = used[i3] = 1;

    for (int q = 0; q < n; ++q) {
        if (used[q]) continue;
        used[q] = 1;

        std::vector<int> visible;
        for (int f = 0; f < static_cast<int>(faces.size()); ++f)
            if (faces[f].alive && strictly_visible(points, faces[f], points[q]))
                visible.push_back(f);
        if (visible.empty()) continue;  // on or inside the current hull

        std::vector<char> vis(faces.size(), 0);
        for (int f : visible) vis[f] = 1;

        // Horizon: directed edges of visible faces whose neighbour is invisible.
        std::map<std::pair<int, int>, int> dir_edge_face;
        for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
            if (!faces[f].alive) continue;
            for (int k = 0; k < 3; ++k)
                dir_edge_face[{faces[f].v[k], faces[f].v[(k + 1) % 3]}] = f;
        }
        std::vector<std::pair<int, int>> horizon;
        for (int f : visible) {
            for (int k = 0; k < 3; ++k) {
                int a = faces[f].v[k], b = faces[f].v[(k + 1) % 3];
                auto it = dir_edge_face.find({b, a});
                if (it == dir_edge_face.end())
                    throw InternalError("hull adjacency broken during insertion");
                if (!vis[it->second]) horizon.emplace_back(a, b);
            }
        }
        if (horizon.empty()) throw InternalError("visible region has no horizon");

        for (int f : visible) faces[f].alive = false;
        for (const auto& [a, b] : horizon) faces.push_back({{a, b, q}});
    }

    // Compact to referenced vertices.
    std::vector<int> remap(n, -1);
    std::vector<Vec3> verts;
    std::vector<std::array<int, 3>> tris;
    for (const HullFace& f : faces) {
        if (!f.alive) continue;
        std::array<int, 3> t;
        for (int k = 0; k < 3; ++k) {
            int v = f.v[k];
            if (remap[v] < 0) {
                remap[v] = static_cast<int>(verts.size());
                verts.push_back(points[v]);
            }
            t[k] = remap[v];
        }
        tris.push_back(t);
    }
    return Polyhedron::from_triangles(std::move(verts), tris, true);
}

}  // namespace spiralcut

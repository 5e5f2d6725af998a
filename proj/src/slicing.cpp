#include "spiralcut/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace spiralcut {

namespace {

struct SliceItem {
    SliceCorner corner;
    std::vector<int> links;  // indices of linked items
};

int classify(double vz, double z, double tol) {
    if (std::abs(vz - z) <= tol) return 0;
    return vz > z ? 1 : -1;
}

}  // namespace

int SlicePolygon::find_vertex_corner(int vertex) const {
    for (int i = 0; i < static_cast<int>(corners.size()); ++i)
        if (corners[i].host == SliceCorner::Host::vertex && corners[i].host_id == vertex)
            return i;
    return -1;
}

SlicePolygon slice_at(const Polyhedron& p, double z, double height_tol) {
    double tol = height_tol >= 0.0 ? height_tol : p.default_height_tol();
    if (z < p.min_z() - tol || z > p.max_z() + tol)
        throw EmptySlice("slice height outside the vertical span of the mesh");

    SlicePolygon out;
    out.z = z;

    std::vector<int> vclass(p.vertices.size());
    bool all_on = true;
    for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v) {
        vclass[v] = classify(p.vertices[v].z, z, tol);
        if (vclass[v] != 0) all_on = false;
    }

    std::vector<SliceItem> items;
    std::map<std::pair<int, int>, int> item_of;  // (host kind 0=vertex 1=edge, id) -> item

    auto vertex_item = [&](int v) {
        auto key = std::make_pair(0, v);
        auto it = item_of.find(key);
        if (it != item_of.end()) return it->second;
        SliceItem si;
        si.corner = SliceCorner{SliceCorner::Host::vertex, v, 0.0, p.vertices[v]};
        items.push_back(si);
        item_of[key] = static_cast<int>(items.size()) - 1;
        return static_cast<int>(items.size()) - 1;
    };
    auto edge_item = [&](int e) {
        auto key = std::make_pair(1, e);
        auto it = item_of.find(key);
        if (it != item_of.end()) return it->second;
        const MeshEdge& me = p.edges[e];
        double za = p.vertices[me.a].z, zb = p.vertices[me.b].z;
        double t = (z - za) / (zb - za);
        Vec3 pos = p.vertices[me.a] + (p.vertices[me.b] - p.vertices[me.a]) * t;
        SliceItem si;
        si.corner = SliceCorner{SliceCorner::Host::edge, e, t, pos};
        items.push_back(si);
        item_of[key] = static_cast<int>(items.size()) - 1;
        return static_cast<int>(items.size()) - 1;
    };
    auto link = [&](int i, int j) {
        items[i].links.push_back(j);
        items[j].links.push_back(i);
    };

    if (all_on) {
        // Flat horizontal body: the slice is the whole surface; report its rim.
        for (int e = 0; e < static_cast<int>(p.edges.size()); ++e) {
            const MeshEdge& me = p.edges[e];
            Vec3 n0 = p.triangle_normal(me.tri[0]);
            Vec3 n1 = p.triangle_normal(me.tri[1]);
            if (n0.dot(n1) < 1.0 - 1e-9) link(vertex_item(me.a), vertex_item(me.b));
        }
    } else {
        // Segments from triangles straddling the plane.
        for (int t = 0; t < static_cast<int>(p.triangles.size()); ++t) {
            const auto& tv = p.triangles[t].v;
            int c[3] = {vclass[tv[0]], vclass[tv[1]], vclass[tv[2]]};
            int n_on = (c[0] == 0) + (c[1] == 0) + (c[2] == 0);
            int n_up = (c[0] > 0) + (c[1] > 0) + (c[2] > 0);
            int n_dn = (c[0] < 0) + (c[1] < 0) + (c[2] < 0);
            if (n_on >= 2 || n_up == 0 || n_dn == 0) continue;  // in-plane edges handled below
            if (n_on == 1) {
                int k = c[0] == 0 ? 0 : (c[1] == 0 ? 1 : 2);
                int e = p.edge_index(tv[(k + 1) % 3], tv[(k + 2) % 3]);
                link(vertex_item(tv[k]), edge_item(e));
            } else {
                int solo = n_up == 1 ? 1 : -1;
                int k = c[0] == solo ? 0 : (c[1] == solo ? 1 : 2);
                int e1 = p.edge_index(tv[k], tv[(k + 1) % 3]);
                int e2 = p.edge_index(tv[k], tv[(k + 2) % 3]);
                link(edge_item(e1), edge_item(e2));
            }
        }
        // In-plane edges on the boundary between the below and above parts
        // of the surface (horizontal faces at z follow the face boundary).
        for (int e = 0; e < static_cast<int>(p.edges.size()); ++e) {
            const MeshEdge& me = p.edges[e];
            if (vclass[me.a] != 0 || vclass[me.b] != 0) continue;
            int side[2];
            for (int k = 0; k < 2; ++k) {
                const auto& tv = p.triangles[me.tri[k]].v;
                int third = tv[0] != me.a && tv[0] != me.b ? tv[0]
                           : (tv[1] != me.a && tv[1] != me.b ? tv[1] : tv[2]);
                side[k] = vclass[third];
            }
            if (side[0] != side[1]) link(vertex_item(me.a), vertex_item(me.b));
        }
    }

    // Fully degenerate slice (extreme z at a vertex or edge): materialize
    // the on-plane vertices, which lazy linking never touched.
    bool any_links = std::any_of(items.begin(), items.end(),
                                 [](const SliceItem& s) { return !s.links.empty(); });
    if (!any_links)
        for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v)
            if (vclass[v] == 0) vertex_item(v);
    if (items.empty())
        throw EmptySlice("slice height outside the vertical span of the mesh");
    if (!any_links) {
        out.degenerate = true;
        std::vector<int> order(items.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return items[a].corner.host_id < items[b].corner.host_id;
        });
        for (int i : order) out.corners.push_back(items[i].corner);
        return out;
    }

    for (const SliceItem& si : items)
        if (si.links.size() != 2)
            throw NonSimpleSlice("slice is not a collection of simple loops", 0);

    // Walk loops.
    std::vector<char> seen(items.size(), 0);
    std::vector<std::vector<int>> loops;
    for (int start = 0; start < static_cast<int>(items.size()); ++start) {
        if (seen[start]) continue;
        std::vector<int> loop;
        int prev = -1, cur = start;
        while (!seen[cur]) {
            seen[cur] = 1;
            loop.push_back(cur);
            int nxt = items[cur].links[0] == prev ? items[cur].links[1] : items[cur].links[0];
            prev = cur;
            cur = nxt;
        }
        loops.push_back(std::move(loop));
    }
    if (loops.size() > 1)
        throw NonSimpleSlice("slice has multiple loops", static_cast<int>(loops.size()));

    std::vector<int>& loop = loops[0];

    // Corners on flat triangulation diagonals are not turns of the slice
    // polygon; drop them so the polygon reports only true creases.
    {
        std::vector<int> kept;
        for (int i : loop) {
            const SliceCorner& c = items[i].corner;
            if (c.host == SliceCorner::Host::edge && !p.edge_is_crease(c.host_id)) continue;
            kept.push_back(i);
        }
        if (kept.size() >= 3) loop = std::move(kept);
    }

    // Orient ccw about +z.
    double area2 = 0.0;
    for (size_t i = 0; i < loop.size(); ++i) {
        const Vec3& a = items[loop[i]].corner.pos;
        const Vec3& b = items[loop[(i + 1) % loop.size()]].corner.pos;
        area2 += a.x * b.y - b.x * a.y;
    }
    if (area2 < 0.0) std::reverse(loop.begin(), loop.end());

    // Canonical start: smallest (host kind, id, t).
    auto corner_key = [&](int i) {
        const SliceCorner& c = items[i].corner;
        return std::make_tuple(c.host == SliceCorner::Host::vertex ? 0 : 1, c.host_id, c.t);
    };
    int best = 0;
    for (int i = 1; i < static_cast<int>(loop.size()); ++i)
        if (corner_key(loop[i]) < corner_key(loop[best])) best = i;
    std::rotate(loop.begin(), loop.begin() + best, loop.end());

    for (int i : loop) out.corners.push_back(items[i].corner);
    return out;
}

Band band_between(const Polyhedron& p, double z_lo, double z_hi, double height_tol) {
    double tol = height_tol >= 0.0 ? height_tol : p.default_height_tol();
    if (!(z_lo < z_hi)) throw Error("band_between requires z_lo < z_hi");
    for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v) {
        double vz = p.vertices[v].z;
        if (vz > z_lo + tol && vz < z_hi - tol)
            throw VertexInside("vertex " + std::to_string(v) + " lies strictly inside the slab", v);
    }

    Band band;
    band.z_lo = z_lo;
    band.z_hi = z_hi;

    double zm = 0.5 * (z_lo + z_hi);
    std::vector<std::pair<int, Vec3>> crossings;
    for (int e = 0; e < static_cast<int>(p.edges.size()); ++e) {
        const MeshEdge& me = p.edges[e];
        double za = p.vertices[me.a].z, zb = p.vertices[me.b].z;
        if (std::abs(za - zb) <= tol) continue;
        if (!p.edge_is_crease(e)) continue;  // flat diagonals are not band structure
        if (std::min(za, zb) <= z_lo + tol && std::max(za, zb) >= z_hi - tol) {
            double t = (zm - za) / (zb - za);
            crossings.emplace_back(e, p.vertices[me.a] + (p.vertices[me.b] - p.vertices[me.a]) * t);
        }
    }
    if (crossings.empty()) throw Error("band has no crossing edges");

    Vec3 c{};
    for (const auto& [e, pt] : crossings) c += pt;
    c = c / static_cast<double>(crossings.size());
    band.mid_centroid = c;

    std::vector<std::pair<double, int>> order;
    for (const auto& [e, pt] : crossings)
        order.emplace_back(std::atan2(pt.y - c.y, pt.x - c.x), e);
    std::sort(order.begin(), order.end());
    for (const auto& [ang, e] : order) {
        band.crossing_edges.push_back(e);
        band.crossing_angle.push_back(ang);
    }

    band.lower = slice_at(p, z_lo, tol);
    band.upper = slice_at(p, z_hi, tol);
    return band;
}

std::vector<std::vector<int>> vertex_levels(const Polyhedron& p, double height_tol) {
    double tol = height_tol >= 0.0 ? height_tol : p.default_height_tol();
    std::vector<int> order(p.vertices.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (p.vertices[a].z != p.vertices[b].z) return p.vertices[a].z < p.vertices[b].z;
        return a < b;
    });

    std::vector<std::vector<int>> groups;
    for (int v : order) {
        if (groups.empty() || p.vertices[v].z - p.vertices[groups.back().back()].z > tol)
            groups.emplace_back();
        groups.back().push_back(v);
    }

    // Order each multi-vertex group ccw along the slice polygon at its height.
    for (auto& g : groups) {
        if (g.size() < 2) continue;
        double z = 0.0;
        for (int v : g) z += p.vertices[v].z;
        z /= static_cast<double>(g.size());
        std::vector<std::pair<int, int>> pos;  // (corner index, vertex)
        bool ok = true;
        try {
            SlicePolygon poly = slice_at(p, z, tol);
            for (int v : g) {
                int ci = poly.find_vertex_corner(v);
                if (ci < 0) { ok = false; break; }
                pos.emplace_back(ci, v);
            }
        } catch (const Error&) {
            ok = false;
        }
        if (ok) {
            std::sort(pos.begin(), pos.end());
            std::vector<int> sorted;
            for (auto& [ci, v] : pos) sorted.push_back(v);
            g = std::move(sorted);
        } else {
            // No usable slice polygon: fall back to angular order about the
            // group centroid.
            Vec3 c{};
            for (int v : g) c += p.vertices[v];
            c = c / static_cast<double>(g.size());
            std::sort(g.begin(), g.end(), [&](int a, int b) {
                double aa = std::atan2(p.vertices[a].y - c.y, p.vertices[a].x - c.x);
                double ab = std::atan2(p.vertices[b].y - c.y, p.vertices[b].x - c.x);
                if (aa != ab) return aa < ab;
                return a < b;
            });
        }
        auto lowest = std::min_element(g.begin(), g.end());
        std::rotate(g.begin(), lowest, g.end());
    }
    return groups;
}

}  // namespace spiralcut

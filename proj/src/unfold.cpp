#include "spiralcut/unfold.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

namespace spiralcut {

namespace {

struct PointKey {
    int kind;  // 0 = mesh vertex, 1 = edge point
    int id;
    double t;
    bool operator<(const PointKey& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (id != o.id) return id < o.id;
        return t < o.t;
    }
};

PointKey key_of(const Corner& c) {
    if (c.host == Corner::Host::vertex) return {0, c.host_id, 0.0};
    return {1, c.host_id, c.t};
}

struct Refiner {
    const Polyhedron& p;
    std::map<PointKey, int> point_id;
    std::vector<Vec3> points;
    std::vector<int> source_corner;

    int intern(const PointKey& k, const Vec3& pos, int corner) {
        auto it = point_id.find(k);
        if (it != point_id.end()) {
            if (corner >= 0) source_corner[it->second] = corner;
            return it->second;
        }
        int id = static_cast<int>(points.size());
        point_id.emplace(k, id);
        points.push_back(pos);
        source_corner.push_back(corner);
        return id;
    }
    int vertex_id(int v) { return intern({0, v, 0.0}, p.vertices[v], -1); }
};

// Split a convex polygon (cyclic point-id list) by non-crossing chords and
// fan-triangulate the pieces. The fan anchor must not be collinear with
// any consecutive boundary pair (subdivision points along an original
// edge), or the fan degenerates.
void split_polygon(const std::vector<int>& poly, std::vector<std::pair<int, int>> chords,
                   const std::vector<Vec3>& pos, double area_tol,
                   std::vector<std::array<int, 3>>& out) {
    if (chords.empty()) {
        const int n = static_cast<int>(poly.size());
        int anchor = -1;
        for (int a = 0; a < n && anchor < 0; ++a) {
            bool ok = true;
            for (int i = 1; i + 1 < n && ok; ++i) {
                int u = poly[(a + i) % n], v = poly[(a + i + 1) % n];
                double area2 =
                    (pos[u] - pos[poly[a]]).cross(pos[v] - pos[poly[a]]).norm();
                if (area2 <= area_tol) ok = false;
            }
            if (ok) anchor = a;
        }
        if (anchor < 0) throw InternalError("no non-degenerate fan anchor in a cut piece");
        for (int i = 1; i + 1 < n; ++i)
            out.push_back({poly[anchor], poly[(anchor + i) % n], poly[(anchor + i + 1) % n]});
        return;
    }
    auto [u, v] = chords.back();
    chords.pop_back();
    int iu = -1, iv = -1;
    for (int i = 0; i < static_cast<int>(poly.size()); ++i) {
        if (poly[i] == u) iu = i;
        if (poly[i] == v) iv = i;
    }
    if (iu < 0 || iv < 0) throw InternalError("chord endpoint missing from polygon");
    auto slice_range = [&](int from, int to) {
        std::vector<int> part;
        for (int i = from; ; i = (i + 1) % poly.size()) {
            part.push_back(poly[i]);
            if (i == to) break;
        }
        return part;
    };
    std::vector<int> a = slice_range(iu, iv);
    std::vector<int> b = slice_range(iv, iu);
    std::vector<std::pair<int, int>> ca, cb;
    auto in_part = [](const std::vector<int>& part, int x) {
        return std::find(part.begin(), part.end(), x) != part.end();
    };
    for (auto& ch : chords) {
        bool a1 = in_part(a, ch.first) && in_part(a, ch.second);
        // Chord endpoints shared with the split chord belong to both; put
        // the chord wherever both endpoints appear.
        if (a1) ca.push_back(ch);
        else cb.push_back(ch);
    }
    split_polygon(a, ca, pos, area_tol, out);
    split_polygon(b, cb, pos, area_tol, out);
}

}  // namespace

long CutDisk::euler_characteristic() const {
    std::set<std::pair<int, int>> edges;
    for (const auto& t : triangles)
        for (int k = 0; k < 3; ++k) {
            int a = t[k], b = t[(k + 1) % 3];
            edges.emplace(std::min(a, b), std::max(a, b));
        }
    return static_cast<long>(points.size()) - static_cast<long>(edges.size()) +
           static_cast<long>(triangles.size());
}

double CutDisk::area() const {
    double a = 0.0;
    for (const auto& t : triangles)
        a += 0.5 * (points[t[1]] - points[t[0]]).cross(points[t[2]] - points[t[0]]).norm();
    return a;
}

double CutDisk::boundary_length() const {
    double len = 0.0;
    for (size_t i = 0; i + 1 < rho_chain.size(); ++i)
        len += (points[rho_chain[i + 1]] - points[rho_chain[i]]).norm();
    for (size_t i = 0; i + 1 < lambda_chain.size(); ++i)
        len += (points[lambda_chain[i + 1]] - points[lambda_chain[i]]).norm();
    return len;
}

CutDisk cut_surface(const Polyhedron& p, const SpiralPath& s, double height_tol) {
    SpiralValidation val = validate_spiral(p, s, height_tol);
    if (!val.surface_simple)
        throw PathNotSimpleOnSurface("spiral self-intersects on the surface near segment " +
                                     std::to_string(val.first_crossing));
    if (!val.z_monotone || !val.hamiltonian)
        throw Error("cut path fails spiral invariants");

    const int m = static_cast<int>(s.corners.size());
    Refiner ref{p, {}, {}, {}};

    // The cut polyline: spiral corners plus junction points where segments
    // cross flat triangulation diagonals. Nodes are refined-mesh points.
    struct CutNodeInfo {
        Corner corner;
        int spiral_corner;  // -1 for junctions
    };
    std::vector<CutNodeInfo> nodes;
    for (int i = 0; i < m; ++i) {
        nodes.push_back({s.corners[i], i});
        if (i + 1 == m) break;
        auto chords = segment_chords(p, s.corners[i], s.corners[i + 1]);
        for (size_t c = 0; c + 1 < chords.size(); ++c)
            nodes.push_back({chords[c].to, -1});
    }
    const int nn = static_cast<int>(nodes.size());

    std::vector<int> node_pid(nn);
    for (int i = 0; i < nn; ++i)
        node_pid[i] = ref.intern(key_of(nodes[i].corner), nodes[i].corner.pos,
                                 nodes[i].spiral_corner);

    // Classify the sub-segments: per-triangle chords and along-edge cuts.
    std::map<int, std::vector<std::pair<int, int>>> tri_chords;
    std::vector<std::pair<int, int>> cut_edges;  // point-id pairs per node hop
    std::map<int, std::vector<std::pair<double, int>>> edge_interior;  // mesh edge -> (t, pid)

    for (int i = 0; i < nn; ++i)
        if (nodes[i].corner.host == Corner::Host::edge)
            edge_interior[nodes[i].corner.host_id].emplace_back(nodes[i].corner.t, node_pid[i]);

    for (int i = 0; i + 1 < nn; ++i) {
        SegmentHost host = segment_host(p, nodes[i].corner, nodes[i + 1].corner);
        if (host.kind == SegmentHost::Kind::triangle)
            tri_chords[host.id].emplace_back(node_pid[i], node_pid[i + 1]);
        cut_edges.emplace_back(node_pid[i], node_pid[i + 1]);
    }

    // Refine every triangle: boundary = vertices plus edge-interior points.
    CutDisk disk;
    std::vector<std::array<int, 3>> tris;
    std::vector<int> src;
    for (int t = 0; t < static_cast<int>(p.triangles.size()); ++t) {
        const auto& tv = p.triangles[t].v;
        std::vector<int> poly;
        for (int k = 0; k < 3; ++k) {
            int a = tv[k], b = tv[(k + 1) % 3];
            poly.push_back(ref.vertex_id(a));
            int e = p.edge_index(a, b);
            auto it = edge_interior.find(e);
            if (it == edge_interior.end()) continue;
            auto pts = it->second;
            std::sort(pts.begin(), pts.end());
            if (p.edges[e].a != a) std::reverse(pts.begin(), pts.end());
            for (auto& [tt, pid] : pts) poly.push_back(pid);
        }
        std::vector<std::pair<int, int>> chords;
        auto it = tri_chords.find(t);
        if (it != tri_chords.end()) chords = it->second;
        size_t before = tris.size();
        split_polygon(poly, chords, ref.points, 1e-14 * p.diameter() * p.diameter(), tris);
        for (size_t k = before; k < tris.size(); ++k) src.push_back(t);
    }

    disk.points = ref.points;
    disk.source_corner = ref.source_corner;
    disk.triangles = std::move(tris);
    disk.source_triangle = std::move(src);
    disk.surface_diameter = p.diameter();

    // Duplicate points along the cut. Interior nodes split their fan in
    // two; the path endpoints stay single. Earlier splits rename the left
    // copies, so adjacency at later nodes goes through canonical ids.
    std::vector<int> rho_id(nn), lambda_id(nn);
    rho_id[0] = lambda_id[0] = node_pid[0];
    rho_id[nn - 1] = lambda_id[nn - 1] = node_pid[nn - 1];

    std::vector<int> canon(disk.points.size());
    for (size_t i = 0; i < canon.size(); ++i) canon[i] = static_cast<int>(i);

    for (int k = 1; k + 1 < nn; ++k) {
        int P = node_pid[k];
        // Current fan around P.
        std::vector<int> fan;
        for (int t = 0; t < static_cast<int>(disk.triangles.size()); ++t)
            for (int j = 0; j < 3; ++j)
                if (disk.triangles[t][j] == P) fan.push_back(t);

        // Order the fan by shared-edge adjacency.
        auto other_two = [&](int t) {
            std::array<int, 2> o{};
            int n = 0;
            for (int j = 0; j < 3; ++j)
                if (disk.triangles[t][j] != P) o[n++] = disk.triangles[t][j];
            return o;
        };
        std::vector<int> ordered{fan.front()};
        std::set<int> used{fan.front()};
        while (ordered.size() < fan.size()) {
            bool advanced = false;
            auto cur = other_two(ordered.back());
            int c0 = canon[cur[0]], c1 = canon[cur[1]];
            for (int t : fan) {
                if (used.count(t)) continue;
                auto o = other_two(t);
                if (canon[o[0]] == c0 || canon[o[0]] == c1 || canon[o[1]] == c0 ||
                    canon[o[1]] == c1) {
                    ordered.push_back(t);
                    used.insert(t);
                    advanced = true;
                    break;
                }
            }
            if (!advanced) throw InternalError("corner fan is not a single cycle");
        }

        int prev_q = node_pid[k - 1], next_q = node_pid[k + 1];
        // Walk the cyclic fan assigning sides, toggling at the cut edges
        // (P, prev_q) and (P, next_q); copies of prev_q count as prev_q.
        auto shared_point = [&](int t1, int t2) {
            auto o1 = other_two(t1), o2 = other_two(t2);
            if (canon[o1[0]] == canon[o2[0]] || canon[o1[0]] == canon[o2[1]]) return o1[0];
            return o1[1];
        };
        int n = static_cast<int>(ordered.size());
        std::vector<int> side(n, 0);
        int cur_side = 0;
        for (int i = 1; i <= n; ++i) {
            int q = shared_point(ordered[i - 1], ordered[i % n]);
            if (canon[q] == canon[prev_q] || q == next_q) cur_side ^= 1;
            if (i < n) side[i] = cur_side;
        }
        if (cur_side != 0) throw InternalError("cut does not split the corner fan evenly");

        // Which side is right of the directed segment (c_k -> c_{k+1})?
        // The triangle containing the directed boundary edge (next_q, P) in
        // ccw order lies right of the path.
        int right_side = -1;
        for (int i = 0; i < n; ++i) {
            const auto& tv = disk.triangles[ordered[i]];
            for (int j = 0; j < 3; ++j)
                if (tv[j] == next_q && tv[(j + 1) % 3] == P) right_side = side[i];
        }
        if (right_side < 0) throw InternalError("right-side triangle of the cut not found");

        // The right side keeps the original id; the left side gets a copy.
        int pl = static_cast<int>(disk.points.size());
        disk.points.push_back(disk.points[P]);
        disk.source_corner.push_back(nodes[k].spiral_corner);
        canon.push_back(P);
        for (int i = 0; i < n; ++i) {
            if (side[i] == right_side) continue;
            for (int j = 0; j < 3; ++j)
                if (disk.triangles[ordered[i]][j] == P) disk.triangles[ordered[i]][j] = pl;
        }
        rho_id[k] = P;
        lambda_id[k] = pl;
    }

    disk.rho_chain = std::move(rho_id);
    disk.lambda_chain = std::move(lambda_id);
    for (const Corner& c : s.corners)
        disk.corner_is_vertex.push_back(c.is_polyhedron_vertex ? 1 : 0);

    if (disk.euler_characteristic() != 1)
        throw InternalError("cut surface is not a topological disk");
    return disk;
}

PlanarLayout develop(const CutDisk& d) {
    PlanarLayout out;
    out.scale = d.surface_diameter;
    out.source_corner = d.source_corner;

    const auto& tris = d.triangles;
    std::map<std::pair<int, int>, std::vector<int>> edge_tris;
    for (int t = 0; t < static_cast<int>(tris.size()); ++t)
        for (int k = 0; k < 3; ++k) {
            int a = tris[t][k], b = tris[t][(k + 1) % 3];
            edge_tris[{std::min(a, b), std::max(a, b)}].push_back(t);
        }

    // Seed: the triangle right of the first spiral segment, which carries
    // the directed boundary edge (rho[1], rho[0]).
    int a0 = d.rho_chain[0], b0 = d.rho_chain[1];
    int seed = -1;
    for (int t = 0; t < static_cast<int>(tris.size()); ++t)
        for (int k = 0; k < 3; ++k)
            if (tris[t][k] == b0 && tris[t][(k + 1) % 3] == a0) seed = t;
    if (seed < 0) throw InternalError("seed triangle for development not found");

    std::vector<char> placed_pt(d.points.size(), 0);
    std::vector<Vec2> pos(d.points.size());
    std::vector<char> placed_tri(tris.size(), 0);

    auto len3 = [&](int i, int j) { return (d.points[i] - d.points[j]).norm(); };
    const double drift_tol = 1e-6 * d.surface_diameter;

    auto place_point = [&](int id, const Vec2& q) {
        if (placed_pt[id]) {
            if ((pos[id] - q).norm() > drift_tol)
                throw NumericalDrift("development drift exceeds tolerance");
            return;
        }
        placed_pt[id] = 1;
        pos[id] = q;
    };

    place_point(a0, {0.0, 0.0});
    place_point(b0, {len3(a0, b0), 0.0});

    std::queue<int> queue;
    queue.push(seed);
    placed_tri[seed] = 1;

    std::vector<int> order;
    while (!queue.empty()) {
        int t = queue.front();
        queue.pop();
        order.push_back(t);

        // Place the third point(s) of t from two already-placed ones.
        const auto& tv = tris[t];
        int known[3], nk = 0;
        for (int k = 0; k < 3; ++k)
            if (placed_pt[tv[k]]) known[nk++] = k;
        if (nk < 2) throw InternalError("development reached a triangle without a placed edge");
        if (nk == 2) {
            int ki = known[0], kj = known[1], kw = 3 - ki - kj;
            int U = tv[ki], V = tv[kj], W = tv[kw];
            Vec2 u = pos[U], v = pos[V];
            double duv = (v - u).norm();
            double duw = len3(U, W), dvw = len3(V, W);
            double x = (duv * duv + duw * duw - dvw * dvw) / (2.0 * duv);
            double h2 = duw * duw - x * x;
            double h = h2 > 0.0 ? std::sqrt(h2) : 0.0;
            Vec2 dir{(v.x - u.x) / duv, (v.y - u.y) / duv};
            Vec2 perp{-dir.y, dir.x};
            Vec2 wa{u.x + dir.x * x + perp.x * h, u.y + dir.y * x + perp.y * h};
            Vec2 wb{u.x + dir.x * x - perp.x * h, u.y + dir.y * x - perp.y * h};
            // keep ccw orientation of (tv[0], tv[1], tv[2])
            Vec2 cand[2] = {wa, wb};
            bool done = false;
            for (const Vec2& w : cand) {
                Vec2 q[3];
                for (int k = 0; k < 3; ++k) q[k] = tv[k] == W ? w : pos[tv[k]];
                double area = (q[1] - q[0]).cross(q[2] - q[0]);
                if (area >= 0.0) {
                    place_point(W, w);
                    done = true;
                    break;
                }
            }
            if (!done) place_point(W, wa);
        }

        for (int k = 0; k < 3; ++k) {
            int a = tv[k], b = tv[(k + 1) % 3];
            auto& nb = edge_tris[{std::min(a, b), std::max(a, b)}];
            for (int t2 : nb)
                if (!placed_tri[t2]) {
                    placed_tri[t2] = 1;
                    queue.push(t2);
                }
        }
    }

    for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
        if (!placed_tri[t]) throw InternalError("development did not reach every triangle");
        PlanarLayout::PlacedTriangle pt;
        for (int k = 0; k < 3; ++k) {
            pt.point_ids[k] = tris[t][k];
            pt.pts[k] = pos[tris[t][k]];
        }
        pt.source_triangle = d.source_triangle[t];
        out.triangles.push_back(pt);
    }
    out.placed = std::move(pos);

    // Isometry check: every placed edge against its 3D length.
    for (const auto& t : out.triangles)
        for (int k = 0; k < 3; ++k) {
            int a = t.point_ids[k], b = t.point_ids[(k + 1) % 3];
            double l2 = (out.placed[a] - out.placed[b]).norm();
            double l3 = len3(a, b);
            if (std::abs(l2 - l3) > 1e-6 * (l3 + 1e-9 * d.surface_diameter))
                throw NumericalDrift("placed edge length deviates from the surface length");
        }

    auto chain_to_boundary = [&](const std::vector<int>& chain) {
        std::vector<BoundaryPoint> bp;
        for (int id : chain) {
            BoundaryPoint b;
            b.pos = out.placed[id];
            b.corner_index = d.source_corner[id];
            b.is_polyhedron_vertex =
                b.corner_index >= 0 &&
                b.corner_index < static_cast<int>(d.corner_is_vertex.size()) &&
                d.corner_is_vertex[b.corner_index];
            bp.push_back(b);
        }
        return bp;
    };
    out.rho_ids = d.rho_chain;
    out.lambda_ids = d.lambda_chain;
    out.rho = chain_to_boundary(d.rho_chain);
    out.lambda = chain_to_boundary(d.lambda_chain);
    return out;
}

double PlanarLayout::diameter2d() const {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& t : triangles)
        for (const auto& q : t.pts) {
            xmin = std::min(xmin, q.x);
            xmax = std::max(xmax, q.x);
            ymin = std::min(ymin, q.y);
            ymax = std::max(ymax, q.y);
        }
    double dx = xmax - xmin, dy = ymax - ymin;
    return std::sqrt(dx * dx + dy * dy);
}

double endpoint_exterior_angle(const PlanarLayout& l, PathEndpoint which) {
    if (l.rho.empty()) throw Error("empty layout");
    int id = which == PathEndpoint::bottom ? l.rho_ids.front() : l.rho_ids.back();
    double total = 0.0;
    for (const auto& t : l.triangles)
        for (int k = 0; k < 3; ++k)
            if (t.point_ids[k] == id) {
                Vec2 u = t.pts[(k + 1) % 3] - t.pts[k];
                Vec2 w = t.pts[(k + 2) % 3] - t.pts[k];
                double c = u.dot(w) / (u.norm() * w.norm());
                total += std::acos(std::clamp(c, -1.0, 1.0));
            }
    return kTwoPi - total;
}

std::pair<std::vector<BoundaryPoint>, std::vector<BoundaryPoint>> boundary_paths(
    const PlanarLayout& l) {
    return {l.rho, l.lambda};
}

}  // namespace spiralcut

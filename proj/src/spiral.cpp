#include "spiralcut/spiral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>

namespace spiralcut {

namespace {

constexpr double kTieTol = 1e-9;  // intrinsic-angle tie width

double norm_pos(double a) {  // into (0, 2*pi]
    double v = std::fmod(a, kTwoPi);
    if (v <= 0.0) v += kTwoPi;
    return v;
}

double norm_half_open(double a) {  // into [0, 2*pi)
    double v = std::fmod(a, kTwoPi);
    if (v < 0.0) v += kTwoPi;
    return v;
}

bool edge_has_vertex(const Polyhedron& p, int e, int v) { return p.edges[e].has(v); }

// One ccw clause of the advance test: from the direction pointing along
// the segment away from the endpoint, the clockwise sweep to the
// horizontal section must be shorter than the counterclockwise sweep.
// Ties (exactly straight ascents) pass only in lenient mode; endpoints
// with no horizontal section (global extremes) always pass.
enum class ClauseMode { strict, lenient };

bool ccw_clause(const Polyhedron& p, const Corner& c, const Vec3& dir, PlaneSide side,
                ClauseMode mode) {
    try {
        SurfaceAngleSplit s = surface_angle_split(p, c.surface_point(), dir, side);
        if (std::abs(s.rho_h - s.lambda_h) <= kTieTol)
            return mode == ClauseMode::lenient;
        return s.rho_h < s.lambda_h;
    } catch (const NoHorizontalSection&) {
        return true;
    }
}

bool advance_ok(const Polyhedron& p, const Corner& a, const Corner& b, double tol,
                ClauseMode mode);

// --- band routing -----------------------------------------------------------

struct BandGeometry {
    const Band* band;
    double diam;

    double edge_offset(int idx, double entry_angle) const {
        return norm_pos(band->crossing_angle[idx] - entry_angle);
    }
    double angle_of(const Vec3& pos) const {
        return std::atan2(pos.y - band->mid_centroid.y, pos.x - band->mid_centroid.x);
    }
};

// A vertex is the band's apex when every crossing edge is incident to it:
// the band is a cone around that vertex and angular positions relative to
// it are meaningless (the very bottom and top bands of any body).
bool band_apex_vertex(const Polyhedron& p, const Band& band, int vertex) {
    if (vertex < 0) return false;
    for (int e : band.crossing_edges)
        if (!p.edges[e].has(vertex)) return false;
    return true;
}

bool corner_touches_triangle(const Polyhedron& p, const Corner& c, int t) {
    if (c.host == Corner::Host::vertex) {
        const auto& tv = p.triangles[t].v;
        return tv[0] == c.host_id || tv[1] == c.host_id || tv[2] == c.host_id;
    }
    return p.edges[c.host_id].tri[0] == t || p.edges[c.host_id].tri[1] == t;
}

// Crossing edges reachable in one straight hop from the corner: they bound
// a face the corner touches (possibly across flat diagonals of that face).
std::vector<int> adjacent_crossings(const Polyhedron& p, const Band& band, const Corner& c) {
    std::vector<int> out;
    for (int e : band.crossing_edges) {
        bool adj = false;
        for (int t : p.edges[e].tri) {
            if (t < 0) continue;
            if (corner_touches_triangle(p, c, t)) adj = true;
            // same merged face counts: a straight segment may cross the
            // face's flat diagonals on the way to this edge
            int fid = p.triangles[t].face_id;
            if (!adj && c.host == Corner::Host::vertex) {
                for (int ct : p.vertex_triangles[c.host_id])
                    if (p.triangles[ct].face_id == fid) adj = true;
            } else if (!adj) {
                for (int ct : p.edges[c.host_id].tri)
                    if (ct >= 0 && p.triangles[ct].face_id == fid) adj = true;
            }
        }
        if (adj) out.push_back(e);
    }
    return out;
}

std::optional<std::vector<Corner>> realize_route(const Polyhedron& p, const std::vector<int>& route,
                                                 const Corner& entry, int exit_vertex, double tol,
                                                 ClauseMode first_mode, ClauseMode last_mode,
                                                 double height_scale = 1.0) {
    const double ze = entry.pos.z;
    const double zx = p.vertices[exit_vertex].z;
    const int K = static_cast<int>(route.size());

    std::vector<Corner> corners;
    corners.reserve(K + 1);
    for (int j = 1; j <= K; ++j) {
        double h_lin = ze + (static_cast<double>(j) / (K + 1)) * (zx - ze);
        double h = zx - height_scale * (zx - h_lin);
        const MeshEdge& me = p.edges[route[j - 1]];
        double za = p.vertices[me.a].z, zb = p.vertices[me.b].z;
        if (std::abs(zb - za) < tol) return std::nullopt;
        double t = (h - za) / (zb - za);
        if (!(t > 1e-12 && t < 1.0 - 1e-12)) return std::nullopt;
        corners.push_back(Corner::on_edge(p, route[j - 1], t));
    }
    corners.push_back(Corner::at_vertex(p, exit_vertex));

    const Corner* prev = &entry;
    for (int j = 0; j <= K; ++j) {
        const Corner& cur = corners[j];
        try {
            segment_chords(p, *prev, cur);
            ClauseMode mode = ClauseMode::strict;
            if (j == 0 && first_mode == ClauseMode::lenient) mode = ClauseMode::lenient;
            if (j == K && last_mode == ClauseMode::lenient) mode = ClauseMode::lenient;
            if (!advance_ok(p, *prev, cur, tol, mode)) return std::nullopt;
        } catch (const Error&) {
            return std::nullopt;
        }
        prev = &cur;
    }
    return corners;
}

struct RouteQuery {
    const Polyhedron* p;
    const Band* band;
    Corner entry;
    int exit_vertex;
    int winding;
    double tol;
    ClauseMode first_mode = ClauseMode::strict;
    ClauseMode last_mode = ClauseMode::strict;
};

// Candidate crossing-edge sequences from the entry corner to the exit
// vertex: consecutive ccw runs that begin on an edge reachable from the
// entry and end on an edge adjacent to the exit, shortest first, plus
// full extra loops as fallbacks. The empty route (a direct hop) comes
// first when available.
std::vector<std::vector<int>> route_plans(const Polyhedron& p, const Band& band,
                                          const Corner& entry, int exit_vertex, int w) {
    const auto& edges = band.crossing_edges;
    const int L = static_cast<int>(edges.size());
    std::map<int, int> idx_of;
    for (int i = 0; i < L; ++i) idx_of[edges[i]] = i;

    std::vector<int> starts = adjacent_crossings(p, band, entry);
    std::vector<int> ends = adjacent_crossings(p, band, Corner::at_vertex(p, exit_vertex));
    int entry_vertex = entry.host == Corner::Host::vertex ? entry.host_id : -1;

    struct Cand {
        int len;            // crossing count of the partial run
        int start_idx;
        int total;          // with loops
        bool start_collinear, end_collinear;
    };
    std::vector<Cand> cands;
    for (int s : starts) {
        for (int e : ends) {
            int len = (idx_of[e] - idx_of[s] + L) % L + 1;
            Cand base;
            base.len = len;
            base.start_idx = idx_of[s];
            base.start_collinear = entry_vertex >= 0 && p.edges[s].has(entry_vertex);
            base.end_collinear = p.edges[e].has(exit_vertex);
            // total crossings: at least w full loops, at most one extra
            for (int m = std::max(0, w - 1); m <= w + 1; ++m) {
                int total = m * L + len;
                if (total < w * L || total > (w + 1) * L + L) continue;
                Cand c = base;
                c.total = total;
                cands.push_back(c);
            }
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        // prefer short runs with clean lead-in/lead-out
        int pa = a.start_collinear + a.end_collinear;
        int pb = b.start_collinear + b.end_collinear;
        if (a.total + 2 * pa != b.total + 2 * pb) return a.total + 2 * pa < b.total + 2 * pb;
        if (a.total != b.total) return a.total < b.total;
        return a.start_idx < b.start_idx;
    });

    std::vector<std::vector<int>> routes;
    std::set<std::vector<int>> seen;
    auto add = [&](const std::vector<int>& r) {
        if (seen.insert(r).second) routes.push_back(r);
    };
    if (w == 0) add({});  // direct hop
    for (const Cand& c : cands) {
        std::vector<int> r;
        for (int j = 0; j < c.total; ++j) r.push_back(edges[(c.start_idx + j) % L]);
        add(r);
    }
    return routes;
}

std::optional<std::vector<Corner>> route_through_band(const RouteQuery& q) {
    for (const auto& route : route_plans(*q.p, *q.band, q.entry, q.exit_vertex, q.winding)) {
        auto got = realize_route(*q.p, route, q.entry, q.exit_vertex, q.tol, q.first_mode,
                                 q.last_mode);
        if (got) return got;
    }
    return std::nullopt;
}

// --- level machinery --------------------------------------------------------

struct Levels {
    std::vector<std::vector<int>> groups;
    std::vector<double> z;
};

Levels make_levels(const Polyhedron& p, double tol) {
    Levels lv;
    lv.groups = vertex_levels(p, tol);
    for (const auto& g : lv.groups) {
        double z = 0.0;
        for (int v : g) z += p.vertices[v].z;
        lv.z.push_back(z / static_cast<double>(g.size()));
    }
    return lv;
}

Corner corner_from_slice(const Polyhedron& p, const SliceCorner& sc) {
    if (sc.host == SliceCorner::Host::vertex) return Corner::at_vertex(p, sc.host_id);
    return Corner::on_edge(p, sc.host_id, sc.t);
}

int find_corner_on_slice(const SlicePolygon& slice, const Corner& c) {
    for (int i = 0; i < static_cast<int>(slice.corners.size()); ++i) {
        const SliceCorner& sc = slice.corners[i];
        if (c.host == Corner::Host::vertex && sc.host == SliceCorner::Host::vertex &&
            sc.host_id == c.host_id)
            return i;
        if (c.host == Corner::Host::edge && sc.host == SliceCorner::Host::edge &&
            sc.host_id == c.host_id && std::abs(sc.t - c.t) < 1e-6)
            return i;
    }
    return -1;
}

bool advance_ok(const Polyhedron& p, const Corner& a, const Corner& b, double tol,
                ClauseMode mode) {
    double dz = b.pos.z - a.pos.z;
    if (dz < -tol) return false;

    if (std::abs(dz) <= tol) {
        // Level segment: must follow the slice polygon ccw.
        SlicePolygon slice = slice_at(p, 0.5 * (a.pos.z + b.pos.z), tol);
        int ia = find_corner_on_slice(slice, a);
        int ib = find_corner_on_slice(slice, b);
        if (ia < 0 || ib < 0) throw NotOnSurface("level segment endpoint not on the slice polygon");
        int n = static_cast<int>(slice.corners.size());
        if (slice.degenerate) return true;
        return (ia + 1) % n == ib;
    }

    // Both corners on crossing edges of the same vertex-free slab: use the
    // combinatorial cyclic order.
    if (a.host == Corner::Host::edge && b.host == Corner::Host::edge &&
        a.host_id != b.host_id) {
        for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v) {
            double vz = p.vertices[v].z;
            if (vz > a.pos.z + tol && vz < b.pos.z - tol)
                throw AmbiguousBand("segment spans a vertex level without a corner there");
        }
        auto spans = [&](int e) {
            if (!p.edge_is_crease(e)) return false;
            double za = p.vertices[p.edges[e].a].z, zb = p.vertices[p.edges[e].b].z;
            return std::min(za, zb) <= a.pos.z + tol && std::max(za, zb) >= b.pos.z - tol;
        };
        if (spans(a.host_id) && spans(b.host_id)) {
            double zm = 0.5 * (a.pos.z + b.pos.z);
            auto cross_at = [&](int e) {
                const MeshEdge& me = p.edges[e];
                double za = p.vertices[me.a].z, zb = p.vertices[me.b].z;
                double t = (zm - za) / (zb - za);
                return p.vertices[me.a] + (p.vertices[me.b] - p.vertices[me.a]) * t;
            };
            // Angular order about the centroid of the two crossings is a
            // poor proxy; recompute against the full slab strip instead.
            std::vector<std::pair<double, int>> ring;
            Vec3 c{};
            int count = 0;
            for (int e = 0; e < static_cast<int>(p.edges.size()); ++e)
                if (spans(e)) { c += cross_at(e); ++count; }
            c = c / static_cast<double>(count);
            double aa = 0.0, ab = 0.0;
            std::vector<std::pair<double, int>> offs;
            for (int e = 0; e < static_cast<int>(p.edges.size()); ++e) {
                if (!spans(e)) continue;
                Vec3 q = cross_at(e);
                double ang = std::atan2(q.y - c.y, q.x - c.x);
                if (e == a.host_id) aa = ang;
                if (e == b.host_id) ab = ang;
                offs.emplace_back(ang, e);
            }
            std::sort(offs.begin(), offs.end());
            int ia = -1, ib = -1;
            for (int i = 0; i < static_cast<int>(offs.size()); ++i) {
                if (offs[i].second == a.host_id) ia = i;
                if (offs[i].second == b.host_id) ib = i;
            }
            int n = static_cast<int>(offs.size());
            if ((ia + 1) % n == ib) return true;
            if ((ib + 1) % n == ia) return false;
            return norm_pos(ab - aa) <= kPi;
        }
    }

    Vec3 dir = b.pos - a.pos;
    bool ca = ccw_clause(p, a, dir, PlaneSide::above, mode);
    bool cb = ccw_clause(p, b, -1.0 * dir, PlaneSide::below, mode);
    return ca && cb;
}

}  // namespace

// --- public operations ------------------------------------------------------

SegmentHost segment_host(const Polyhedron& p, const Corner& a, const Corner& b) {
    auto tri_has_vertex = [&](int t, int v) {
        const auto& tv = p.triangles[t].v;
        return tv[0] == v || tv[1] == v || tv[2] == v;
    };

    if (a.host == Corner::Host::edge && b.host == Corner::Host::edge) {
        if (a.host_id == b.host_id) return {SegmentHost::Kind::edge, a.host_id};
        const MeshEdge& ea = p.edges[a.host_id];
        const MeshEdge& eb = p.edges[b.host_id];
        for (int ta : ea.tri)
            for (int tb : eb.tri)
                if (ta == tb) return {SegmentHost::Kind::triangle, ta};
        throw NotOnSurface("segment endpoints lie on edges of disjoint triangles");
    }
    if (a.host == Corner::Host::vertex && b.host == Corner::Host::vertex) {
        int e = p.edge_index(a.host_id, b.host_id);
        if (e >= 0) return {SegmentHost::Kind::edge, e};
        int best = -1;
        for (int t : p.vertex_triangles[a.host_id])
            if (tri_has_vertex(t, b.host_id) && (best < 0 || t < best)) best = t;
        if (best >= 0) return {SegmentHost::Kind::triangle, best};
        throw NotOnSurface("vertices share no face");
    }
    const Corner& vc = a.host == Corner::Host::vertex ? a : b;
    const Corner& ec = a.host == Corner::Host::vertex ? b : a;
    const MeshEdge& me = p.edges[ec.host_id];
    if (me.has(vc.host_id)) return {SegmentHost::Kind::edge, ec.host_id};
    for (int t : me.tri)
        if (t >= 0 && tri_has_vertex(t, vc.host_id)) return {SegmentHost::Kind::triangle, t};
    throw NotOnSurface("vertex and edge point share no face");
}

namespace {

int corner_face_triangle(const Polyhedron& p, const Corner& c, int face_id) {
    if (c.host == Corner::Host::vertex) {
        for (int t : p.vertex_triangles[c.host_id])
            if (p.triangles[t].face_id == face_id) return t;
        return -1;
    }
    for (int t : p.edges[c.host_id].tri)
        if (t >= 0 && p.triangles[t].face_id == face_id) return t;
    return -1;
}

}  // namespace

std::vector<SegmentChord> segment_chords(const Polyhedron& p, const Corner& a, const Corner& b) {
    try {
        SegmentHost h = segment_host(p, a, b);
        return {SegmentChord{h, a, b}};
    } catch (const NotOnSurface&) {
        // fall through to the coplanar walk
    }

    // Candidate faces: shared between the endpoints, with both positions in
    // the face plane.
    const double ptol = 1e-9 * p.diameter();
    int face = -1, start_tri = -1;
    for (int ta = 0; ta < static_cast<int>(p.triangles.size()) && face < 0; ++ta) {
        // iterate over a's faces only
        if (corner_face_triangle(p, a, p.triangles[ta].face_id) < 0) continue;
        int fid = p.triangles[ta].face_id;
        if (corner_face_triangle(p, b, fid) < 0) continue;
        Vec3 n = p.triangle_normal(ta);
        double off = n.dot(p.vertices[p.triangles[ta].v[0]]);
        if (std::abs(n.dot(a.pos) - off) > ptol || std::abs(n.dot(b.pos) - off) > ptol) continue;
        face = fid;
        start_tri = ta;
    }
    if (face < 0) throw NotOnSurface("segment does not stay within one face of the surface");

    // Walk triangles of the face along the straight segment a -> b.
    Vec3 n = p.triangle_normal(start_tri);
    // 2D frame in the face plane
    Vec3 ux = (b.pos - a.pos).normalized();
    Vec3 uy = n.cross(ux).normalized();
    auto to2d = [&](const Vec3& q) { return Vec2{(q - a.pos).dot(ux), (q - a.pos).dot(uy)}; };
    double seg_len = (b.pos - a.pos).norm();

    auto tri_of_corner = [&](const Corner& c) { return corner_face_triangle(p, c, face); };

    // Start triangle: the face triangle containing a slightly advanced point.
    int cur = -1;
    {
        Vec3 probe = a.pos + (b.pos - a.pos) * (1e-7);
        Vec2 pq = to2d(probe);
        double best = -1e9;
        for (int t = 0; t < static_cast<int>(p.triangles.size()); ++t) {
            if (p.triangles[t].face_id != face) continue;
            Vec2 q0 = to2d(p.vertices[p.triangles[t].v[0]]);
            Vec2 q1 = to2d(p.vertices[p.triangles[t].v[1]]);
            Vec2 q2 = to2d(p.vertices[p.triangles[t].v[2]]);
            double d0 = (q1 - q0).cross(pq - q0);
            double d1 = (q2 - q1).cross(pq - q1);
            double d2 = (q0 - q2).cross(pq - q2);
            double m = std::min({d0, d1, d2});
            if (m > best) { best = m; cur = t; }
        }
        if (cur < 0) throw NotOnSurface("no face triangle contains the segment start");
    }

    std::vector<SegmentChord> chords;
    Corner from = a;
    double s_cur = 0.0;
    const int tri_b = tri_of_corner(b);
    int guard = 0;
    while (true) {
        if (++guard > static_cast<int>(p.triangles.size()) + 4)
            throw NotOnSurface("coplanar walk failed to terminate");
        bool b_here = tri_b == cur;
        if (!b_here && b.host == Corner::Host::vertex) {
            const auto& tv = p.triangles[cur].v;
            b_here = tv[0] == b.host_id || tv[1] == b.host_id || tv[2] == b.host_id;
        }
        if (b_here) {
            chords.push_back({{SegmentHost::Kind::triangle, cur}, from, b});
            break;
        }
        // Exit through the first edge of cur crossed beyond s_cur.
        const auto& tv = p.triangles[cur].v;
        double best_s = 2.0;
        int best_edge = -1;
        double best_u = 0.0;
        for (int k = 0; k < 3; ++k) {
            int va = tv[k], vb = tv[(k + 1) % 3];
            int e = p.edge_index(va, vb);
            if (from.host == Corner::Host::edge && e == from.host_id) continue;
            Vec2 e0 = to2d(p.vertices[va]);
            Vec2 e1 = to2d(p.vertices[vb]);
            // segment: (s, 0) for s in [0, seg_len]; edge: e0 + u (e1 - e0)
            double dy = e1.y - e0.y;
            if (std::abs(dy) < 1e-14 * p.diameter()) continue;
            double u = -e0.y / dy;
            if (u < -1e-9 || u > 1.0 + 1e-9) continue;
            double s = e0.x + u * (e1.x - e0.x);
            if (s <= s_cur + 1e-12 * p.diameter() || s > seg_len + ptol) continue;
            if (s < best_s) { best_s = s; best_edge = e; best_u = std::clamp(u, 0.0, 1.0); }
        }
        if (best_edge < 0) throw NotOnSurface("segment leaves the face before reaching its end");
        const MeshEdge& me = p.edges[best_edge];
        // parameter along the stored edge orientation for a stable key
        double u_on_edge;
        {
            Vec2 e0 = to2d(p.vertices[me.a]);
            Vec2 e1 = to2d(p.vertices[me.b]);
            u_on_edge = std::clamp(-e0.y / (e1.y - e0.y), 0.0, 1.0);
        }
        (void)best_u;
        Corner junction;
        if (u_on_edge < 1e-9 || u_on_edge > 1.0 - 1e-9) {
            int v = u_on_edge < 0.5 ? me.a : me.b;
            junction = Corner::at_vertex(p, v);
            junction.is_polyhedron_vertex = true;
        } else {
            junction = Corner::on_edge(p, best_edge, u_on_edge);
        }
        chords.push_back({{SegmentHost::Kind::triangle, cur}, from, junction});
        s_cur = best_s;
        from = junction;
        if (junction.host == Corner::Host::edge) {
            cur = me.tri[0] == cur ? me.tri[1] : me.tri[0];
            if (p.triangles[cur].face_id != face)
                throw NotOnSurface("segment crosses a crease edge between corners");
        } else {
            // passed exactly through an interior vertex of the face fan
            Vec3 probe = a.pos + (b.pos - a.pos) * std::min(1.0, (best_s + 1e-7) / seg_len);
            Vec2 pq = to2d(probe);
            double best = -1e9;
            int nxt = -1;
            for (int t : p.vertex_triangles[junction.host_id]) {
                if (p.triangles[t].face_id != face || t == cur) continue;
                Vec2 q0 = to2d(p.vertices[p.triangles[t].v[0]]);
                Vec2 q1 = to2d(p.vertices[p.triangles[t].v[1]]);
                Vec2 q2 = to2d(p.vertices[p.triangles[t].v[2]]);
                double m = std::min({(q1 - q0).cross(pq - q0), (q2 - q1).cross(pq - q1),
                                     (q0 - q2).cross(pq - q2)});
                if (m > best) { best = m; nxt = t; }
            }
            if (nxt < 0) throw NotOnSurface("walk stuck at a face-interior vertex");
            cur = nxt;
        }
    }
    return chords;
}

bool is_ccw_advance(const Polyhedron& p, const Corner& a, const Corner& b, double height_tol) {
    double tol = height_tol >= 0.0 ? height_tol : p.default_height_tol();
    if (b.pos.z < a.pos.z - tol)
        throw Error("is_ccw_advance requires z(a) <= z(b)");
    segment_chords(p, a, b);  // NotOnSurface if the segment leaves the surface
    return advance_ok(p, a, b, tol, ClauseMode::strict);
}

std::vector<Corner> level_cycle(const Polyhedron& p, const SlicePolygon& slice,
                                const std::vector<int>& pending, const Corner& entry) {
    std::vector<Corner> out;
    if (pending.empty()) return out;
    int idx = find_corner_on_slice(slice, entry);
    if (idx < 0) throw NotOnSurface("level cycle entry is not on the slice polygon");
    std::set<int> todo(pending.begin(), pending.end());
    const int n = static_cast<int>(slice.corners.size());
    for (int step = 1; step < n && !todo.empty(); ++step) {
        const SliceCorner& sc = slice.corners[(idx + step) % n];
        out.push_back(corner_from_slice(p, sc));
        if (sc.host == SliceCorner::Host::vertex) todo.erase(sc.host_id);
    }
    if (!todo.empty())
        throw InternalError("level cycle could not reach every pending vertex");
    // Trim trailing non-vertex corners: the cycle ends at the last vertex.
    while (!out.empty() && !out.back().is_polyhedron_vertex) out.pop_back();
    return out;
}

std::vector<Corner> band_traverse(const Polyhedron& p, const Band& band, const Corner& entry,
                                  int w, int exit_vertex, double height_tol) {
    double tol = height_tol >= 0.0 ? height_tol : p.default_height_tol();
    if (std::abs(p.vertices[exit_vertex].z - band.z_hi) > tol)
        throw ExitNotAdjacent("exit vertex is not on the band's upper plane");
    RouteQuery q{&p, &band, entry, exit_vertex, w, tol};
    bool top = std::abs(p.vertices[exit_vertex].z - p.max_z()) <= tol;
    q.last_mode = top ? ClauseMode::lenient : ClauseMode::strict;
    bool bottom_entry = entry.host == Corner::Host::vertex &&
                        std::abs(entry.pos.z - p.min_z()) <= tol;
    q.first_mode = bottom_entry ? ClauseMode::lenient : ClauseMode::strict;
    auto got = route_through_band(q);
    if (!got) throw InternalError("no ccw route through band to the requested exit");
    return *got;
}

namespace {

double turn_angle_at(const Polyhedron& p, int vertex, const Vec3& toward_prev,
                     const Vec3& toward_next) {
    DirectionFan fan = direction_fan(p, SurfacePoint::at_vertex(p, vertex));
    double a1 = fan.angle_of(toward_prev);
    double a2 = fan.angle_of(toward_next);
    double d = std::fmod(std::abs(a1 - a2), fan.total);
    return std::min(d, fan.total - d);
}

// All validated ways to leave a band from the entry corner toward any of
// the given exit vertices; used both to traverse and, at the bottom
// vertex, as the family of departure directions for the nonacute turn.
std::vector<std::vector<Corner>> band_route_family(const Polyhedron& p, const Band& band,
                                                   const Corner& entry,
                                                   const std::vector<int>& exits, int w,
                                                   double tol, ClauseMode first_mode,
                                                   ClauseMode last_mode, int max_variants) {
    std::vector<std::vector<Corner>> out;
    for (int exit_vertex : exits) {
        for (const auto& r : route_plans(p, band, entry, exit_vertex, w)) {
            for (double scale : {1.0, 0.55, 0.25}) {
                auto got = realize_route(p, r, entry, exit_vertex, tol, first_mode, last_mode,
                                         scale);
                if (got) {
                    out.push_back(std::move(*got));
                    break;  // one height profile per route shape
                }
            }
            if (static_cast<int>(out.size()) >= max_variants) return out;
        }
    }
    return out;
}

struct ChainCandidate {
    std::vector<Corner> corners;       // v1 .. v2
    std::vector<Corner> continuation;  // chosen departure route (may be empty)
    double arc_length = 0.0;
    double turn = 0.0;                 // realized turn angle at v2
    int first_edge = -1;
    bool acute_fallback = false;       // no nonacute turn was attainable
};

// Chains from the unique bottom vertex to v2 paired with a continuation
// that realizes a nonacute turn at v2. The continuation family covers the
// level cycle direction (when v2's level has more vertices) or validated
// routes through the band above.
std::vector<ChainCandidate> first_segment_candidates(const Polyhedron& p, const Levels& lv,
                                                     int v1, int v2, int w, double tol) {
    bool v1_ok = false;
    for (int u : lv.groups[0]) v1_ok |= (u == v1);
    if (lv.groups.size() < 2 || !v1_ok)
        throw Error("first_segment requires a bottommost vertex v1");
    bool found = false;
    for (int u : lv.groups[1]) found |= (u == v2);
    if (!found) throw Error("v2 is not on the vertex level above v1");

    Band band = band_between(p, lv.z[0], lv.z[1], tol);
    Corner entry = Corner::at_vertex(p, v1);
    const int K = static_cast<int>(lv.groups.size());

    // Departure family at v2.
    bool turn_constrained = true;
    std::vector<std::vector<Corner>> departures;
    if (lv.groups[1].size() > 1) {
        SlicePolygon slice = slice_at(p, lv.z[1], tol);
        int idx = slice.find_vertex_corner(v2);
        if (idx >= 0) {
            const SliceCorner& next =
                slice.corners[(idx + 1) % static_cast<int>(slice.corners.size())];
            departures.push_back({corner_from_slice(p, next)});
        }
    } else if (K >= 3) {
        Band above = band_between(p, lv.z[1], lv.z[2], tol);
        ClauseMode last =
            (K == 3 && lv.groups[2].size() == 1) ? ClauseMode::lenient : ClauseMode::strict;
        departures = band_route_family(p, above, Corner::at_vertex(p, v2), lv.groups[2], w,
                                       tol, ClauseMode::strict, last, 24);
    } else {
        turn_constrained = false;  // v2 is the topmost level
    }
    if (turn_constrained && departures.empty())
        return {};

    bool last_lenient = K == 2;

    std::vector<ChainCandidate> feasible;
    std::vector<ChainCandidate> fallback;  // valid chains with an acute turn
    auto consider = [&](const std::vector<int>& route, double scale) {
        auto got = realize_route(p, route, entry, v2, tol, ClauseMode::lenient,
                                 last_lenient ? ClauseMode::lenient : ClauseMode::strict, scale);
        if (!got) return false;
        ChainCandidate c;
        c.turn = kPi;
        if (turn_constrained) {
            Vec3 prev_pos = got->size() >= 2 ? (*got)[got->size() - 2].pos : entry.pos;
            Vec3 toward_prev = prev_pos - p.vertices[v2];
            c.turn = -1.0;
            for (const auto& dep : departures) {
                double turn =
                    turn_angle_at(p, v2, toward_prev, dep.front().pos - p.vertices[v2]);
                if (turn > c.turn) {
                    c.turn = turn;
                    c.continuation = dep;
                }
                if (c.turn >= kPi / 2.0 - 1e-12) break;
            }
        }
        c.corners.push_back(entry);
        c.corners.insert(c.corners.end(), got->begin(), got->end());
        for (size_t i = 0; i + 1 < c.corners.size(); ++i)
            c.arc_length += (c.corners[i + 1].pos - c.corners[i].pos).norm();
        c.first_edge = route.empty() ? -1 : route.front();
        bool ok = c.turn >= kPi / 2.0 - 1e-12;
        (ok ? feasible : fallback).push_back(std::move(c));
        return ok;
    };

    std::vector<std::vector<int>> routes = route_plans(p, band, entry, v2, w);
    for (const auto& r : routes) consider(r, 1.0);

    if (feasible.empty()) {
        // Sampled approach heights stand in for a dense search over
        // departure directions from v1.
        for (int s = 255; s >= 1 && feasible.empty(); s -= 2)
            for (const auto& r : routes)
                if (!r.empty() && consider(r, static_cast<double>(s) / 256.0)) break;
    }
    if (feasible.empty()) {
        // No chain reaches a right angle (sharp vertices where the total
        // surface angle at v2 is pi or less make that unattainable); keep
        // the widest available turn so callers can degrade explicitly.
        const ChainCandidate* widest = nullptr;
        for (const auto& c : fallback)
            if (!widest || c.turn > widest->turn) widest = &c;
        if (widest) {
            ChainCandidate c = *widest;
            c.acute_fallback = true;
            return {std::move(c)};
        }
    }
    return feasible;
}

const ChainCandidate* best_chain(const std::vector<ChainCandidate>& feasible) {
    const ChainCandidate* best = nullptr;
    for (const auto& c : feasible) {
        if (c.acute_fallback && best && !best->acute_fallback) continue;
        bool replace = !best || (best->acute_fallback && !c.acute_fallback);
        if (!replace && best->acute_fallback == c.acute_fallback) {
            replace = c.arc_length < best->arc_length ||
                      (c.arc_length == best->arc_length &&
                       (c.corners.size() < best->corners.size() ||
                        (c.corners.size() == best->corners.size() &&
                         c.first_edge < best->first_edge)));
        }
        if (replace) best = &c;
    }
    return best;
}

}  // namespace

std::vector<Corner> first_segment(const Polyhedron& p, int v1, int v2, int winding,
                                  double height_tol) {
    double tol = height_tol >= 0.0 ? height_tol : p.default_height_tol();
    Levels lv = make_levels(p, tol);
    auto feasible = first_segment_candidates(p, lv, v1, v2, winding, tol);
    if (feasible.empty() || feasible.front().acute_fallback)
        throw NoNonacuteTurn(
            "no ccw-advancing chain from the bottom vertex makes a nonacute turn at v2 "
            "(searched crossing counts, departure routes, and 128 approach slopes)");
    return best_chain(feasible)->corners;
}

SpiralPath build_spiral(const Polyhedron& p, int winding, double height_tol) {
    if (winding < 0) throw DomainError("winding must be nonnegative");
    double tol = height_tol >= 0.0 ? height_tol : p.default_height_tol();
    SpiralPath path;
    path.winding = winding;

    Levels lv = make_levels(p, tol);
    const int K = static_cast<int>(lv.groups.size());

    if (K == 1) {
        // Flat horizontal body: the spiral is the rim path.
        SlicePolygon rim = slice_at(p, lv.z[0], tol);
        int p1 = lv.groups[0][0];
        path.notes.push_back("flat body: spiral follows the rim");
        Corner entry = Corner::at_vertex(p, p1);
        path.corners.push_back(entry);
        std::vector<int> pending;
        for (int v : lv.groups[0])
            if (v != p1) pending.push_back(v);
        auto cyc = level_cycle(p, rim, pending, entry);
        path.corners.insert(path.corners.end(), cyc.begin(), cyc.end());
        return path;
    }

    int p1 = lv.groups[0][0];
    if (lv.groups[0].size() > 1)
        path.notes.push_back("multiple bottommost vertices: chose vertex " + std::to_string(p1));
    path.corners.push_back(Corner::at_vertex(p, p1));

    if (lv.groups[0].size() > 1) {
        SlicePolygon slice = slice_at(p, lv.z[0], tol);
        std::vector<int> pending;
        for (int v : lv.groups[0])
            if (v != p1) pending.push_back(v);
        auto cyc = level_cycle(p, slice, pending, path.corners.front());
        path.corners.insert(path.corners.end(), cyc.begin(), cyc.end());
    }

    // Paper's special bottom handling: from a unique bottom vertex, pick the
    // first chain jointly with a departure that makes a nonacute turn.
    int start_lvl = 0;
    if (lv.groups[0].size() == 1 && K >= 2) {
        std::vector<ChainCandidate> all;
        for (int v2 : lv.groups[1]) {
            auto feas = first_segment_candidates(p, lv, p1, v2, winding, tol);
            all.insert(all.end(), feas.begin(), feas.end());
        }
        if (all.empty())
            throw NoNonacuteTurn("no valid first chain exists from the bottom vertex");
        const ChainCandidate* best = best_chain(all);
        if (best->acute_fallback)
            path.notes.push_back(
                "nonacute first turn unattainable; widest available turn is " +
                std::to_string(best->turn) + " rad");
        path.corners.insert(path.corners.end(), best->corners.begin() + 1,
                            best->corners.end());
        int arrived1 = best->corners.back().host_id;
        start_lvl = 1;
        if (lv.groups[1].size() > 1) {
            SlicePolygon slice = slice_at(p, lv.z[1], tol);
            std::vector<int> pending;
            for (int v : lv.groups[1])
                if (v != arrived1) pending.push_back(v);
            auto cyc = level_cycle(p, slice, pending, path.corners.back());
            path.corners.insert(path.corners.end(), cyc.begin(), cyc.end());
        } else if (!best->continuation.empty()) {
            // the departure that realized the nonacute turn traverses the
            // band above v2 as well
            path.corners.insert(path.corners.end(), best->continuation.begin(),
                                best->continuation.end());
            int arrived2 = best->continuation.back().host_id;
            start_lvl = 2;
            if (lv.groups[2].size() > 1) {
                SlicePolygon slice = slice_at(p, lv.z[2], tol);
                std::vector<int> pending;
                for (int v : lv.groups[2])
                    if (v != arrived2) pending.push_back(v);
                auto cyc = level_cycle(p, slice, pending, path.corners.back());
                path.corners.insert(path.corners.end(), cyc.begin(), cyc.end());
            }
        }
    }

    for (int lvl = start_lvl; lvl + 1 < K; ++lvl) {
        const Corner current = path.corners.back();
        int arrived = -1;
        {
            Band band = band_between(p, lv.z[lvl], lv.z[lvl + 1], tol);
            BandGeometry g{&band, p.diameter()};
            bool exit_is_top = lvl + 1 == K - 1 && lv.groups[lvl + 1].size() == 1;

            std::vector<int> cands = lv.groups[lvl + 1];
            int cur_vertex = current.host == Corner::Host::vertex ? current.host_id : -1;
            double ea = band_apex_vertex(p, band, cur_vertex) ? 0.0 : g.angle_of(current.pos);
            auto ccw_dist = [&](int v) {
                if (band_apex_vertex(p, band, v)) return 0.0;
                return norm_half_open(g.angle_of(p.vertices[v]) - ea);
            };
            std::sort(cands.begin(), cands.end(), [&](int a, int b) {
                double ta = ccw_dist(a), tb = ccw_dist(b);
                if (ta != tb) return ta < tb;
                return a < b;
            });

            // Shortest validated connection across the exit candidates ("the
            // connection is as direct as possible").
            std::optional<std::vector<Corner>> best_route;
            for (int cand : cands) {
                RouteQuery q{&p, &band, current, cand, winding, tol};
                q.last_mode = exit_is_top ? ClauseMode::lenient : ClauseMode::strict;
                auto got = route_through_band(q);
                if (got && (!best_route || got->size() < best_route->size())) {
                    best_route = got;
                    arrived = cand;
                    if (best_route->size() <= 1) break;  // direct hop cannot be beaten
                }
            }
            if (!best_route)
                throw InternalError("no ccw route through band between levels " +
                                    std::to_string(lvl) + " and " + std::to_string(lvl + 1));
            path.corners.insert(path.corners.end(), best_route->begin(), best_route->end());
        }

        if (lv.groups[lvl + 1].size() > 1) {
            SlicePolygon slice = slice_at(p, lv.z[lvl + 1], tol);
            std::vector<int> pending;
            for (int v : lv.groups[lvl + 1])
                if (v != arrived) pending.push_back(v);
            auto cyc = level_cycle(p, slice, pending, path.corners.back());
            path.corners.insert(path.corners.end(), cyc.begin(), cyc.end());
        }
    }
    return path;
}

namespace {

double segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1) {
    Vec3 u = a1 - a0, v = b1 - b0, w = a0 - b0;
    double aa = u.dot(u), bb = u.dot(v), cc = v.dot(v), dd = u.dot(w), ee = v.dot(w);
    double den = aa * cc - bb * bb;
    double s, t;
    if (den < 1e-18) {
        s = 0.0;
        t = cc > 0.0 ? ee / cc : 0.0;
    } else {
        s = (bb * ee - cc * dd) / den;
        t = (aa * ee - bb * dd) / den;
    }
    s = std::clamp(s, 0.0, 1.0);
    t = std::clamp(t, 0.0, 1.0);
    // refine endpoints once each way
    Vec3 ps = a0 + u * s;
    double t2 = cc > 0.0 ? std::clamp((ps - b0).dot(v) / cc, 0.0, 1.0) : 0.0;
    Vec3 pt = b0 + v * t2;
    double s2 = aa > 0.0 ? std::clamp((pt - a0).dot(u) / aa, 0.0, 1.0) : 0.0;
    return ((a0 + u * s2) - pt).norm();
}

}  // namespace

SpiralValidation validate_spiral(const Polyhedron& p, const SpiralPath& s, double height_tol) {
    double tol = height_tol >= 0.0 ? height_tol : p.default_height_tol();
    SpiralValidation r;
    const auto& c = s.corners;
    const int m = static_cast<int>(c.size());
    if (m < 2) {
        r.z_monotone = r.hamiltonian = r.surface_simple = r.all_ccw = false;
        return r;
    }

    for (int i = 0; i + 1 < m; ++i) {
        if (c[i + 1].pos.z < c[i].pos.z - tol) {
            r.z_monotone = false;
            r.first_non_monotone = i;
            break;
        }
    }

    std::vector<int> count(p.vertices.size(), 0);
    for (const Corner& k : c)
        if (k.host == Corner::Host::vertex) ++count[k.host_id];
    for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v)
        if (count[v] != 1) {
            r.hamiltonian = false;
            r.first_missing_vertex = v;
            break;
        }
    if (r.hamiltonian) {
        bool ends_ok = c.front().host == Corner::Host::vertex &&
                       c.back().host == Corner::Host::vertex &&
                       std::abs(c.front().pos.z - p.min_z()) <= tol &&
                       std::abs(c.back().pos.z - p.max_z()) <= tol;
        if (!ends_ok) {
            r.hamiltonian = false;
            r.first_missing_vertex = -2;
        }
    }

    double touch = 1e-12 * p.diameter();
    for (int i = 0; i + 1 < m && r.surface_simple; ++i)
        for (int j = i + 2; j + 1 < m; ++j) {
            double d = segment_distance(c[i].pos, c[i + 1].pos, c[j].pos, c[j + 1].pos);
            if (d <= touch) {
                r.surface_simple = false;
                r.first_crossing = i;
                break;
            }
        }

    for (int i = 0; i + 1 < m; ++i) {
        ClauseMode mode = (i == 0 || i == m - 2) ? ClauseMode::lenient : ClauseMode::strict;
        bool ok = false;
        try {
            ok = advance_ok(p, c[i], c[i + 1], tol, mode);
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) {
            r.all_ccw = false;
            r.first_non_ccw = i;
            break;
        }
    }
    return r;
}

}  // namespace spiralcut

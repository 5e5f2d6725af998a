#pragma once
#include <optional>
#include <string>
#include <vector>

#include "spiralcut/angles.hpp"
#include "spiralcut/slicing.hpp"

namespace spiralcut {

// A turn point of the cut-path, anchored to a mesh vertex or an edge point.
struct Corner {
    enum class Host { vertex, edge };
    Host host = Host::vertex;
    int host_id = -1;
    double t = 0.0;  // edge parameter, strictly interior for edge hosts
    Vec3 pos;
    bool is_polyhedron_vertex = false;

    static Corner at_vertex(const Polyhedron& p, int v) {
        return {Host::vertex, v, 0.0, p.vertices[v], true};
    }
    static Corner on_edge(const Polyhedron& p, int e, double t) {
        const MeshEdge& me = p.edges[e];
        return {Host::edge, e, t,
                p.vertices[me.a] + (p.vertices[me.b] - p.vertices[me.a]) * t, false};
    }
    SurfacePoint surface_point() const {
        SurfacePoint sp;
        sp.kind = host == Host::vertex ? SurfacePoint::Kind::vertex : SurfacePoint::Kind::edge_point;
        sp.id = host_id;
        sp.t = t;
        sp.pos = pos;
        return sp;
    }
};

struct SpiralPath {
    std::vector<Corner> corners;
    int winding = 0;
    std::vector<std::string> notes;  // construction events (tie resolutions etc.)
    size_t size() const { return corners.size(); }
};

struct SpiralValidation {
    bool z_monotone = true;
    bool hamiltonian = true;
    bool surface_simple = true;
    bool all_ccw = true;
    int first_non_monotone = -1;   // segment index
    int first_missing_vertex = -1; // vertex id missing/duplicated
    int first_crossing = -1;       // segment index
    int first_non_ccw = -1;        // segment index
    bool ok() const { return z_monotone && hamiltonian && surface_simple && all_ccw; }
};

// The mesh element a straight cut segment lives on.
struct SegmentHost {
    enum class Kind { edge, triangle };
    Kind kind = Kind::triangle;
    int id = -1;
};
SegmentHost segment_host(const Polyhedron& p, const Corner& a, const Corner& b);

// A segment between two corners decomposed into per-triangle chords. A
// straight on-surface segment stays within one face but may cross that
// face's flat triangulation diagonals; junction points sit on those edges.
struct SegmentChord {
    SegmentHost host;
    Corner from, to;  // junctions carry is_polyhedron_vertex = false
};
std::vector<SegmentChord> segment_chords(const Polyhedron& p, const Corner& a, const Corner& b);

// The ccw-advance predicate: combinatorial band-edge order when both
// corners sit on crossing edges of one band, otherwise the surface-angle
// test at both endpoints (clockwise-to-horizontal smaller than
// counterclockwise-to-horizontal, measured along the segment direction).
// Equal-height segments advance ccw when they follow the slice polygon.
bool is_ccw_advance(const Polyhedron& p, const Corner& a, const Corner& b,
                    double height_tol = -1.0);

// Chain from the bottom vertex to v2 making a nonacute turn at v2 against
// the continuation direction; shortest feasible chain wins.
std::vector<Corner> first_segment(const Polyhedron& p, int v1, int v2,
                                  int winding = 0, double height_tol = -1.0);

// Corners across the band from the entry corner, circling w full times,
// then connecting to exit_vertex. Returns crossing corners plus the exit
// corner; heights interpolate linearly from entry to exit.
std::vector<Corner> band_traverse(const Polyhedron& p, const Band& band, const Corner& entry,
                                  int w, int exit_vertex, double height_tol = -1.0);

// Corners following the slice polygon ccw from entry until every pending
// vertex has been visited.
std::vector<Corner> level_cycle(const Polyhedron& p, const SlicePolygon& slice,
                                const std::vector<int>& pending, const Corner& entry);

SpiralPath build_spiral(const Polyhedron& p, int winding = 0, double height_tol = -1.0);

SpiralValidation validate_spiral(const Polyhedron& p, const SpiralPath& s,
                                 double height_tol = -1.0);

}  // namespace spiralcut

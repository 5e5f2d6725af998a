#include <doctest.h>

#include "spiralcut/generators.hpp"
#include "spiralcut/rng.hpp"
#include "spiralcut/unfold.hpp"

using namespace spiralcut;

namespace {

Polyhedron tilted(const Polyhedron& p, double a = 0.41, double b = 0.23) {
    return orient(orient(p, Mat3::axis_angle({1, 0, 0}, a)), Mat3::axis_angle({0, 1, 0}, b));
}

PlanarLayout unfold_body(const Polyhedron& p, int w = 0) {
    SpiralPath s = build_spiral(p, w);
    CutDisk d = cut_surface(p, s);
    return develop(d);
}

double chain_length(const std::vector<BoundaryPoint>& chain) {
    double len = 0.0;
    for (size_t i = 0; i + 1 < chain.size(); ++i)
        len += (chain[i + 1].pos - chain[i].pos).norm();
    return len;
}

}  // namespace

TEST_CASE("cut disk invariants: Euler characteristic, area, boundary length") {
    Polyhedron cube = tilted(make_solid(SolidKind::cube, 1.0));
    SpiralPath s = build_spiral(cube, 0);
    CutDisk d = cut_surface(cube, s);
    CHECK(d.euler_characteristic() == 1);
    CHECK(d.area() == doctest::Approx(cube.surface_area()).epsilon(1e-9));

    double spiral_len = 0.0;
    for (size_t i = 0; i + 1 < s.corners.size(); ++i)
        spiral_len += (s.corners[i + 1].pos - s.corners[i].pos).norm();
    CHECK(d.boundary_length() == doctest::Approx(2.0 * spiral_len).epsilon(1e-9));

    // gluing round-trip: the two chains reference the same source corners
    REQUIRE(d.rho_chain.size() == d.lambda_chain.size());
    for (size_t i = 0; i < d.rho_chain.size(); ++i)
        CHECK(d.source_corner[d.rho_chain[i]] == d.source_corner[d.lambda_chain[i]]);
}

TEST_CASE("two-triangle hinge develops to the hand-composed rotation") {
    // Two triangles over the hinge (0,0,0)-(1,0,0) with a known dihedral.
    const double dihedral = 0.8;  // fold angle of the far vertex
    std::vector<Vec3> verts{{0, 0, 0},
                            {1, 0, 0},
                            {0.5, -0.6, 0},
                            {0.5, 0.7 * std::cos(dihedral), 0.7 * std::sin(dihedral)}};
    CutDisk d;
    d.points = verts;
    d.source_corner = {0, 1, -1, -1};
    d.triangles = {{0, 1, 3}, {1, 0, 2}};  // consistent winding across the hinge
    d.source_triangle = {0, 1};
    d.rho_chain = {0, 1};
    d.lambda_chain = {0, 1};
    d.corner_is_vertex = {1, 1};
    d.surface_diameter = 2.0;
    PlanarLayout l = develop(d);
    // Oracle: unfolding the second triangle about the hinge by the
    // dihedral angle places the far vertex at (0.5, -0.7).
    // The seed triangle is the one right of (0 -> 1); the layout places
    // point 3 in the lower half-plane, point 2 mirrored above.
    Vec2 p3 = l.placed[3];
    Vec2 p2 = l.placed[2];
    CHECK(p3.x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(p3.y) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(p2.x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(p2.y) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(p2.y * p3.y < 0.0);  // opposite sides of the hinge
}

TEST_CASE("endpoint exterior angles equal the vertex curvature") {
    Polyhedron cube = tilted(make_solid(SolidKind::cube, 1.0));
    PlanarLayout l = unfold_body(cube);
    CHECK(endpoint_exterior_angle(l, PathEndpoint::bottom) ==
          doctest::Approx(kPi / 2.0).epsilon(1e-9));
    CHECK(endpoint_exterior_angle(l, PathEndpoint::top) ==
          doctest::Approx(kPi / 2.0).epsilon(1e-9));

    Polyhedron tetra = tilted(make_solid(SolidKind::tetrahedron, 1.0));
    PlanarLayout lt = unfold_body(tetra);
    CHECK(endpoint_exterior_angle(lt, PathEndpoint::bottom) ==
          doctest::Approx(kPi).epsilon(1e-9));
    CHECK(endpoint_exterior_angle(lt, PathEndpoint::top) == doctest::Approx(kPi).epsilon(1e-9));

    Polyhedron oct = tilted(make_solid(SolidKind::octahedron, 1.0));
    PlanarLayout lo = unfold_body(oct);
    CHECK(endpoint_exterior_angle(lo, PathEndpoint::bottom) ==
          doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-9));
    CHECK(endpoint_exterior_angle(lo, PathEndpoint::top) ==
          doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-9));
}

TEST_CASE("rho and lambda glue: equal lengths, pairwise equal segments") {
    Polyhedron ico = tilted(make_solid(SolidKind::icosahedron, 1.0));
    PlanarLayout l = unfold_body(ico);
    auto [rho, lambda] = boundary_paths(l);
    REQUIRE(rho.size() == lambda.size());
    CHECK(chain_length(rho) == doctest::Approx(chain_length(lambda)).epsilon(1e-9));
    for (size_t i = 0; i + 1 < rho.size(); ++i) {
        double lr = (rho[i + 1].pos - rho[i].pos).norm();
        double ll = (lambda[i + 1].pos - lambda[i].pos).norm();
        CHECK(lr == doctest::Approx(ll).epsilon(1e-9));
    }
    // endpoints shared
    CHECK((rho.front().pos - lambda.front().pos).norm() < 1e-12);
    CHECK((rho.back().pos - lambda.back().pos).norm() < 1e-12);
}

TEST_CASE("cube boundary carries 8 vertex marks on each side") {
    Polyhedron cube = tilted(make_solid(SolidKind::cube, 1.0));
    PlanarLayout l = unfold_body(cube);
    int vr = 0, vl = 0;
    for (const auto& b : l.rho) vr += b.is_polyhedron_vertex;
    for (const auto& b : l.lambda) vl += b.is_polyhedron_vertex;
    CHECK(vr == 8);
    CHECK(vl == 8);
}

TEST_CASE("horizontal doubly covered polygon unfolds to two joined regular polygons") {
    const int n = 8;
    Polyhedron flat = doubly_covered_ngon(n, 1.0);
    PlanarLayout l = unfold_body(flat);
    // Total area: two n-gons.
    double ngon_area = 0.5 * n * std::sin(kTwoPi / n);
    double area = 0.0;
    for (const auto& t : l.triangles) {
        Vec2 u = t.pts[1] - t.pts[0], v = t.pts[2] - t.pts[0];
        area += 0.5 * std::abs(u.cross(v));
    }
    CHECK(area == doctest::Approx(2.0 * ngon_area).epsilon(1e-9));
    // The boundary polygon of the layout is simple and has 2(n-1) segments.
    CHECK(l.rho.size() == l.lambda.size());
}

TEST_CASE("isometry and angle closure across generators and orientations") {
    Rng rng(123);
    std::vector<Polyhedron> bodies;
    bodies.push_back(make_solid(SolidKind::dodecahedron, 1.0));
    bodies.push_back(make_solid(SolidKind::truncated_tetrahedron, 1.0));
    bodies.push_back(hemiball(12));
    bodies.push_back(random_sphere_hull(16, 21));
    for (const Polyhedron& body : bodies) {
        Polyhedron q = orient(body, rng.rotation());
        SpiralPath s = build_spiral(q, 0);
        CutDisk d = cut_surface(q, s);
        PlanarLayout l = develop(d);

        // triangle edge lengths preserved
        for (const auto& t : l.triangles)
            for (int k = 0; k < 3; ++k) {
                int a = t.point_ids[k], b = t.point_ids[(k + 1) % 3];
                double l2 = (l.placed[a] - l.placed[b]).norm();
                double l3 = (d.points[a] - d.points[b]).norm();
                CHECK(l2 == doctest::Approx(l3).epsilon(1e-9));
            }

        // angle closure at interior points: incident angles sum to 2*pi
        std::vector<double> angle_sum(d.points.size(), 0.0);
        std::vector<char> on_boundary(d.points.size(), 0);
        for (int id : d.rho_chain) on_boundary[id] = 1;
        for (int id : d.lambda_chain) on_boundary[id] = 1;
        for (const auto& t : l.triangles)
            for (int k = 0; k < 3; ++k) {
                Vec2 u = t.pts[(k + 1) % 3] - t.pts[k];
                Vec2 v = t.pts[(k + 2) % 3] - t.pts[k];
                double c = u.dot(v) / (u.norm() * v.norm());
                angle_sum[t.point_ids[k]] += std::acos(std::clamp(c, -1.0, 1.0));
            }
        for (size_t i = 0; i < d.points.size(); ++i) {
            if (on_boundary[i]) continue;
            CHECK(angle_sum[i] == doctest::Approx(kTwoPi).epsilon(1e-9));
        }

        // at every non-endpoint corner, the two side angles sum to the
        // total surface angle there (2*pi at edge points, 2*pi - curvature
        // at vertices)
        for (size_t k = 1; k + 1 < d.rho_chain.size(); ++k) {
            int pr = d.rho_chain[k], pl = d.lambda_chain[k];
            int ci = d.source_corner[pr];
            double expect = kTwoPi;
            if (ci >= 0 && d.corner_is_vertex[ci]) {
                // find the mesh vertex by position
                for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v)
                    if ((q.vertices[v] - d.points[pr]).norm() < 1e-9 * q.diameter()) {
                        expect = kTwoPi - gaussian_curvature(q, v);
                        break;
                    }
            }
            CHECK(angle_sum[pr] + angle_sum[pl] == doctest::Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("cut_surface rejects broken paths") {
    Polyhedron cube = tilted(make_solid(SolidKind::cube, 1.0));
    SpiralPath s = build_spiral(cube, 0);
    SpiralPath bad = s;
    bad.corners.erase(bad.corners.begin() + 2);  // breaks the path structure
    CHECK_THROWS_AS(cut_surface(cube, bad), Error);
}

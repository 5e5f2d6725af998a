#include <doctest.h>

#include "spiralcut/angles.hpp"
#include "spiralcut/generators.hpp"
#include "spiralcut/rng.hpp"

using namespace spiralcut;

namespace {

Polyhedron unit_cube01() {
    std::vector<Vec3> pts;
    for (int i = 0; i < 8; ++i)
        pts.push_back({i & 1 ? 1.0 : 0.0, i & 2 ? 1.0 : 0.0, i & 4 ? 1.0 : 0.0});
    return convex_hull(pts);
}

int vertex_at(const Polyhedron& p, const Vec3& q) {
    for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v)
        if ((p.vertices[v] - q).norm() < 1e-9) return v;
    return -1;
}

// Oracle: the below-plane portion of a face angle at a vertex, computed
// per incident face by direct sampling of the wedge.
double below_angle_oracle(const Polyhedron& p, int v, int samples = 200000) {
    DirectionFan fan = direction_fan(p, SurfacePoint::at_vertex(p, v));
    int hits = 0;
    for (int i = 0; i < samples; ++i) {
        double a = fan.total * (i + 0.5) / samples;
        if (fan.z_at(a) < 0.0) ++hits;
    }
    return fan.total * hits / samples;
}

}  // namespace

TEST_CASE("face-interior split: rho + lambda = pi and rho equals the tilt") {
    Polyhedron cube = orient(unit_cube01(), Mat3::axis_angle({1, 0, 0}, 0.6));
    // pick any triangle with a non-horizontal, non-vertical plane
    int tri = -1;
    for (int t = 0; t < static_cast<int>(cube.triangles.size()); ++t) {
        double nz = std::abs(cube.triangle_normal(t).z);
        if (nz > 0.2 && nz < 0.8) tri = t;
    }
    REQUIRE(tri >= 0);
    const auto& tv = cube.triangles[tri].v;
    Vec3 c = (cube.vertices[tv[0]] + cube.vertices[tv[1]] + cube.vertices[tv[2]]) / 3.0;
    SurfacePoint at{SurfacePoint::Kind::face_point, tri, 0.0, c};

    Vec3 n = cube.triangle_normal(tri);
    Vec3 horiz = Vec3{0, 0, 1}.cross(n).normalized();  // horizontal section direction
    Vec3 up_in_face = n.cross(horiz).normalized();
    if (up_in_face.z < 0) up_in_face = -1.0 * up_in_face;

    double tilt = 0.5;  // angle above the horizontal section, inside the face
    Vec3 dir = horiz * std::cos(tilt) + up_in_face * std::sin(tilt);
    SurfaceAngleSplit s = surface_angle_split(cube, at, dir, PlaneSide::above);
    CHECK(s.rho_h + s.lambda_h == doctest::Approx(kPi).epsilon(1e-9));
    CHECK(s.rho_h == doctest::Approx(tilt).epsilon(1e-9));
}

TEST_CASE("cube vertex, direction down a vertical edge: below angles sum to pi") {
    Polyhedron cube = unit_cube01();
    int v = vertex_at(cube, {1, 1, 1});
    REQUIRE(v >= 0);
    Vec3 dir{0, 0, -1};  // down the vertical edge
    SurfaceAngleSplit s =
        surface_angle_split(cube, SurfacePoint::at_vertex(cube, v), dir, PlaneSide::below);
    CHECK(s.rho_h + s.lambda_h == doctest::Approx(kPi).epsilon(1e-9));
    CHECK(s.rho_h == doctest::Approx(kPi / 2.0).epsilon(1e-9));
    CHECK(s.rho_h + s.lambda_h == doctest::Approx(below_angle_oracle(cube, v)).epsilon(1e-3));
}

TEST_CASE("mirror-symmetric vertex: rho equals lambda along the fixed direction") {
    // The upright octahedron is mirror-symmetric through the vertical plane
    // holding an equator vertex and the axis; a direction inside that plane
    // must split evenly.
    Polyhedron oct = make_solid(SolidKind::octahedron, 1.0);
    int v = vertex_at(oct, {1, 0, 0});
    int apex = vertex_at(oct, {0, 0, 1});
    REQUIRE(v >= 0);
    REQUIRE(apex >= 0);
    Vec3 dir = oct.vertices[apex] - oct.vertices[v];
    SurfaceAngleSplit s =
        surface_angle_split(oct, SurfacePoint::at_vertex(oct, v), dir, PlaneSide::above);
    CHECK(s.rho_h == doctest::Approx(s.lambda_h).epsilon(1e-9));

    // The true apex is the topmost vertex: no horizontal section there.
    Vec3 down = oct.vertices[v] - oct.vertices[apex];
    CHECK_THROWS_AS(surface_angle_split(oct, SurfacePoint::at_vertex(oct, apex), down,
                                        PlaneSide::below),
                    NoHorizontalSection);
}

TEST_CASE("mirror through a vertical plane swaps rho and lambda") {
    Rng rng(5);
    Polyhedron h = orient(random_sphere_hull(14, 31), rng.rotation());
    // Mirror x -> -x, with triangle orientations flipped to stay outward.
    std::vector<Vec3> mv;
    for (const Vec3& v : h.vertices) mv.push_back({-v.x, v.y, v.z});
    std::vector<std::array<int, 3>> mt;
    for (const Triangle& t : h.triangles) mt.push_back({t.v[0], t.v[2], t.v[1]});
    Polyhedron hm = Polyhedron::from_triangles(std::move(mv), mt, true);

    int checked = 0;
    for (int v = 0; v < static_cast<int>(h.vertices.size()); ++v) {
        // direction: toward a neighbor, kept off-horizontal; skip the
        // global extremes (no horizontal section there)
        if (h.vertices[v].z < h.min_z() + 0.1 * h.diameter() ||
            h.vertices[v].z > h.max_z() - 0.1 * h.diameter())
            continue;
        int t0 = h.vertex_triangles[v][0];
        const auto& tv = h.triangles[t0].v;
        int w = tv[0] == v ? tv[1] : tv[0];
        Vec3 dir = h.vertices[w] - h.vertices[v];
        if (std::abs(dir.normalized().z) < 1e-3) continue;
        PlaneSide side = dir.z > 0 ? PlaneSide::above : PlaneSide::below;
        SurfaceAngleSplit a =
            surface_angle_split(h, SurfacePoint::at_vertex(h, v), dir, side);
        Vec3 mdir{-dir.x, dir.y, dir.z};
        SurfaceAngleSplit b =
            surface_angle_split(hm, SurfacePoint::at_vertex(hm, v), mdir, side);
        CHECK(a.rho_h == doctest::Approx(b.lambda_h).epsilon(1e-9));
        CHECK(a.lambda_h == doctest::Approx(b.rho_h).epsilon(1e-9));
        ++checked;
    }
    CHECK(checked >= 4);
}

TEST_CASE("horizontal direction raises HorizontalDegenerate") {
    Polyhedron cube = unit_cube01();
    int v = vertex_at(cube, {1, 1, 1});
    CHECK_THROWS_AS(surface_angle_split(cube, SurfacePoint::at_vertex(cube, v), {-1, 0, 0},
                                        PlaneSide::below),
                    HorizontalDegenerate);
}

TEST_CASE("no horizontal section at the bottommost vertex") {
    Polyhedron oct = make_solid(SolidKind::octahedron, 1.0);
    int bottom = vertex_at(oct, {0, 0, -1});
    Vec3 dir = oct.vertices[vertex_at(oct, {1, 0, 0})] - oct.vertices[bottom];
    CHECK_THROWS_AS(surface_angle_split(oct, SurfacePoint::at_vertex(oct, bottom), dir,
                                        PlaneSide::above),
                    NoHorizontalSection);
}

TEST_CASE("fan total equals 2*pi minus curvature") {
    Polyhedron ico = make_solid(SolidKind::icosahedron, 1.0);
    for (int v = 0; v < 12; ++v) {
        DirectionFan fan = direction_fan(ico, SurfacePoint::at_vertex(ico, v));
        CHECK(fan.total ==
              doctest::Approx(kTwoPi - gaussian_curvature(ico, v)).epsilon(1e-12));
    }
    // edge point: flat, 2*pi
    DirectionFan ef = direction_fan(ico, SurfacePoint::on_edge(ico, 0, 0.4));
    CHECK(ef.total == doctest::Approx(kTwoPi).epsilon(1e-12));
}

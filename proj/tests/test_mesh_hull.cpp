#include <doctest.h>

#include "spiralcut/generators.hpp"
#include "spiralcut/hull.hpp"
#include "spiralcut/rng.hpp"

using namespace spiralcut;

namespace {

// Oracle: every point lies on or inside every hull face plane.
bool all_points_enclosed(const Polyhedron& hull, const std::vector<Vec3>& pts, double tol) {
    for (int t = 0; t < static_cast<int>(hull.triangles.size()); ++t) {
        Vec3 n = hull.triangle_normal(t);
        double off = n.dot(hull.vertices[hull.triangles[t].v[0]]);
        for (const Vec3& p : pts)
            if (n.dot(p) > off + tol) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("hull of a regular tetrahedron is the simplex") {
    std::vector<Vec3> pts{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    Polyhedron h = convex_hull(pts);
    CHECK(h.vertices.size() == 4);
    CHECK(h.triangles.size() == 4);
    CHECK(h.edges.size() == 6);  // V - E + F = 2
    CHECK(h.signed_volume() > 0.0);
}

TEST_CASE("hull absorbs an interior point of the cube") {
    std::vector<Vec3> pts;
    for (int i = 0; i < 8; ++i)
        pts.push_back({i & 1 ? 1.0 : -1.0, i & 2 ? 1.0 : -1.0, i & 4 ? 1.0 : -1.0});
    pts.push_back({0.1, 0.2, -0.3});
    Polyhedron h = convex_hull(pts);
    CHECK(h.vertices.size() == 8);
    CHECK(h.is_convex());
    CHECK(all_points_enclosed(h, pts, 1e-9 * h.diameter()));
}

TEST_CASE("100 seeded sphere points are all hull vertices") {
    Rng rng(2024);
    std::vector<Vec3> pts;
    for (int i = 0; i < 100; ++i) pts.push_back(rng.unit_sphere());
    Polyhedron h = convex_hull(pts);
    CHECK(h.vertices.size() == 100);
    for (const Vec3& v : h.vertices) CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(all_points_enclosed(h, pts, 1e-9 * h.diameter()));
    CHECK(total_curvature(h) == doctest::Approx(2.0 * kTwoPi).epsilon(1e-9));
}

TEST_CASE("hull rejects degenerate inputs") {
    CHECK_THROWS_AS(convex_hull({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}}), DegenerateInput);
    CHECK_THROWS_AS(convex_hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}), DegenerateInput);
}

TEST_CASE("coplanar face points grow a merged face") {
    // Octagonal base plus an apex: base points are exactly coplanar.
    std::vector<Vec3> pts;
    for (int k = 0; k < 8; ++k) {
        double th = kTwoPi * k / 8;
        pts.push_back({std::cos(th), std::sin(th), 0.0});
    }
    pts.push_back({0, 0, 1});
    Polyhedron h = convex_hull(pts);
    CHECK(h.vertices.size() == 9);
    int base_face = -1;
    int base_tris = 0;
    for (int t = 0; t < static_cast<int>(h.triangles.size()); ++t) {
        if (std::abs(h.triangle_normal(t).z + 1.0) < 1e-9) {
            if (base_face < 0) base_face = h.triangles[t].face_id;
            CHECK(h.triangles[t].face_id == base_face);
            ++base_tris;
        }
    }
    CHECK(base_tris == 6);  // octagon fan
}

TEST_CASE("orient validates rotations and preserves combinatorics") {
    Polyhedron cube = make_solid(SolidKind::cube, 1.0);
    Mat3 r = Mat3::axis_angle({1, 1, 0.3}, 0.7);
    Polyhedron q = orient(cube, r);
    CHECK(q.triangles.size() == cube.triangles.size());
    CHECK(q.edges.size() == cube.edges.size());

    Mat3 bad = Mat3::identity();
    bad.m[0] = 2.0;
    CHECK_THROWS_AS(orient(cube, bad), NotARotation);

    // Reflection has determinant -1.
    Mat3 refl = Mat3::identity();
    refl.m[8] = -1.0;
    CHECK_THROWS_AS(orient(cube, refl), NotARotation);
}

TEST_CASE("two successive half-turns about z restore coordinates") {
    Polyhedron cube = make_solid(SolidKind::cube, 1.0);
    Mat3 r = Mat3::axis_angle({0, 0, 1}, kPi);
    Polyhedron q = orient(orient(cube, r), r);
    for (size_t i = 0; i < cube.vertices.size(); ++i)
        CHECK((q.vertices[i] - cube.vertices[i]).norm() < 1e-12 * cube.diameter());
}

TEST_CASE("gaussian curvature at canonical vertices") {
    Polyhedron cube = make_solid(SolidKind::cube, 1.0);
    for (int v = 0; v < 8; ++v)
        CHECK(gaussian_curvature(cube, v) == doctest::Approx(kPi / 2.0).epsilon(1e-12));

    Polyhedron tetra = make_solid(SolidKind::tetrahedron, 1.0);
    for (int v = 0; v < 4; ++v)
        CHECK(gaussian_curvature(tetra, v) == doctest::Approx(kPi).epsilon(1e-12));

    Polyhedron icosa = make_solid(SolidKind::icosahedron, 1.0);
    for (int v = 0; v < 12; ++v)
        CHECK(gaussian_curvature(icosa, v) == doctest::Approx(kPi / 3.0).epsilon(1e-9));
}

TEST_CASE("total curvature of closed convex meshes is 4*pi") {
    for (SolidKind k : platonic_solids())
        CHECK(total_curvature(make_solid(k, 1.0)) == doctest::Approx(2 * kTwoPi).epsilon(1e-9));
    CHECK(total_curvature(hemiball(16)) == doctest::Approx(2 * kTwoPi).epsilon(1e-9));
    CHECK(total_curvature(random_sphere_hull(25, 5)) ==
          doctest::Approx(2 * kTwoPi).epsilon(1e-9));
}

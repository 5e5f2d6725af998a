#include <doctest.h>

#include "spiralcut/generators.hpp"
#include "spiralcut/slicing.hpp"
#include "spiralcut/rng.hpp"

using namespace spiralcut;

TEST_CASE("catalog counts and curvature for the named solids") {
    Polyhedron cube = make_solid(SolidKind::cube, 1.0);
    CHECK(cube.vertices.size() == 8);
    CHECK(cube.triangles.size() == 12);  // six coplanar pairs
    int faces = 0;
    for (const Triangle& t : cube.triangles) faces = std::max(faces, t.face_id + 1);
    CHECK(faces == 6);
    for (int v = 0; v < 8; ++v)
        CHECK(gaussian_curvature(cube, v) == doctest::Approx(kPi / 2.0).epsilon(1e-12));

    Polyhedron icosa = make_solid(SolidKind::icosahedron, 1.0);
    CHECK(icosa.vertices.size() == 12);
    for (int v = 0; v < 12; ++v)
        CHECK(gaussian_curvature(icosa, v) == doctest::Approx(kPi / 3.0).epsilon(1e-9));

    // the paper's name for the 60-vertex solid
    Polyhedron grid = make_solid(solid_from_name("great-rhombicosidodecahedron"), 1.0);
    CHECK(grid.vertices.size() == 60);
}

TEST_CASE("all 18 catalog solids are uniform: equal radii and edge lengths") {
    auto check_solid = [](SolidKind k) {
        CAPTURE(solid_name(k));
        Polyhedron p = make_solid(k, 2.5);
        for (const Vec3& v : p.vertices)
            CHECK(v.norm() == doctest::Approx(2.5).epsilon(1e-9));
        double lo = 1e300, hi = 0.0;
        for (int e = 0; e < static_cast<int>(p.edges.size()); ++e) {
            if (!p.edge_is_crease(e)) continue;
            double len = (p.vertices[p.edges[e].a] - p.vertices[p.edges[e].b]).norm();
            lo = std::min(lo, len);
            hi = std::max(hi, len);
        }
        CHECK(hi - lo < 1e-9);
        CHECK(total_curvature(p) == doctest::Approx(2 * kTwoPi).epsilon(1e-9));
    };
    for (SolidKind k : platonic_solids()) check_solid(k);
    for (SolidKind k : archimedean_solids()) check_solid(k);
}

TEST_CASE("archimedean vertex counts") {
    const std::pair<SolidKind, int> want[] = {
        {SolidKind::truncated_tetrahedron, 12}, {SolidKind::cuboctahedron, 12},
        {SolidKind::truncated_cube, 24},        {SolidKind::truncated_octahedron, 24},
        {SolidKind::rhombicuboctahedron, 24},   {SolidKind::truncated_cuboctahedron, 48},
        {SolidKind::snub_cube, 24},             {SolidKind::icosidodecahedron, 30},
        {SolidKind::truncated_dodecahedron, 60},{SolidKind::truncated_icosahedron, 60},
        {SolidKind::rhombicosidodecahedron, 60},{SolidKind::truncated_icosidodecahedron, 120},
        {SolidKind::snub_dodecahedron, 60}};
    for (auto [k, n] : want) {
        CAPTURE(solid_name(k));
        CHECK(make_solid(k, 1.0).vertices.size() == static_cast<size_t>(n));
    }
}

TEST_CASE("hemiball: rim formulas, vertex count, unit radius") {
    // a(theta) and b(theta) at the quarter turn
    CHECK(Vec3{std::cos(kPi / 2), std::sin(kPi / 2), 0}.y == doctest::Approx(1.0));
    CHECK(Vec3{std::cos(kPi / 2), 0, std::abs(std::sin(kPi / 2))}.z == doctest::Approx(1.0));

    for (int n : {6, 16, 32}) {
        CAPTURE(n);
        Polyhedron h = hemiball(n);
        CHECK(static_cast<int>(h.vertices.size()) == n + n / 2 - 2);
        for (const Vec3& v : h.vertices) CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(h.is_convex());
        // the rims meet at (+-1, 0, 0)
        bool plus = false, minus = false;
        for (const Vec3& v : h.vertices) {
            if ((v - Vec3{1, 0, 0}).norm() < 1e-12) plus = true;
            if ((v - Vec3{-1, 0, 0}).norm() < 1e-12) minus = true;
        }
        CHECK(plus);
        CHECK(minus);
    }
    CHECK_THROWS_AS(hemiball(7), BadCount);
    CHECK_THROWS_AS(hemiball(4), BadCount);
}

TEST_CASE("hemiball tilt: the former +x axis becomes vertical") {
    Polyhedron h = hemiball(16);
    Polyhedron t = orient(h, Mat3::axis_angle({0, 1, 0}, -kPi / 2.0));
    // (1,0,0) maps to (0,0,1): the rim meeting point is now the top
    bool found = false;
    for (const Vec3& v : t.vertices)
        if ((v - Vec3{0, 0, 1}).norm() < 1e-12) found = true;
    CHECK(found);
    CHECK(t.max_z() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("revolution: vertex counts, symmetry, flat case") {
    ProfileCurve prof = cstar_profile();
    int offaxis = 0, onaxis = 0;
    for (const Vec2& p : prof.points) (p.x > 0 ? offaxis : onaxis)++;

    for (int nspin : {4, 8, 20}) {
        Polyhedron rev = revolution(prof, nspin);
        CHECK(static_cast<int>(rev.vertices.size()) == nspin * offaxis + onaxis);
        CHECK(rev.convex);
        // n_spin-fold symmetry about z
        Mat3 rot = Mat3::axis_angle({0, 0, 1}, kTwoPi / nspin);
        for (const Vec3& v : rev.vertices) {
            Vec3 r = rot.apply(v);
            double best = 1e300;
            for (const Vec3& u : rev.vertices) best = std::min(best, (u - r).norm());
            CHECK(best < 1e-9);
        }
    }

    // n_spin = 2: flat doubly covered polygon, all vertices coplanar
    Polyhedron flat = revolution(prof, 2);
    for (const Vec3& v : flat.vertices) CHECK(std::abs(v.y) < 1e-12);
    CHECK(std::abs(flat.signed_volume()) < 1e-12);

    ProfileCurve bad;
    bad.points = {{0.3, 0.0}, {1.0, 0.5}, {0.2, 0.6}, {1.0, 0.9}, {0.3, 1.4}};
    CHECK_FALSE(bad.is_convex_profile());
    CHECK_THROWS_AS(revolution(bad, 8), NonConvexProfile);
}

TEST_CASE("nonconvex revolution: peanut has reflex waist dihedrals") {
    Polyhedron peanut = revolution_surface_nonconvex(peanut_profile(), 12);
    CHECK_FALSE(peanut.convex);
    // oracle: a reflex dihedral exists at the waist ring: some edge whose
    // adjacent face normals bend outward
    bool reflex = false;
    for (int e = 0; e < static_cast<int>(peanut.edges.size()); ++e) {
        const MeshEdge& me = peanut.edges[e];
        Vec3 n0 = peanut.triangle_normal(me.tri[0]);
        Vec3 n1 = peanut.triangle_normal(me.tri[1]);
        Vec3 mid = (peanut.vertices[me.a] + peanut.vertices[me.b]) / 2.0;
        // convexity violated if a neighbor vertex sits outside a face plane
        const auto& tv = peanut.triangles[me.tri[1]].v;
        for (int k = 0; k < 3; ++k)
            if (n0.dot(peanut.vertices[tv[k]] - mid) > 1e-9) reflex = true;
        (void)n1;
    }
    CHECK(reflex);

    // a convex profile built directly matches the hull construction
    ProfileCurve prof = cstar_profile();
    Polyhedron direct = revolution_surface_nonconvex(prof, 10);
    CHECK(direct.convex);
    CHECK(direct.vertices.size() == revolution(prof, 10).vertices.size());

    // cylinder profile: a hexagonal prism
    ProfileCurve cyl;
    cyl.points = {{1.0, 0.0}, {1.0 - 1e-9, 1.0}};  // strictly increasing z, near-constant r
    Polyhedron prism = revolution_surface_nonconvex(cyl, 6);
    CHECK(prism.vertices.size() == 12);
}

TEST_CASE("random sphere hulls: determinism and convex position") {
    Polyhedron a = random_sphere_hull(25, 77);
    Polyhedron b = random_sphere_hull(25, 77);
    REQUIRE(a.vertices.size() == b.vertices.size());
    for (size_t i = 0; i < a.vertices.size(); ++i)
        CHECK((a.vertices[i] - b.vertices[i]).norm() == 0.0);
    CHECK(a.vertices.size() == 25);
    CHECK(random_sphere_hull(4, 5).vertices.size() == 4);
    CHECK(total_curvature(a) == doctest::Approx(2 * kTwoPi).epsilon(1e-9));
    CHECK_THROWS_AS(random_sphere_hull(3, 1), BadCount);
}

TEST_CASE("geodesic domes: counts by frequency, perturbation, determinism") {
    Polyhedron f1 = geodesic_dome(1, 0.0, 0);
    CHECK(f1.vertices.size() == 12);

    Polyhedron f3 = geodesic_dome(3, 0.0, 0);
    CHECK(f3.vertices.size() == 92);  // 10 f^2 + 2

    Polyhedron p1 = geodesic_dome(3, 0.01, 42);
    Polyhedron p2 = geodesic_dome(3, 0.01, 42);
    REQUIRE(p1.vertices.size() == p2.vertices.size());
    for (size_t i = 0; i < p1.vertices.size(); ++i)
        CHECK((p1.vertices[i] - p2.vertices[i]).norm() == 0.0);
    CHECK(p1.is_convex());

    // generic rotation: no two vertices at equal height
    Polyhedron r = orient(p1, Rng(9).rotation());
    auto levels = vertex_levels(r);
    CHECK(levels.size() == r.vertices.size());

    CHECK_THROWS_AS(geodesic_dome(0, 0.0, 1), DomainError);
    CHECK_THROWS_AS(geodesic_dome(2, 0.5, 1), DomainError);
}

TEST_CASE("distorted dodecahedron: no two faces parallel") {
    Polyhedron d = distorted_dodecahedron(3);
    CHECK(d.is_convex());
    // collect merged-face normals
    std::vector<Vec3> normals;
    std::vector<char> seen(d.triangles.size(), 0);
    int max_face = 0;
    for (const Triangle& t : d.triangles) max_face = std::max(max_face, t.face_id);
    for (int f = 0; f <= max_face; ++f)
        for (int t = 0; t < static_cast<int>(d.triangles.size()); ++t)
            if (d.triangles[t].face_id == f) {
                normals.push_back(d.triangle_normal(t));
                break;
            }
    for (size_t i = 0; i < normals.size(); ++i)
        for (size_t j = i + 1; j < normals.size(); ++j)
            CHECK(std::abs(normals[i].dot(normals[j])) < 1.0 - 1e-6);
}

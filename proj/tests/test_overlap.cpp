#include <doctest.h>

#include "spiralcut/generators.hpp"
#include "spiralcut/overlap.hpp"
#include "spiralcut/rng.hpp"

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

bool reports_agree(const OverlapReport& a, const OverlapReport& b) {
    if (a.simple != b.simple) return false;
    if (a.crossings.size() != b.crossings.size()) return false;
    for (size_t i = 0; i < a.crossings.size(); ++i)
        if (a.crossings[i].seg_a != b.crossings[i].seg_a ||
            a.crossings[i].seg_b != b.crossings[i].seg_b)
            return false;
    return true;
}

}  // namespace

TEST_CASE("tilted cube layout is simple; sweep agrees with brute force") {
    Polyhedron cube = tilted(make_solid(SolidKind::cube, 1.0));
    PlanarLayout l = unfold_body(cube);
    OverlapReport fast = check_simple(l);
    OverlapReport slow = check_simple_bruteforce(l);
    CHECK(fast.simple);
    CHECK(fast.min_clearance > 0.0);
    CHECK(reports_agree(fast, slow));
}

TEST_CASE("sweep and brute force agree across bodies and orientations") {
    Rng rng(17);
    std::vector<Polyhedron> bodies;
    bodies.push_back(make_solid(SolidKind::dodecahedron, 1.0));
    bodies.push_back(random_sphere_hull(18, 40));
    bodies.push_back(hemiball(12));
    bodies.push_back(geodesic_dome(2, 0.02, 9));
    int overlapping = 0;
    for (const Polyhedron& body : bodies)
        for (int k = 0; k < 3; ++k) {
            Polyhedron q = orient(body, rng.rotation());
            PlanarLayout l = unfold_body(q);
            OverlapReport fast = check_simple(l);
            OverlapReport slow = check_simple_bruteforce(l);
            CHECK(reports_agree(fast, slow));
            if (!fast.simple) ++overlapping;
        }
    CHECK(overlapping > 0);  // random orientations of these bodies do overlap
}

TEST_CASE("check_simple is invariant under rigid motion and scaling") {
    Polyhedron d = tilted(make_solid(SolidKind::dodecahedron, 1.0), 0.9, 0.37);
    PlanarLayout l = unfold_body(d);
    OverlapReport before = check_simple(l);

    PlanarLayout moved = l;
    double c = std::cos(0.83), s = std::sin(0.83);
    auto xf = [&](Vec2 q) {
        return Vec2{3.0 * (c * q.x - s * q.y) + 11.0, 3.0 * (s * q.x + c * q.y) - 4.5};
    };
    for (auto& t : moved.triangles)
        for (auto& q : t.pts) q = xf(q);
    for (auto& q : moved.placed) q = xf(q);
    for (auto& b : moved.rho) b.pos = xf(b.pos);
    for (auto& b : moved.lambda) b.pos = xf(b.pos);
    OverlapReport after = check_simple(moved);
    CHECK(before.simple == after.simple);
    CHECK(before.crossings.size() == after.crossings.size());
    if (before.simple)
        CHECK(after.min_clearance == doctest::Approx(3.0 * before.min_clearance).epsilon(1e-9));
}

TEST_CASE("cone apex angle: exact formula, monotone, domain-checked") {
    CHECK(cone_apex_angle(kPi / 2.0) == doctest::Approx(kTwoPi).epsilon(1e-15));
    CHECK(cone_apex_angle(kPi / 6.0) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(cone_apex_angle(0.0) == 0.0);
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
        double beta = (kPi / 2.0) * i / 1000.0;
        double alpha = cone_apex_angle(beta);
        CHECK(alpha == doctest::Approx(kTwoPi * std::sin(beta)).epsilon(1e-12));
        CHECK(alpha > prev);
        prev = alpha;
    }
    CHECK_THROWS_AS(cone_apex_angle(-0.1), DomainError);
    CHECK_THROWS_AS(cone_apex_angle(2.0), DomainError);
}

TEST_CASE("annulus fit on the revolution solid matches the cone-apex oracle") {
    const int nspin = 64;
    ProfileCurve prof = cstar_profile();
    Polyhedron rev = revolution(prof, nspin);
    SpiralPath s = build_spiral(rev, 0);
    CutDisk d = cut_surface(rev, s);
    PlanarLayout l = develop(d);
    std::vector<int> rings = corner_ring_ids(rev, s);
    AnnulusFit fit = annulus_fit(l, rings);
    REQUIRE(fit.bands.size() >= 3);

    // Oracle: the cone through profile points k, k+1 has its apex on the
    // axis; arc radii are exact slant distances to the apex.
    auto slant = [&](int k, int ring) {
        Vec2 a = prof.points[k], b = prof.points[k + 1];
        double apex_z = a.y + (0.0 - a.x) * (b.y - a.y) / (b.x - a.x);
        Vec2 rp = prof.points[ring];
        return std::sqrt(rp.x * rp.x + (rp.y - apex_z) * (rp.y - apex_z));
    };
    for (const auto& bf : fit.bands) {
        int k = bf.lower_ring;
        CHECK(bf.r_outer == doctest::Approx(slant(k, k)).epsilon(2e-2));
        CHECK(bf.r_inner == doctest::Approx(slant(k, k + 1)).epsilon(2e-2));
        CHECK(bf.r_inner < bf.r_outer);
        CHECK(bf.concentricity < 10.0 / nspin);
    }
    for (const auto& pc : fit.pairs) {
        CHECK(pc.nested);
        CHECK(pc.r1 > pc.r2);
        CHECK(pc.collinearity <= 10.0 / nspin);
    }
}

TEST_CASE("annulus structure tightens as n_spin grows") {
    // The two arcs of one band develop exactly concentrically at any
    // n_spin (a polygonal cone unrolls to exact circular vertex arcs), so
    // the concentricity residual sits at machine scale; the genuine
    // finite-n_spin effect is the internal-tangency gap between adjacent
    // annuli, which shrinks roughly like 1/n_spin^2.
    ProfileCurve prof = cstar_profile();
    double prev = 1e9;
    for (int nspin : {8, 16, 32, 64}) {
        Polyhedron rev = revolution(prof, nspin);
        SpiralPath s = build_spiral(rev, 0);
        PlanarLayout l = develop(cut_surface(rev, s));
        AnnulusFit fit = annulus_fit(l, corner_ring_ids(rev, s));
        double conc = 0.0, gap = 0.0;
        for (const auto& bf : fit.bands) conc = std::max(conc, bf.concentricity);
        for (const auto& pc : fit.pairs) gap = std::max(gap, pc.tangency_gap);
        CHECK(conc < 1e-9);
        CHECK(gap < prev);
        CHECK(gap < 10.0 / nspin);
        prev = gap;
    }
}

TEST_CASE("annulus fit requires at least four corners per ring") {
    ProfileCurve prof = cstar_profile();
    Polyhedron rev = revolution(prof, 3);
    SpiralPath s = build_spiral(rev, 0);
    PlanarLayout l = develop(cut_surface(rev, s));
    CHECK_THROWS_AS(annulus_fit(l, corner_ring_ids(rev, s)), FitDegenerate);
}

TEST_CASE("doubly covered polygon: each side's corners are exactly concyclic") {
    Polyhedron flat = doubly_covered_ngon(12, 1.0);
    SpiralPath s = build_spiral(flat, 0);
    PlanarLayout l = develop(cut_surface(flat, s));
    // all rho corners lie on a unit circle around the n-gon center image
    // (fit via the annulus machinery's internal circle fit is overkill;
    // check pairwise chord structure instead)
    const auto& rho = l.rho;
    REQUIRE(rho.size() == 12);
    // consecutive rho segment lengths all equal the polygon side
    double side = 2.0 * std::sin(kPi / 12.0);
    for (size_t i = 0; i + 1 < rho.size(); ++i)
        CHECK((rho[i + 1].pos - rho[i].pos).norm() == doctest::Approx(side).epsilon(1e-9));
}

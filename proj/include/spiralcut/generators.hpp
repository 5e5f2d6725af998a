#pragma once
#include <string>
#include <vector>

#include "spiralcut/hull.hpp"
#include "spiralcut/mesh.hpp"

namespace spiralcut {

enum class SolidKind {
    tetrahedron,
    cube,
    octahedron,
    dodecahedron,
    icosahedron,
    truncated_tetrahedron,
    cuboctahedron,
    truncated_cube,
    truncated_octahedron,
    rhombicuboctahedron,
    truncated_cuboctahedron,
    snub_cube,
    icosidodecahedron,
    truncated_dodecahedron,
    truncated_icosahedron,
    rhombicosidodecahedron,
    truncated_icosidodecahedron,
    snub_dodecahedron,
};

constexpr int kPlatonicCount = 5;
constexpr int kArchimedeanCount = 13;

const std::vector<SolidKind>& platonic_solids();
const std::vector<SolidKind>& archimedean_solids();

std::string solid_name(SolidKind kind);
// Accepts canonical names plus the traditional alias
// "great-rhombicosidodecahedron" for the 60-vertex rhombicosidodecahedron.
SolidKind solid_from_name(const std::string& name);

// Canonical-coordinate solid with circumradius = scale, centered at origin.
Polyhedron make_solid(SolidKind kind, double scale = 1.0);

// Convex hull of a unit circle in the xy-plane (n points) and a unit
// semicircle in the xz-plane (n/2 points, shared endpoints deduplicated).
Polyhedron hemiball(int n);

// Profile curve in the (r, z) halfplane, r >= 0, z strictly increasing.
struct ProfileCurve {
    std::vector<Vec2> points;  // (r, z)

    void validate_basic() const;   // r >= 0, z strictly increasing, r == 0 only at ends
    bool is_convex_profile() const;
};

// Default reconstruction of the revolution profile used across tests and
// the CLI; also shipped as data/cstar.txt.
ProfileCurve cstar_profile();

// Convex hull of n_spin rotated copies of a convex profile about the
// z-axis. n_spin == 2 yields the flat doubly covered convex polygon.
Polyhedron revolution(const ProfileCurve& curve, int n_spin);

// Surface of revolution built directly (no hull); convexity flag reflects
// the actual dihedral angles, so peanut-shaped profiles are allowed.
Polyhedron revolution_surface_nonconvex(const ProfileCurve& curve, int n_spin);

// Hourglass-style profile used for the nonconvex experiments.
ProfileCurve peanut_profile(double waist = 0.55);

Polyhedron random_sphere_hull(int n, std::uint64_t seed);

// Icosahedral geodesic subdivision projected to the unit sphere, optionally
// perturbed by a seeded offset of magnitude <= perturb and re-hulled.
Polyhedron geodesic_dome(int frequency, double perturb, std::uint64_t seed);

// Flat doubly covered horizontal regular n-gon.
Polyhedron doubly_covered_ngon(int n, double scale = 1.0);

// Dodecahedron with a fixed seeded vertex jitter and re-hull, so that no
// two pentagonal faces stay parallel.
Polyhedron distorted_dodecahedron(std::uint64_t seed, double jitter = 0.06);

}  // namespace spiralcut

#include "spiralcut/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spiralcut/rng.hpp"

namespace spiralcut {

namespace {

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

void add_sign_combos(std::vector<Vec3>& out, double x, double y, double z,
                     int parity /* -1: any, 0: even minus count, 1: odd */) {
    for (int sx = 0; sx < 2; ++sx)
        for (int sy = 0; sy < 2; ++sy)
            for (int sz = 0; sz < 2; ++sz) {
                int minus = (sx && x != 0.0) + (sy && y != 0.0) + (sz && z != 0.0);
                if ((sx && x == 0.0) || (sy && y == 0.0) || (sz && z == 0.0))
                    continue;  // avoid duplicate zero sign flips
                if (parity >= 0 && minus % 2 != parity) continue;
                out.push_back({sx ? -x : x, sy ? -y : y, sz ? -z : z});
            }
}

void all_permutations(std::vector<Vec3>& out, double x, double y, double z, int parity = -1) {
    std::array<double, 3> v{x, y, z};
    std::sort(v.begin(), v.end());
    do {
        add_sign_combos(out, v[0], v[1], v[2], parity);
    } while (std::next_permutation(v.begin(), v.end()));
    std::sort(out.begin(), out.end(), [](const Vec3& a, const Vec3& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Vec3& a, const Vec3& b) {
                              return a.x == b.x && a.y == b.y && a.z == b.z;
                          }),
              out.end());
}

void cyclic_permutations(std::vector<Vec3>& out, double x, double y, double z, int parity = -1) {
    std::vector<Vec3> tmp;
    add_sign_combos(tmp, x, y, z, parity);
    add_sign_combos(tmp, y, z, x, parity);
    add_sign_combos(tmp, z, x, y, parity);
    out.insert(out.end(), tmp.begin(), tmp.end());
    std::sort(out.begin(), out.end(), [](const Vec3& a, const Vec3& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Vec3& a, const Vec3& b) {
                              return a.x == b.x && a.y == b.y && a.z == b.z;
                          }),
              out.end());
}

// Even permutations of (x, y, z) (the cyclic ones), sign parity as given.
void even_permutations(std::vector<Vec3>& out, double x, double y, double z, int parity) {
    cyclic_permutations(out, x, y, z, parity);
}

// Odd permutations: swap two entries then cycle.
void odd_permutations(std::vector<Vec3>& out, double x, double y, double z, int parity) {
    cyclic_permutations(out, y, x, z, parity);
}

std::vector<Vec3> solid_points(SolidKind kind) {
    std::vector<Vec3> pts;
    const double phi = kPhi;
    switch (kind) {
        case SolidKind::tetrahedron:
            pts = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
            break;
        case SolidKind::cube:
            all_permutations(pts, 1, 1, 1);
            break;
        case SolidKind::octahedron:
            all_permutations(pts, 1, 0, 0);
            break;
        case SolidKind::dodecahedron:
            all_permutations(pts, 1, 1, 1);
            cyclic_permutations(pts, 0, 1.0 / phi, phi);
            break;
        case SolidKind::icosahedron:
            cyclic_permutations(pts, 0, 1, phi);
            break;
        case SolidKind::truncated_tetrahedron:
            all_permutations(pts, 1, 1, 3, 0);
            break;
        case SolidKind::cuboctahedron:
            all_permutations(pts, 1, 1, 0);
            break;
        case SolidKind::truncated_cube:
            all_permutations(pts, std::sqrt(2.0) - 1.0, 1, 1);
            break;
        case SolidKind::truncated_octahedron:
            all_permutations(pts, 0, 1, 2);
            break;
        case SolidKind::rhombicuboctahedron:
            all_permutations(pts, 1, 1, 1 + std::sqrt(2.0));
            break;
        case SolidKind::truncated_cuboctahedron:
            all_permutations(pts, 1, 1 + std::sqrt(2.0), 1 + 2.0 * std::sqrt(2.0));
            break;
        case SolidKind::snub_cube: {
            double t = (1.0 + std::cbrt(19.0 + 3.0 * std::sqrt(33.0)) +
                        std::cbrt(19.0 - 3.0 * std::sqrt(33.0))) / 3.0;
            even_permutations(pts, 1.0, 1.0 / t, t, 0);
            odd_permutations(pts, 1.0, 1.0 / t, t, 1);
            break;
        }
        case SolidKind::icosidodecahedron:
            cyclic_permutations(pts, 0, 0, phi);
            cyclic_permutations(pts, 0.5, phi / 2.0, (1.0 + phi) / 2.0);
            break;
        case SolidKind::truncated_dodecahedron:
            cyclic_permutations(pts, 0, 1.0 / phi, 2.0 + phi);
            cyclic_permutations(pts, 1.0 / phi, phi, 2.0 * phi);
            cyclic_permutations(pts, phi, 2.0, phi + 1.0);
            break;
        case SolidKind::truncated_icosahedron:
            cyclic_permutations(pts, 0, 1, 3.0 * phi);
            cyclic_permutations(pts, 1, 2.0 + phi, 2.0 * phi);
            cyclic_permutations(pts, phi, 2.0, 2.0 * phi + 1.0);
            break;
        case SolidKind::rhombicosidodecahedron:
            cyclic_permutations(pts, 1, 1, phi * phi * phi);
            cyclic_permutations(pts, phi * phi, phi, 2.0 * phi);
            cyclic_permutations(pts, 2.0 + phi, 0, phi * phi);
            break;
        case SolidKind::truncated_icosidodecahedron:
            cyclic_permutations(pts, 1.0 / phi, 1.0 / phi, 3.0 + phi);
            cyclic_permutations(pts, 2.0 / phi, phi, 1.0 + 2.0 * phi);
            cyclic_permutations(pts, 1.0 / phi, phi * phi, 3.0 * phi - 1.0);
            cyclic_permutations(pts, 2.0 * phi - 1.0, 2.0, 2.0 + phi);
            cyclic_permutations(pts, phi, 3.0, 2.0 * phi);
            break;
        case SolidKind::snub_dodecahedron: {
            double xi = std::cbrt(phi / 2.0 + std::sqrt(phi - 5.0 / 27.0) / 2.0) +
                        std::cbrt(phi / 2.0 - std::sqrt(phi - 5.0 / 27.0) / 2.0);
            double a = xi - 1.0 / xi;
            double b = xi * phi + phi * phi + phi / xi;
            const double c[5][3] = {
                {2.0 * a, 2.0, 2.0 * b},
                {a + b / phi + phi, -a * phi + b + 1.0 / phi, a / phi + b * phi - 1.0},
                {a + b / phi - phi, a * phi - b + 1.0 / phi, a / phi + b * phi + 1.0},
                {-a / phi + b * phi + 1.0, -a + b / phi - phi, a * phi + b - 1.0 / phi},
                {-a / phi + b * phi - 1.0, a - b / phi - phi, a * phi + b + 1.0 / phi}};
            for (const auto& row : c) even_permutations(pts, row[0], row[1], row[2], 1);
            break;
        }
    }
    return pts;
}

}  // namespace

const std::vector<SolidKind>& platonic_solids() {
    static const std::vector<SolidKind> v{
        SolidKind::tetrahedron, SolidKind::cube, SolidKind::octahedron,
        SolidKind::dodecahedron, SolidKind::icosahedron};
    return v;
}

const std::vector<SolidKind>& archimedean_solids() {
    static const std::vector<SolidKind> v{
        SolidKind::truncated_tetrahedron, SolidKind::cuboctahedron,
        SolidKind::truncated_cube, SolidKind::truncated_octahedron,
        SolidKind::rhombicuboctahedron, SolidKind::truncated_cuboctahedron,
        SolidKind::snub_cube, SolidKind::icosidodecahedron,
        SolidKind::truncated_dodecahedron, SolidKind::truncated_icosahedron,
        SolidKind::rhombicosidodecahedron, SolidKind::truncated_icosidodecahedron,
        SolidKind::snub_dodecahedron};
    return v;
}

std::string solid_name(SolidKind kind) {
    switch (kind) {
        case SolidKind::tetrahedron: return "tetrahedron";
        case SolidKind::cube: return "cube";
        case SolidKind::octahedron: return "octahedron";
        case SolidKind::dodecahedron: return "dodecahedron";
        case SolidKind::icosahedron: return "icosahedron";
        case SolidKind::truncated_tetrahedron: return "truncated-tetrahedron";
        case SolidKind::cuboctahedron: return "cuboctahedron";
        case SolidKind::truncated_cube: return "truncated-cube";
        case SolidKind::truncated_octahedron: return "truncated-octahedron";
        case SolidKind::rhombicuboctahedron: return "rhombicuboctahedron";
        case SolidKind::truncated_cuboctahedron: return "truncated-cuboctahedron";
        case SolidKind::snub_cube: return "snub-cube";
        case SolidKind::icosidodecahedron: return "icosidodecahedron";
        case SolidKind::truncated_dodecahedron: return "truncated-dodecahedron";
        case SolidKind::truncated_icosahedron: return "truncated-icosahedron";
        case SolidKind::rhombicosidodecahedron: return "rhombicosidodecahedron";
        case SolidKind::truncated_icosidodecahedron: return "truncated-icosidodecahedron";
        case SolidKind::snub_dodecahedron: return "snub-dodecahedron";
    }
    return "unknown";
}

SolidKind solid_from_name(const std::string& name) {
    std::string n = name;
    std::replace(n.begin(), n.end(), '_', '-');
    // Traditional alias: the 60-vertex solid is often called the great
    // rhombicosidodecahedron in older sources.
    if (n == "great-rhombicosidodecahedron") return SolidKind::rhombicosidodecahedron;
    for (int k = 0; k <= static_cast<int>(SolidKind::snub_dodecahedron); ++k)
        if (solid_name(static_cast<SolidKind>(k)) == n) return static_cast<SolidKind>(k);
    throw DomainError("unknown solid name: " + name);
}

Polyhedron make_solid(SolidKind kind, double scale) {
    if (!(scale > 0.0)) throw DomainError("scale must be positive");
    std::vector<Vec3> pts = solid_points(kind);
    double rmax = 0.0;
    for (const Vec3& p : pts) rmax = std::max(rmax, p.norm());
    for (Vec3& p : pts) p = p * (scale / rmax);
    return convex_hull(pts);
}

Polyhedron hemiball(int n) {
    if (n < 6 || n % 2 != 0) throw BadCount("hemiball requires an even n >= 6");
    std::vector<Vec3> pts;
    for (int k = 0; k < n; ++k) {
        if (k == 0) { pts.push_back({1, 0, 0}); continue; }
        if (2 * k == n) { pts.push_back({-1, 0, 0}); continue; }
        double th = kTwoPi * k / n;
        pts.push_back({std::cos(th), std::sin(th), 0});
    }
    int half = n / 2;
    for (int j = 1; j < half - 1; ++j) {  // endpoints coincide with the rim
        double th = kPi * j / (half - 1);
        pts.push_back({std::cos(th), 0, std::abs(std::sin(th))});
    }
    return convex_hull(pts);
}

void ProfileCurve::validate_basic() const {
    if (points.size() < 2) throw DegenerateInput("profile needs at least two points");
    for (size_t i = 0; i < points.size(); ++i) {
        if (points[i].x < 0.0) throw DegenerateInput("profile radius must be nonnegative");
        if (i > 0 && !(points[i].y > points[i - 1].y))
            throw SelfIntersectingProfile("profile z-coordinates must be strictly increasing");
        if (points[i].x == 0.0 && i != 0 && i + 1 != points.size())
            throw DegenerateInput("profile touches the axis away from its endpoints");
    }
}

bool ProfileCurve::is_convex_profile() const {
    // Close the chain against the z-axis and demand consistent turning.
    std::vector<Vec2> poly;
    if (points.front().x > 0.0) poly.push_back({0.0, points.front().y});
    for (const Vec2& p : points) poly.push_back(p);
    if (points.back().x > 0.0) poly.push_back({0.0, points.back().y});
    for (size_t i = 0; i + 2 < poly.size(); ++i) {
        Vec2 u = poly[i + 1] - poly[i];
        Vec2 w = poly[i + 2] - poly[i + 1];
        if (u.cross(w) < -1e-12) return false;
    }
    return true;
}

ProfileCurve cstar_profile() {
    // Reconstruction of the revolution profile: a convex dome-like arc,
    // widest ring at the bottom, apex on the axis.
    ProfileCurve c;
    c.points = {{1.00, 0.00}, {0.97, 0.28}, {0.88, 0.55},
                {0.72, 0.78}, {0.47, 0.95}, {0.00, 1.08}};
    return c;
}

ProfileCurve peanut_profile(double waist) {
    ProfileCurve c;
    c.points = {{0.55, 0.00}, {0.85, 0.35}, {0.95, 0.70}, {0.80, 1.05},
                {waist, 1.40}, {0.80, 1.75}, {0.95, 2.10}, {0.85, 2.45},
                {0.55, 2.80}};
    return c;
}

namespace {

Polyhedron build_revolution_surface(const ProfileCurve& curve, int n_spin) {
    curve.validate_basic();
    const auto& pp = curve.points;

    if (n_spin == 2) {
        // Flat doubly covered polygon in the xz-plane.
        std::vector<Vec3> verts;
        std::vector<int> right, left;
        for (const Vec2& p : pp) {
            right.push_back(static_cast<int>(verts.size()));
            verts.push_back({p.x, 0.0, p.y});
        }
        for (size_t i = 0; i < pp.size(); ++i) {
            if (pp[i].x == 0.0) { left.push_back(right[i]); continue; }
            left.push_back(static_cast<int>(verts.size()));
            verts.push_back({-pp[i].x, 0.0, pp[i].y});
        }
        // Boundary cycle, ccw viewed from +y. The two sheets use different
        // fan apexes so their interior diagonals stay distinct edges.
        std::vector<int> cycle = right;
        for (auto it = left.rbegin(); it != left.rend(); ++it)
            if (*it != cycle.back() && *it != cycle.front()) cycle.push_back(*it);
        std::vector<std::array<int, 3>> tris;
        const int nc = static_cast<int>(cycle.size());
        for (int i = 1; i + 1 < nc; ++i) tris.push_back({cycle[0], cycle[i], cycle[i + 1]});
        for (int i = 2; i + 1 < nc + 1; ++i)
            tris.push_back({cycle[1], cycle[(i + 1) % nc], cycle[i % nc]});
        return Polyhedron::from_triangles(std::move(verts), tris, true);
    }

    std::vector<Vec3> verts;
    std::vector<std::vector<int>> ring(pp.size());
    for (size_t k = 0; k < pp.size(); ++k) {
        if (pp[k].x == 0.0) {
            ring[k].assign(1, static_cast<int>(verts.size()));
            verts.push_back({0.0, 0.0, pp[k].y});
            continue;
        }
        for (int j = 0; j < n_spin; ++j) {
            double th = kTwoPi * j / n_spin;
            ring[k].push_back(static_cast<int>(verts.size()));
            verts.push_back({pp[k].x * std::cos(th), pp[k].x * std::sin(th), pp[k].y});
        }
    }

    std::vector<std::array<int, 3>> tris;
    for (size_t k = 0; k + 1 < pp.size(); ++k) {
        const auto& lo = ring[k];
        const auto& hi = ring[k + 1];
        if (lo.size() > 1 && hi.size() > 1) {
            for (int j = 0; j < n_spin; ++j) {
                int jn = (j + 1) % n_spin;
                // trapezoid cut by the ccw-rising diagonal lo[j] -> hi[jn]
                tris.push_back({lo[j], lo[jn], hi[jn]});
                tris.push_back({lo[j], hi[jn], hi[j]});
            }
        } else if (lo.size() > 1) {  // apex above
            for (int j = 0; j < n_spin; ++j)
                tris.push_back({lo[j], lo[(j + 1) % n_spin], hi[0]});
        } else {  // apex below
            for (int j = 0; j < n_spin; ++j)
                tris.push_back({lo[0], hi[(j + 1) % n_spin], hi[j]});
        }
    }
    if (pp.front().x > 0.0) {  // flat bottom cap, outward normal -z
        const auto& r0 = ring.front();
        for (int j = 1; j + 1 < n_spin; ++j)
            tris.push_back({r0[0], r0[j + 1], r0[j]});
    }
    if (pp.back().x > 0.0) {  // flat top cap, outward normal +z
        const auto& rl = ring.back();
        for (int j = 1; j + 1 < n_spin; ++j)
            tris.push_back({rl[0], rl[j], rl[j + 1]});
    }
    return Polyhedron::from_triangles(std::move(verts), tris, false);
}

}  // namespace

Polyhedron revolution(const ProfileCurve& curve, int n_spin) {
    if (n_spin < 2) throw DomainError("revolution requires n_spin >= 2");
    if (!curve.is_convex_profile())
        throw NonConvexProfile("revolution() requires a convex profile");
    Polyhedron p = build_revolution_surface(curve, n_spin);
    if (!p.is_convex()) throw NonConvexProfile("spun profile produced a nonconvex surface");
    p.convex = true;
    return p;
}

Polyhedron revolution_surface_nonconvex(const ProfileCurve& curve, int n_spin) {
    if (n_spin < 3) throw DomainError("direct surface of revolution requires n_spin >= 3");
    Polyhedron p = build_revolution_surface(curve, n_spin);
    p.convex = p.is_convex();
    return p;
}

Polyhedron random_sphere_hull(int n, std::uint64_t seed) {
    if (n < 4) throw BadCount("random_sphere_hull requires n >= 4");
    Rng rng(seed);
    std::vector<Vec3> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) pts.push_back(rng.unit_sphere());
    return convex_hull(pts);
}

Polyhedron geodesic_dome(int frequency, double perturb, std::uint64_t seed) {
    if (frequency < 1) throw DomainError("frequency must be >= 1");
    if (perturb < 0.0 || perturb >= 0.1) throw DomainError("perturb must lie in [0, 0.1)");

    Polyhedron icosa = make_solid(SolidKind::icosahedron, 1.0);
    const int f = frequency;

    std::vector<Vec3> verts = icosa.vertices;
    std::map<std::pair<int, int>, std::vector<int>> edge_points;
    for (const MeshEdge& e : icosa.edges) {
        std::vector<int> ids;
        for (int i = 1; i < f; ++i) {
            Vec3 p = icosa.vertices[e.a] * (double(f - i) / f) + icosa.vertices[e.b] * (double(i) / f);
            ids.push_back(static_cast<int>(verts.size()));
            verts.push_back(p);
        }
        edge_points[{e.a, e.b}] = ids;
    }

    auto edge_point = [&](int u, int v, int i) {
        // i-th point from u to v (1..f-1)
        if (u < v) return edge_points[{u, v}][i - 1];
        return edge_points[{v, u}][f - i - 1];
    };

    std::vector<std::array<int, 3>> tris;
    for (const Triangle& t : icosa.triangles) {
        int a = t.v[0], b = t.v[1], c = t.v[2];
        // lattice(i, j) = a + i*(b-a)/f + j*(c-a)/f, i + j <= f
        std::map<std::pair<int, int>, int> lat;
        for (int i = 0; i <= f; ++i) {
            for (int j = 0; i + j <= f; ++j) {
                int id;
                if (i == 0 && j == 0) id = a;
                else if (i == f && j == 0) id = b;
                else if (i == 0 && j == f) id = c;
                else if (j == 0) id = edge_point(a, b, i);
                else if (i == 0) id = edge_point(a, c, j);
                else if (i + j == f) id = edge_point(b, c, j);
                else {
                    id = static_cast<int>(verts.size());
                    Vec3 p = icosa.vertices[a] * (double(f - i - j) / f) +
                             icosa.vertices[b] * (double(i) / f) +
                             icosa.vertices[c] * (double(j) / f);
                    verts.push_back(p);
                }
                lat[{i, j}] = id;
            }
        }
        for (int i = 0; i < f; ++i)
            for (int j = 0; i + j < f; ++j) {
                tris.push_back({lat[{i, j}], lat[{i + 1, j}], lat[{i, j + 1}]});
                if (i + j < f - 1)
                    tris.push_back({lat[{i + 1, j}], lat[{i + 1, j + 1}], lat[{i, j + 1}]});
            }
    }

    for (Vec3& v : verts) v = v.normalized();
    if (perturb > 0.0) {
        Rng rng(seed);
        for (Vec3& v : verts) v += rng.unit_sphere() * (perturb * rng.uniform01());
    }
    if (perturb > 0.0 || frequency > 1) return convex_hull(verts);
    return Polyhedron::from_triangles(std::move(verts), tris, true);
}

Polyhedron doubly_covered_ngon(int n, double scale) {
    if (n < 3) throw BadCount("polygon needs n >= 3");
    std::vector<Vec3> verts;
    for (int k = 0; k < n; ++k) {
        double th = kTwoPi * k / n;
        verts.push_back({scale * std::cos(th), scale * std::sin(th), 0.0});
    }
    std::vector<std::array<int, 3>> tris;
    for (int i = 1; i + 1 < n; ++i) tris.push_back({0, i, i + 1});
    for (int i = 2; i + 1 < n + 1; ++i) tris.push_back({1, (i + 1) % n, i % n});
    return Polyhedron::from_triangles(std::move(verts), tris, true);
}

Polyhedron distorted_dodecahedron(std::uint64_t seed, double jitter) {
    Polyhedron d = make_solid(SolidKind::dodecahedron, 1.0);
    Rng rng(seed);
    std::vector<Vec3> pts = d.vertices;
    for (Vec3& v : pts) v += rng.unit_sphere() * (jitter * rng.uniform01());
    return convex_hull(pts);
}

}  // namespace spiralcut

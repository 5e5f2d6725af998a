#include "spiralcut/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "spiralcut/slicing.hpp"

namespace spiralcut {

namespace {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double len2 = ab.dot(ab);
    double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    Vec2 q{a.x + ab.x * t, a.y + ab.y * t};
    return (p - q).norm();
}

double segment_distance2d(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1) {
    return std::min(std::min(point_segment_distance(a0, b0, b1),
                             point_segment_distance(a1, b0, b1)),
                    std::min(point_segment_distance(b0, a0, a1),
                             point_segment_distance(b1, a0, a1)));
}

struct PairTester {
    const std::vector<Vec2>& poly;
    int n;
    double touch_tol;

    bool adjacent(int i, int j) const {
        int d = std::abs(i - j);
        return d == 0 || d == 1 || d == n - 1;
    }

    std::optional<Crossing> test(int i, int j) const {
        const Vec2 &a0 = poly[i], &a1 = poly[(i + 1) % n];
        const Vec2 &b0 = poly[j], &b1 = poly[(j + 1) % n];
        double d1 = orient2d(b0, b1, a0);
        double d2 = orient2d(b0, b1, a1);
        double d3 = orient2d(a0, a1, b0);
        double d4 = orient2d(a0, a1, b1);
        bool proper = ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
                      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
        if (proper) {
            double s = d1 / (d1 - d2);
            Crossing c;
            c.seg_a = std::min(i, j);
            c.seg_b = std::max(i, j);
            c.point = {a0.x + s * (a1.x - a0.x), a0.y + s * (a1.y - a0.y)};
            c.touch = false;
            return c;
        }
        double dist = segment_distance2d(a0, a1, b0, b1);
        if (dist <= touch_tol) {
            Crossing c;
            c.seg_a = std::min(i, j);
            c.seg_b = std::max(i, j);
            // representative point: the nearest endpoint
            double best = 1e300;
            for (const Vec2& p : {a0, a1}) {
                double d = point_segment_distance(p, b0, b1);
                if (d < best) { best = d; c.point = p; }
            }
            for (const Vec2& p : {b0, b1}) {
                double d = point_segment_distance(p, a0, a1);
                if (d < best) { best = d; c.point = p; }
            }
            c.touch = true;
            return c;
        }
        return std::nullopt;
    }
};

void finish_report(OverlapReport& rep, const std::vector<Vec2>& poly, const PairTester& t) {
    std::sort(rep.crossings.begin(), rep.crossings.end(), [](const Crossing& a, const Crossing& b) {
        if (a.seg_a != b.seg_a) return a.seg_a < b.seg_a;
        return a.seg_b < b.seg_b;
    });
    rep.crossings.erase(std::unique(rep.crossings.begin(), rep.crossings.end(),
                                    [](const Crossing& a, const Crossing& b) {
                                        return a.seg_a == b.seg_a && a.seg_b == b.seg_b;
                                    }),
                        rep.crossings.end());
    rep.simple = rep.crossings.empty();
    rep.min_clearance = 0.0;
    if (rep.simple) {
        double best = 1e300;
        int n = t.n;
        for (int i = 0; i < n; ++i)
            for (int j = i + 2; j < n; ++j) {
                if (t.adjacent(i, j)) continue;
                best = std::min(best, segment_distance2d(poly[i], poly[(i + 1) % n],
                                                         poly[j], poly[(j + 1) % n]));
            }
        rep.min_clearance = best;
    }
}

}  // namespace

std::vector<Vec2> boundary_polygon(const PlanarLayout& l) {
    std::vector<Vec2> poly;
    for (const auto& b : l.rho) poly.push_back(b.pos);
    for (int i = static_cast<int>(l.lambda.size()) - 2; i >= 1; --i)
        poly.push_back(l.lambda[i].pos);
    return poly;
}

OverlapReport check_simple(const PlanarLayout& l) {
    std::vector<Vec2> poly = boundary_polygon(l);
    const int n = static_cast<int>(poly.size());
    PairTester tester{poly, n, 1e-12 * l.diameter2d()};
    OverlapReport rep;

    // Interval sweep over x: segments sorted by xmin, active while their
    // x-ranges overlap the incoming segment.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto xmin = [&](int i) { return std::min(poly[i].x, poly[(i + 1) % n].x); };
    auto xmax = [&](int i) { return std::max(poly[i].x, poly[(i + 1) % n].x); };
    std::sort(order.begin(), order.end(), [&](int a, int b) { return xmin(a) < xmin(b); });

    std::vector<int> active;
    for (int idx : order) {
        double x0 = xmin(idx);
        active.erase(std::remove_if(active.begin(), active.end(),
                                    [&](int j) { return xmax(j) < x0 - tester.touch_tol; }),
                     active.end());
        for (int j : active) {
            if (tester.adjacent(idx, j)) continue;
            auto c = tester.test(idx, j);
            if (c) rep.crossings.push_back(*c);
        }
        active.push_back(idx);
    }
    finish_report(rep, poly, tester);
    return rep;
}

OverlapReport check_simple_bruteforce(const PlanarLayout& l) {
    std::vector<Vec2> poly = boundary_polygon(l);
    const int n = static_cast<int>(poly.size());
    PairTester tester{poly, n, 1e-12 * l.diameter2d()};
    OverlapReport rep;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (tester.adjacent(i, j)) continue;
            auto c = tester.test(i, j);
            if (c) rep.crossings.push_back(*c);
        }
    finish_report(rep, poly, tester);
    return rep;
}

double cone_apex_angle(double beta) {
    if (beta < 0.0 || beta > kPi / 2.0)
        throw DomainError("cone half-angle must lie in [0, pi/2]");
    return kTwoPi * std::sin(beta);
}

std::vector<int> corner_ring_ids(const Polyhedron& p, const SpiralPath& s, double height_tol) {
    double tol = height_tol >= 0.0 ? height_tol : p.default_height_tol();
    auto levels = vertex_levels(p, tol);
    std::vector<double> zs;
    for (const auto& g : levels) {
        double z = 0.0;
        for (int v : g) z += p.vertices[v].z;
        zs.push_back(z / static_cast<double>(g.size()));
    }
    std::vector<int> ids;
    for (const Corner& c : s.corners) {
        int found = -1;
        for (int i = 0; i < static_cast<int>(zs.size()); ++i)
            if (std::abs(c.pos.z - zs[i]) <= 2.0 * tol) found = i;
        ids.push_back(found);
    }
    return ids;
}

namespace {

struct CircleFit {
    Vec2 center;
    double radius = 0.0;
    double residual = 0.0;
};

CircleFit fit_circle(const std::vector<Vec2>& pts) {
    if (pts.size() < 4) throw FitDegenerate("circle fit needs at least 4 points");
    double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0, n = 0;
    double rx = 0, ry = 0, rc = 0;
    for (const Vec2& p : pts) {
        double w = p.x * p.x + p.y * p.y;
        sxx += p.x * p.x; sxy += p.x * p.y; syy += p.y * p.y;
        sx += p.x; sy += p.y; n += 1.0;
        rx += w * p.x; ry += w * p.y; rc += w;
    }
    // [sxx sxy sx; sxy syy sy; sx sy n] [A B C]^T = [rx ry rc], A = 2cx ...
    double m[3][3] = {{sxx, sxy, sx}, {sxy, syy, sy}, {sx, sy, n}};
    double r[3] = {rx, ry, rc};
    double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                 m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (std::abs(det) < 1e-30) throw FitDegenerate("circle fit is singular (collinear points)");
    auto solve = [&](int col) {
        double t[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t[i][j] = j == col ? r[i] : m[i][j];
        return (t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1]) -
                t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0]) +
                t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0])) / det;
    };
    double a = solve(0) / 2.0, b = solve(1) / 2.0, cterm = solve(2);
    CircleFit f;
    f.center = {a, b};
    f.radius = std::sqrt(std::max(0.0, cterm + a * a + b * b));
    for (const Vec2& p : pts)
        f.residual = std::max(f.residual, std::abs((p - f.center).norm() - f.radius));
    return f;
}

}  // namespace

AnnulusFit annulus_fit(const PlanarLayout& l, const std::vector<int>& ring_ids) {
    if (ring_ids.size() != l.rho.size())
        throw Error("ring decomposition size does not match the corner count");

    // Collect the placed rho / lambda images of each ring's corners.
    std::map<int, std::vector<Vec2>> rho_ring, lambda_ring;
    std::map<int, std::pair<int, int>> ring_span;  // ring -> (first, last corner index)
    for (int k = 0; k < static_cast<int>(ring_ids.size()); ++k) {
        int r = ring_ids[k];
        if (r < 0) continue;
        rho_ring[r].push_back(l.rho[k].pos);
        lambda_ring[r].push_back(l.lambda[k].pos);
        auto it = ring_span.find(r);
        if (it == ring_span.end()) ring_span[r] = {k, k};
        else it->second.second = k;
    }

    std::vector<int> rings;
    for (auto& [r, pts] : rho_ring)
        if (pts.size() >= 4) rings.push_back(r);
    std::sort(rings.begin(), rings.end());
    if (rings.size() < 2) throw FitDegenerate("fewer than two rings with enough corners");

    AnnulusFit out;
    for (size_t i = 0; i + 1 < rings.size(); ++i) {
        int lo = rings[i], hi = rings[i + 1];
        AnnulusFit::BandFit bf;
        bf.lower_ring = lo;
        CircleFit outer = fit_circle(lambda_ring[lo]);  // lower circle bounds this band
        CircleFit inner = fit_circle(rho_ring[hi]);     // upper circle, surface to its right
        bf.center_outer = outer.center;
        bf.center_inner = inner.center;
        bf.center = {(outer.center.x + inner.center.x) / 2.0,
                     (outer.center.y + inner.center.y) / 2.0};
        bf.r_outer = outer.radius;
        bf.r_inner = inner.radius;
        bf.concentricity = (outer.center - inner.center).norm() / outer.radius;
        bf.fit_residual = std::max(outer.residual, inner.residual);
        out.bands.push_back(bf);
    }

    // Tangency of adjacent bands at their shared ring: the placed midpoint
    // of the one uncut ring edge (between the ring cycle's exit and entry).
    auto tangency_at_ring = [&](int ring) -> Vec2 {
        auto [k0, k1] = ring_span[ring];
        for (const auto& t : l.triangles)
            for (int e = 0; e < 3; ++e) {
                int a = t.point_ids[e], b = t.point_ids[(e + 1) % 3];
                int ca = l.source_corner[a], cb = l.source_corner[b];
                if ((ca == k0 && cb == k1) || (ca == k1 && cb == k0)) {
                    Vec2 pa = l.placed[a], pb = l.placed[b];
                    return {(pa.x + pb.x) / 2.0, (pa.y + pb.y) / 2.0};
                }
            }
        throw Error("uncut seam edge not found at ring " + std::to_string(ring));
    };

    for (size_t i = 0; i + 1 < out.bands.size(); ++i) {
        const auto& lo = out.bands[i];
        const auto& hi = out.bands[i + 1];
        AnnulusFit::PairCheck pc;
        pc.lower_ring = hi.lower_ring;
        pc.r1 = lo.r_inner;
        pc.r2 = hi.r_outer;
        pc.nested = pc.r1 > pc.r2;
        pc.tangency = tangency_at_ring(hi.lower_ring);
        Vec2 c1 = lo.center_inner, c2 = hi.center_outer;
        Vec2 d = c2 - c1;
        double dn = d.norm();
        if (dn < 1e-12 * pc.r1) {
            pc.collinearity = 0.0;
        } else {
            double cross = std::abs((pc.tangency - c1).cross(d)) / dn;
            pc.collinearity = cross / pc.r1;
        }
        pc.tangency_gap = std::abs(dn - (pc.r1 - pc.r2)) / pc.r1;
        out.pairs.push_back(pc);
    }
    return out;
}

}  // namespace spiralcut

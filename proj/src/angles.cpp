#include "spiralcut/angles.hpp"

#include <algorithm>
#include <cmath>

namespace spiralcut {

namespace {

double wedge_angle(const Vec3& u, const Vec3& w) {
    return std::acos(std::clamp(u.normalized().dot(w.normalized()), -1.0, 1.0));
}

}  // namespace

double DirectionFan::angle_of(const Vec3& dir) const {
    Vec3 d = dir.normalized();
    // Locate the wedge whose plane contains dir and whose angular range
    // covers it; tolerate small off-plane noise and pick the best fit.
    double best_err = 1e9, best_angle = 0.0;
    for (const Wedge& w : wedges) {
        double c = d.dot(w.lead_dir);
        double s = d.dot(w.in_normal);
        Vec3 plane_n = w.lead_dir.cross(w.in_normal);
        double off = std::abs(d.dot(plane_n));
        double a = std::atan2(s, c);
        if (a < -1e-9 || a > w.angle + 1e-9) continue;
        if (off < best_err) {
            best_err = off;
            best_angle = w.start_angle + std::clamp(a, 0.0, w.angle);
        }
    }
    if (best_err > 1e-6)
        throw NotOnSurface("direction does not lie in any face wedge at the point");
    return best_angle;
}

Vec3 DirectionFan::dir_at(double angle) const {
    double a = std::fmod(angle, total);
    if (a < 0.0) a += total;
    for (const Wedge& w : wedges) {
        if (a <= w.start_angle + w.angle + 1e-12) {
            double local = std::max(0.0, a - w.start_angle);
            return w.lead_dir * std::cos(local) + w.in_normal * std::sin(local);
        }
    }
    const Wedge& w = wedges.back();
    return w.lead_dir * std::cos(w.angle) + w.in_normal * std::sin(w.angle);
}

double DirectionFan::z_at(double angle) const { return dir_at(angle).z; }

DirectionFan direction_fan(const Polyhedron& p, const SurfacePoint& at) {
    DirectionFan fan;
    auto push_wedge = [&](int tri, const Vec3& lead, const Vec3& trail) {
        DirectionFan::Wedge w;
        w.triangle = tri;
        w.start_angle = fan.total;
        w.angle = wedge_angle(lead, trail);
        w.lead_dir = lead.normalized();
        Vec3 n = p.triangle_normal(tri);
        w.in_normal = n.cross(w.lead_dir).normalized();
        fan.wedges.push_back(w);
        fan.total += w.angle;
    };

    switch (at.kind) {
        case SurfacePoint::Kind::vertex: {
            auto vf = p.vertex_fan(at.id);
            int k = static_cast<int>(vf.tris.size());
            for (int i = 0; i < k; ++i) {
                Vec3 lead = p.vertices[vf.ring[i]] - at.pos;
                Vec3 trail = p.vertices[vf.ring[(i + 1) % k]] - at.pos;
                push_wedge(vf.tris[i], lead, trail);
            }
            break;
        }
        case SurfacePoint::Kind::edge_point: {
            const MeshEdge& me = p.edges[at.id];
            Vec3 along = p.vertices[me.b] - p.vertices[me.a];
            // Wedge order must be ccw about the outward normal: in the
            // triangle where the directed edge a->b appears in ccw order,
            // the surface lies to the left, so the fan starting along +ab
            // sweeps first through that triangle.
            int t_left = -1, t_right = -1;
            for (int k = 0; k < 2; ++k) {
                const auto& tv = p.triangles[me.tri[k]].v;
                for (int j = 0; j < 3; ++j)
                    if (tv[j] == me.a && tv[(j + 1) % 3] == me.b) t_left = me.tri[k];
                for (int j = 0; j < 3; ++j)
                    if (tv[j] == me.b && tv[(j + 1) % 3] == me.a) t_right = me.tri[k];
            }
            if (t_left < 0 || t_right < 0) throw InternalError("edge without both orientations");
            push_wedge(t_left, along, -1.0 * along);
            push_wedge(t_right, -1.0 * along, along);
            break;
        }
        case SurfacePoint::Kind::face_point: {
            // Flat interior point: a full 2*pi disk in the face plane.
            const auto& tv = p.triangles[at.id].v;
            Vec3 lead = p.vertices[tv[0]] - at.pos;
            Vec3 n = p.triangle_normal(at.id);
            Vec3 u = lead.normalized();
            Vec3 v = n.cross(u).normalized();
            for (int quarter = 0; quarter < 4; ++quarter) {
                DirectionFan::Wedge w;
                w.triangle = at.id;
                w.start_angle = fan.total;
                w.angle = kPi / 2.0;
                double base = quarter * kPi / 2.0;
                w.lead_dir = u * std::cos(base) + v * std::sin(base);
                w.in_normal = u * std::cos(base + kPi / 2.0) + v * std::sin(base + kPi / 2.0);
                fan.wedges.push_back(w);
                fan.total += w.angle;
            }
            break;
        }
    }
    return fan;
}

SurfaceAngleSplit surface_angle_split(const Polyhedron& p, const SurfacePoint& at,
                                      const Vec3& dir, PlaneSide side) {
    DirectionFan fan = direction_fan(p, at);

    Vec3 d = dir.normalized();
    if (std::abs(d.z) <= 1e-12) {
        int tri = fan.wedges.empty() ? -1 : fan.wedges.front().triangle;
        throw HorizontalDegenerate("direction is horizontal: the split is ill-defined", tri);
    }
    if ((side == PlaneSide::above) != (d.z > 0.0))
        throw Error("direction does not point into the requested side of the plane");

    if (at.kind == SurfacePoint::Kind::face_point &&
        std::abs(p.triangle_normal(at.id).z) > 1.0 - 1e-12)
        throw HorizontalDegenerate("point lies interior to a horizontal face", at.id);

    double a_dir = fan.angle_of(d);

    // Horizontal directions: zeros of the z-component across the fan.
    std::vector<double> horizontals;
    auto add_h = [&](double a) {
        double v = std::fmod(a, fan.total);
        if (v < 0.0) v += fan.total;
        for (double h : horizontals)
            if (std::abs(h - v) < 1e-12 || std::abs(std::abs(h - v) - fan.total) < 1e-12) return;
        horizontals.push_back(v);
    };
    for (const auto& w : fan.wedges) {
        double zc = w.lead_dir.z, zs = w.in_normal.z;
        if (std::abs(zc) <= 1e-15 && std::abs(zs) <= 1e-15) {
            // Horizontal wedge: its boundary rays are horizontal directions.
            add_h(w.start_angle);
            add_h(w.start_angle + w.angle);
            continue;
        }
        if (std::abs(zc) <= 1e-15) add_h(w.start_angle);
        // zc*cos(a) + zs*sin(a) = 0  =>  tan(a) = -zc/zs
        if (std::abs(zs) > 1e-15) {
            double a0 = std::atan(-zc / zs);
            for (double cand : {a0, a0 + kPi, a0 - kPi})
                if (cand >= -1e-12 && cand <= w.angle + 1e-12)
                    add_h(w.start_angle + std::clamp(cand, 0.0, w.angle));
        } else {
            // z(a) = zc*cos(a): zero at a = pi/2 within the wedge.
            if (kPi / 2.0 <= w.angle + 1e-12) add_h(w.start_angle + kPi / 2.0);
        }
    }
    if (horizontals.empty())
        throw NoHorizontalSection("no horizontal section through the point");

    double rho = fan.total, lambda = fan.total;
    for (double h : horizontals) {
        double cw = std::fmod(a_dir - h, fan.total);
        if (cw < 0.0) cw += fan.total;
        double ccw = fan.total - cw;
        if (cw >= 1e-12) rho = std::min(rho, cw);
        if (ccw >= 1e-12) lambda = std::min(lambda, ccw);
    }
    return {rho, lambda};
}

}  // namespace spiralcut

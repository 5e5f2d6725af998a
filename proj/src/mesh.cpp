#include "spiralcut/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spiralcut {

namespace {
inline std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}
}  // namespace

Polyhedron Polyhedron::from_triangles(std::vector<Vec3> verts,
                                      const std::vector<std::array<int, 3>>& tris,
                                      bool convex_flag) {
    Polyhedron p;
    p.vertices = std::move(verts);
    p.triangles.reserve(tris.size());
    for (const auto& t : tris) p.triangles.push_back(Triangle{t, -1});
    p.convex = convex_flag;
    for (const Vec3& v : p.vertices)
        if (!v.finite()) throw DegenerateInput("mesh vertex has non-finite coordinates");
    p.build_adjacency();
    p.compute_diameter();
    p.assign_face_ids();
    p.validate();
    return p;
}

void Polyhedron::build_adjacency() {
    edges.clear();
    edge_lookup_.clear();
    vertex_triangles.assign(vertices.size(), {});
    for (int t = 0; t < static_cast<int>(triangles.size()); ++t) {
        const auto& tv = triangles[t].v;
        for (int k = 0; k < 3; ++k) {
            int a = tv[k], b = tv[(k + 1) % 3];
            if (a < 0 || b < 0 || a >= static_cast<int>(vertices.size()) ||
                b >= static_cast<int>(vertices.size()) || a == b)
                throw DegenerateInput("bad triangle vertex index");
            auto key = edge_key(a, b);
            auto it = edge_lookup_.find(key);
            if (it == edge_lookup_.end()) {
                MeshEdge e;
                e.a = std::min(a, b);
                e.b = std::max(a, b);
                e.tri[0] = t;
                edge_lookup_.emplace(key, static_cast<int>(edges.size()));
                edges.push_back(e);
            } else {
                MeshEdge& e = edges[it->second];
                if (e.tri[1] != -1)
                    throw DegenerateInput("edge shared by more than two triangles");
                e.tri[1] = t;
            }
        }
        for (int k = 0; k < 3; ++k) vertex_triangles[tv[k]].push_back(t);
    }
}

void Polyhedron::compute_diameter() {
    Vec3 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
            std::numeric_limits<double>::max()};
    Vec3 hi = -lo;
    for (const Vec3& v : vertices) {
        lo.x = std::min(lo.x, v.x); lo.y = std::min(lo.y, v.y); lo.z = std::min(lo.z, v.z);
        hi.x = std::max(hi.x, v.x); hi.y = std::max(hi.y, v.y); hi.z = std::max(hi.z, v.z);
    }
    diameter_ = (hi - lo).norm();
    if (diameter_ <= 0.0) throw DegenerateInput("mesh has zero extent");
}

void Polyhedron::assign_face_ids() {
    // Flood-fill coplanar adjacent triangles into shared face ids.
    const double ntol = 1e-9;
    const double dtol = 1e-9 * diameter_;
    for (auto& t : triangles) t.face_id = -1;
    int next_id = 0;
    std::vector<int> stack;
    for (int seed = 0; seed < static_cast<int>(triangles.size()); ++seed) {
        if (triangles[seed].face_id != -1) continue;
        Vec3 n = triangle_normal(seed);
        double off = n.dot(vertices[triangles[seed].v[0]]);
        triangles[seed].face_id = next_id;
        stack.assign(1, seed);
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            const auto& tv = triangles[t].v;
            for (int k = 0; k < 3; ++k) {
                int e = edge_index(tv[k], tv[(k + 1) % 3]);
                const MeshEdge& me = edges[e];
                int nb = me.tri[0] == t ? me.tri[1] : me.tri[0];
                if (nb < 0 || triangles[nb].face_id != -1) continue;
                Vec3 nn = triangle_normal(nb);
                if (nn.dot(n) > 1.0 - ntol &&
                    std::abs(nn.dot(vertices[triangles[nb].v[0]]) - off) < dtol) {
                    triangles[nb].face_id = next_id;
                    stack.push_back(nb);
                }
            }
        }
        ++next_id;
    }
}

int Polyhedron::edge_index(int a, int b) const {
    auto it = edge_lookup_.find(edge_key(a, b));
    return it == edge_lookup_.end() ? -1 : it->second;
}

Vec3 Polyhedron::triangle_normal(int t) const {
    const auto& tv = triangles[t].v;
    Vec3 n = (vertices[tv[1]] - vertices[tv[0]]).cross(vertices[tv[2]] - vertices[tv[0]]);
    return n.normalized();
}

double Polyhedron::triangle_area(int t) const {
    const auto& tv = triangles[t].v;
    return 0.5 * (vertices[tv[1]] - vertices[tv[0]]).cross(vertices[tv[2]] - vertices[tv[0]]).norm();
}

double Polyhedron::surface_area() const {
    double a = 0.0;
    for (int t = 0; t < static_cast<int>(triangles.size()); ++t) a += triangle_area(t);
    return a;
}

double Polyhedron::signed_volume() const {
    Vec3 c = centroid();
    double vol = 0.0;
    for (const auto& t : triangles) {
        Vec3 a = vertices[t.v[0]] - c, b = vertices[t.v[1]] - c, d = vertices[t.v[2]] - c;
        vol += a.dot(b.cross(d)) / 6.0;
    }
    return vol;
}

Vec3 Polyhedron::centroid() const {
    Vec3 c{};
    for (const Vec3& v : vertices) c += v;
    return c / static_cast<double>(vertices.size());
}

double Polyhedron::min_z() const {
    double z = std::numeric_limits<double>::max();
    for (const Vec3& v : vertices) z = std::min(z, v.z);
    return z;
}

double Polyhedron::max_z() const {
    double z = std::numeric_limits<double>::lowest();
    for (const Vec3& v : vertices) z = std::max(z, v.z);
    return z;
}

void Polyhedron::validate() const {
    if (vertices.size() < 3 || triangles.size() < 2)
        throw DegenerateInput("mesh too small to be a closed surface");
    for (const MeshEdge& e : edges)
        if (e.tri[1] == -1) throw DegenerateInput("open edge: mesh is not watertight");
    long v = static_cast<long>(vertices.size());
    long e = static_cast<long>(edges.size());
    long f = static_cast<long>(triangles.size());
    if (v - e + f != 2) throw DegenerateInput("Euler formula violated: not a sphere-like mesh");
    double vol = signed_volume();
    double vtol = 1e-12 * diameter_ * diameter_ * diameter_;
    if (vol < -vtol) throw DegenerateInput("inward orientation: signed volume negative");
}

bool Polyhedron::is_convex(double tol_factor) const {
    double tol = tol_factor * diameter_;
    for (int t = 0; t < static_cast<int>(triangles.size()); ++t) {
        Vec3 n = triangle_normal(t);
        double off = n.dot(vertices[triangles[t].v[0]]);
        for (const Vec3& v : vertices)
            if (n.dot(v) > off + tol) return false;
    }
    return true;
}

double Polyhedron::total_vertex_angle(int v) const {
    double total = 0.0;
    for (int t : vertex_triangles[v]) {
        const auto& tv = triangles[t].v;
        int i = tv[0] == v ? 0 : (tv[1] == v ? 1 : 2);
        Vec3 u = (vertices[tv[(i + 1) % 3]] - vertices[v]).normalized();
        Vec3 w = (vertices[tv[(i + 2) % 3]] - vertices[v]).normalized();
        total += std::acos(std::clamp(u.dot(w), -1.0, 1.0));
    }
    return total;
}

Polyhedron::VertexFan Polyhedron::vertex_fan(int v) const {
    VertexFan fan;
    const auto& inc = vertex_triangles[v];
    if (inc.empty()) return fan;
    int t = *std::min_element(inc.begin(), inc.end());
    int first = t;
    do {
        const auto& tv = triangles[t].v;
        int i = tv[0] == v ? 0 : (tv[1] == v ? 1 : 2);
        int lead = tv[(i + 1) % 3];   // wedge sweeps ccw from v->lead
        int trail = tv[(i + 2) % 3];  // to v->trail
        fan.tris.push_back(t);
        fan.ring.push_back(lead);
        int e = edge_index(v, trail);
        const MeshEdge& me = edges[e];
        t = me.tri[0] == t ? me.tri[1] : me.tri[0];
    } while (t != first && fan.tris.size() <= inc.size());
    if (fan.tris.size() != inc.size())
        throw DegenerateInput("vertex star is not a single fan (non-manifold vertex)");
    return fan;
}

Polyhedron orient(const Polyhedron& p, const Mat3& rotation) {
    if (rotation.orthogonality_error() > 1e-12 || std::abs(rotation.det() - 1.0) > 1e-12)
        throw NotARotation("matrix is not a proper rotation");
    Polyhedron q = p;
    for (Vec3& v : q.vertices) v = rotation.apply(v);
    return q;
}

double gaussian_curvature(const Polyhedron& p, int v) {
    return kTwoPi - p.total_vertex_angle(v);
}

double total_curvature(const Polyhedron& p) {
    double s = 0.0;
    for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v)
        s += gaussian_curvature(p, v);
    return s;
}

}  // namespace spiralcut

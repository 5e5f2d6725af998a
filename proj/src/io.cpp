#include "spiralcut/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace spiralcut {

using json = nlohmann::ordered_json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::vector<std::array<int, 3>> triangulate_face(const std::vector<int>& face) {
    std::vector<std::array<int, 3>> tris;
    for (size_t i = 1; i + 1 < face.size(); ++i)
        tris.push_back({face[0], face[static_cast<int>(i)], face[static_cast<int>(i) + 1]});
    return tris;
}

}  // namespace

Polyhedron read_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open mesh file: " + path);
    std::vector<Vec3> verts;
    std::vector<std::array<int, 3>> tris;

    auto ends_with = [&](const char* suf) {
        std::string s(suf);
        return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
    };

    if (ends_with(".obj")) {
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::string tag;
            ls >> tag;
            if (tag == "v") {
                Vec3 v;
                ls >> v.x >> v.y >> v.z;
                verts.push_back(v);
            } else if (tag == "f") {
                std::vector<int> face;
                std::string tok;
                while (ls >> tok) {
                    size_t slash = tok.find('/');
                    face.push_back(std::stoi(tok.substr(0, slash)) - 1);
                }
                for (auto& t : triangulate_face(face)) tris.push_back(t);
            }
        }
    } else {
        std::string header;
        in >> header;
        if (header != "OFF") throw IoError("expected OFF header in " + path);
        int nv = 0, nf = 0, ne = 0;
        in >> nv >> nf >> ne;
        if (!in) throw IoError("malformed OFF counts in " + path);
        for (int i = 0; i < nv; ++i) {
            Vec3 v;
            in >> v.x >> v.y >> v.z;
            verts.push_back(v);
        }
        for (int i = 0; i < nf; ++i) {
            int k = 0;
            in >> k;
            std::vector<int> face(k);
            for (int& x : face) in >> x;
            for (auto& t : triangulate_face(face)) tris.push_back(t);
        }
        if (!in) throw IoError("truncated OFF data in " + path);
    }
    Polyhedron p = Polyhedron::from_triangles(std::move(verts), tris, false);
    p.convex = p.is_convex();
    return p;
}

void write_off(const std::string& path, const Polyhedron& p) {
    std::ostringstream out;
    out << "OFF\n" << p.vertices.size() << ' ' << p.triangles.size() << " 0\n";
    for (const Vec3& v : p.vertices)
        out << fmt(v.x) << ' ' << fmt(v.y) << ' ' << fmt(v.z) << '\n';
    for (const Triangle& t : p.triangles)
        out << "3 " << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << '\n';
    write_text_file(path, out.str());
}

ProfileCurve read_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open profile file: " + path);
    ProfileCurve c;
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        double r, z;
        if (ls >> r >> z) c.points.push_back({r, z});
    }
    c.validate_basic();
    return c;
}

void write_profile(const std::string& path, const ProfileCurve& c) {
    std::ostringstream out;
    out << "# profile curve: r z per line\n";
    for (const Vec2& p : c.points) out << fmt(p.x) << ' ' << fmt(p.y) << '\n';
    write_text_file(path, out.str());
}

std::string spiral_to_json(const SpiralPath& s) {
    json j;
    j["winding"] = s.winding;
    j["corners"] = json::array();
    for (const Corner& c : s.corners) {
        json jc;
        jc["xyz"] = {c.pos.x, c.pos.y, c.pos.z};
        jc["host_kind"] = c.host == Corner::Host::vertex ? "vertex" : "edge";
        jc["host_id"] = c.host_id;
        jc["t"] = c.t;
        jc["is_vertex"] = c.is_polyhedron_vertex;
        j["corners"].push_back(jc);
    }
    if (!s.notes.empty()) j["notes"] = s.notes;
    return j.dump(2) + "\n";
}

SpiralPath spiral_from_json(const std::string& text, const Polyhedron& p) {
    json j = json::parse(text);
    SpiralPath s;
    s.winding = j.value("winding", 0);
    for (const auto& jc : j.at("corners")) {
        std::string kind = jc.at("host_kind");
        if (kind == "vertex")
            s.corners.push_back(Corner::at_vertex(p, jc.at("host_id").get<int>()));
        else
            s.corners.push_back(
                Corner::on_edge(p, jc.at("host_id").get<int>(), jc.at("t").get<double>()));
    }
    return s;
}

std::string layout_to_json(const PlanarLayout& l) {
    json j;
    j["triangles"] = json::array();
    for (const auto& t : l.triangles) {
        json jt = json::array();
        for (const auto& q : t.pts) jt.push_back({q.x, q.y});
        j["triangles"].push_back(jt);
    }
    auto chain = [](const std::vector<BoundaryPoint>& bps) {
        json arr = json::array();
        for (const auto& b : bps) {
            json jb;
            jb["x"] = b.pos.x;
            jb["y"] = b.pos.y;
            jb["vertex"] = b.is_polyhedron_vertex;
            jb["corner"] = b.corner_index;
            arr.push_back(jb);
        }
        return arr;
    };
    j["rho"] = chain(l.rho);
    j["lambda"] = chain(l.lambda);
    j["endpoint_angles"] = {
        {"bottom", endpoint_exterior_angle(l, PathEndpoint::bottom)},
        {"top", endpoint_exterior_angle(l, PathEndpoint::top)}};
    return j.dump(2) + "\n";
}

std::string report_to_json(const OverlapReport& r) {
    json j;
    j["simple"] = r.simple;
    j["crossings"] = json::array();
    for (const Crossing& c : r.crossings) {
        json jc;
        jc["seg_a"] = c.seg_a;
        jc["seg_b"] = c.seg_b;
        jc["point"] = {c.point.x, c.point.y};
        jc["touch"] = c.touch;
        j["crossings"].push_back(jc);
    }
    j["min_clearance"] = r.min_clearance;
    return j.dump(2) + "\n";
}

std::string curve_to_json(const OverlapCurve& c) {
    json j = json::array();
    for (const auto& row : c.rows) {
        json jr;
        jr["n"] = row.n;
        jr["trials"] = row.trials;
        jr["overlap_fraction"] = row.overlap_fraction;
        jr["excluded"] = row.excluded;
        j.push_back(jr);
    }
    return j.dump(2) + "\n";
}

std::string curve_to_csv(const OverlapCurve& c) {
    std::ostringstream out;
    out << "n,trials,overlap_fraction,excluded\n";
    for (const auto& row : c.rows)
        out << row.n << ',' << row.trials << ',' << fmt(row.overlap_fraction) << ','
            << row.excluded << '\n';
    return out.str();
}

std::string records_to_json(const std::vector<TrialRecord>& recs) {
    json j = json::array();
    for (const auto& r : recs) {
        json jr;
        jr["generator"] = r.generator;
        jr["trial"] = r.trial;
        jr["seed"] = r.seed;
        jr["winding"] = r.winding;
        jr["rotation"] = r.rotation.m;
        jr["overlap"] = r.overlap;
        jr["crossings"] = r.crossings;
        jr["corner_count"] = r.corner_count;
        jr["min_clearance"] = r.min_clearance;
        jr["runtime_seconds"] = r.runtime_seconds;
        jr["error"] = r.error;
        j.push_back(jr);
    }
    return j.dump(2) + "\n";
}

std::string annuli_to_json(const AnnulusFit& fit) {
    json j;
    j["bands"] = json::array();
    for (const auto& b : fit.bands) {
        json jb;
        jb["lower_ring"] = b.lower_ring;
        jb["center"] = {b.center.x, b.center.y};
        jb["r_outer"] = b.r_outer;
        jb["r_inner"] = b.r_inner;
        jb["concentricity"] = b.concentricity;
        jb["fit_residual"] = b.fit_residual;
        j["bands"].push_back(jb);
    }
    j["pairs"] = json::array();
    for (const auto& p : fit.pairs) {
        json jp;
        jp["shared_ring"] = p.lower_ring;
        jp["r1"] = p.r1;
        jp["r2"] = p.r2;
        jp["nested"] = p.nested;
        jp["tangency"] = {p.tangency.x, p.tangency.y};
        jp["collinearity"] = p.collinearity;
        jp["tangency_gap"] = p.tangency_gap;
        j["pairs"].push_back(jp);
    }
    return j.dump(2) + "\n";
}

std::string validation_to_json(const SpiralValidation& v) {
    json j;
    j["z_monotone"] = v.z_monotone;
    j["hamiltonian"] = v.hamiltonian;
    j["surface_simple"] = v.surface_simple;
    j["all_ccw"] = v.all_ccw;
    j["first_non_monotone"] = v.first_non_monotone;
    j["first_missing_vertex"] = v.first_missing_vertex;
    j["first_crossing"] = v.first_crossing;
    j["first_non_ccw"] = v.first_non_ccw;
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --- SVG --------------------------------------------------------------------

namespace {

struct SvgFrame {
    double xmin, ymin, xmax, ymax, margin;
    double X(double x) const { return x - xmin + margin; }
    double Y(double y) const { return ymax - y + margin; }  // flip for SVG
};

}  // namespace

std::string layout_to_svg(const PlanarLayout& l, const SvgStyle& style) {
    SvgFrame f{1e300, 1e300, -1e300, -1e300, 0.0};
    for (const auto& t : l.triangles)
        for (const auto& q : t.pts) {
            f.xmin = std::min(f.xmin, q.x);
            f.xmax = std::max(f.xmax, q.x);
            f.ymin = std::min(f.ymin, q.y);
            f.ymax = std::max(f.ymax, q.y);
        }
    double span = std::max(f.xmax - f.xmin, f.ymax - f.ymin);
    f.margin = 0.05 * span;
    double w = f.xmax - f.xmin + 2 * f.margin;
    double h = f.ymax - f.ymin + 2 * f.margin;
    double strokew = 0.002 * span;
    double dot = 0.008 * span;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fmt(w) << ' ' << fmt(h)
        << "\">\n";
    if (style.fill_faces) {
        out << "<g fill=\"#f2f2f2\" stroke=\"#cccccc\" stroke-width=\"" << fmt(0.5 * strokew)
            << "\">\n";
        for (const auto& t : l.triangles) {
            out << "<polygon points=\"";
            for (int k = 0; k < 3; ++k) {
                if (k) out << ' ';
                out << fmt(f.X(t.pts[k].x)) << ',' << fmt(f.Y(t.pts[k].y));
            }
            out << "\"/>\n";
        }
        out << "</g>\n";
    }
    auto polyline = [&](const std::vector<BoundaryPoint>& chain, const std::string& color) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
            << fmt(2.0 * strokew) << "\" points=\"";
        for (size_t i = 0; i < chain.size(); ++i) {
            if (i) out << ' ';
            out << fmt(f.X(chain[i].pos.x)) << ',' << fmt(f.Y(chain[i].pos.y));
        }
        out << "\"/>\n";
    };
    polyline(l.rho, style.rho_color);
    polyline(l.lambda, style.lambda_color);
    if (style.mark_vertices) {
        out << "<g fill=\"#cc0000\">\n";
        for (const auto& chain : {l.rho, l.lambda})
            for (const auto& b : chain)
                if (b.is_polyhedron_vertex)
                    out << "<circle cx=\"" << fmt(f.X(b.pos.x)) << "\" cy=\"" << fmt(f.Y(b.pos.y))
                        << "\" r=\"" << fmt(dot) << "\"/>\n";
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string curve_to_svg(const OverlapCurve& c) {
    const double W = 640, H = 420, ml = 60, mb = 50, mt = 20, mr = 20;
    double nmax = 1.0;
    for (const auto& r : c.rows) nmax = std::max(nmax, static_cast<double>(r.n));
    auto X = [&](double n) { return ml + (W - ml - mr) * n / nmax; };
    auto Y = [&](double fr) { return H - mb - (H - mb - mt) * fr; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << ml << "\" y2=\"" << mt
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (W / 2) << "\" y=\"" << (H - 12)
        << "\" text-anchor=\"middle\" font-size=\"14\">vertices n</text>\n";
    out << "<text x=\"14\" y=\"" << (H / 2)
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 14 "
        << (H / 2) << ")\">overlap fraction</text>\n";
    out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" points=\"";
    for (size_t i = 0; i < c.rows.size(); ++i) {
        if (i) out << ' ';
        out << fmt(X(c.rows[i].n)) << ',' << fmt(Y(c.rows[i].overlap_fraction));
    }
    out << "\"/>\n";
    for (const auto& r : c.rows)
        out << "<circle cx=\"" << fmt(X(r.n)) << "\" cy=\"" << fmt(Y(r.overlap_fraction))
            << "\" r=\"4\" fill=\"#1f4e9c\"/>\n";
    for (const auto& r : c.rows)
        out << "<text x=\"" << fmt(X(r.n)) << "\" y=\"" << (H - mb + 18)
            << "\" text-anchor=\"middle\" font-size=\"12\">" << r.n << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace spiralcut

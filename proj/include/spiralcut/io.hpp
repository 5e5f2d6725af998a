#pragma once
#include <string>

#include "spiralcut/experiments.hpp"
#include "spiralcut/generators.hpp"
#include "spiralcut/overlap.hpp"
#include "spiralcut/spiral.hpp"
#include "spiralcut/unfold.hpp"

namespace spiralcut {

// Mesh files: OFF in/out, OBJ in (vertices and faces only).
Polyhedron read_mesh(const std::string& path);
void write_off(const std::string& path, const Polyhedron& p);

// Profile curve: two columns "r z" per line, '#' comments.
ProfileCurve read_profile(const std::string& path);
void write_profile(const std::string& path, const ProfileCurve& c);

// JSON serialization (nlohmann), stable key order and round-trip-safe
// number formatting.
std::string spiral_to_json(const SpiralPath& s);
SpiralPath spiral_from_json(const std::string& text, const Polyhedron& p);
std::string layout_to_json(const PlanarLayout& l);
std::string report_to_json(const OverlapReport& r);
std::string curve_to_json(const OverlapCurve& c);
std::string curve_to_csv(const OverlapCurve& c);
std::string records_to_json(const std::vector<TrialRecord>& recs);
std::string annuli_to_json(const AnnulusFit& fit);
std::string validation_to_json(const SpiralValidation& v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Figure-style SVG: layout triangles, rho in purple, lambda in green,
// polyhedron vertices as red dots. Byte-identical across reruns.
struct SvgStyle {
    bool mark_vertices = true;
    std::string rho_color = "#800080";
    std::string lambda_color = "#008000";
    bool fill_faces = true;
};
std::string layout_to_svg(const PlanarLayout& l, const SvgStyle& style = {});

// Simple scatter/line plot of an overlap curve.
std::string curve_to_svg(const OverlapCurve& c);

}  // namespace spiralcut

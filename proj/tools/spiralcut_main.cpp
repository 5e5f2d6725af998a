#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spiralcut/io.hpp"
#include "spiralcut/spiral.hpp"

using namespace spiralcut;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitOverlap = 3;
constexpr int kExitIo = 4;
constexpr int kExitInternal = 5;

struct GenSpec {
    std::string name;
    double scale = 1.0;
    int n = 16;
    std::uint64_t seed = 1;
    int frequency = 3;
    double perturb = 0.01;
    int nspin = 8;
    std::string profile_path;

    ProfileCurve profile() const {
        if (!profile_path.empty()) return read_profile(profile_path);
        return cstar_profile();
    }

    Polyhedron build() const {
        if (name == "hemiball") return hemiball(n);
        if (name == "revolution") return revolution(profile(), nspin);
        if (name == "peanut") return revolution_surface_nonconvex(peanut_profile(), nspin);
        if (name == "revolution-nonconvex")
            return revolution_surface_nonconvex(profile(), nspin);
        if (name == "random-hull") return random_sphere_hull(n, seed);
        if (name == "dome") return geodesic_dome(frequency, perturb, seed);
        if (name == "doubly-covered-ngon") return doubly_covered_ngon(n, scale);
        if (name == "distorted-dodecahedron") return distorted_dodecahedron(seed);
        return make_solid(solid_from_name(name), scale);
    }
};

Mat3 parse_rotation(const std::string& spec) {
    if (spec.empty() || spec == "none") return Mat3::identity();
    if (spec.rfind("random:", 0) == 0) {
        Rng rng(std::stoull(spec.substr(7)));
        return rng.rotation();
    }
    if (spec.rfind("axis:", 0) == 0) {
        // axis:X,Y,Z:ANGLE (radians)
        std::string rest = spec.substr(5);
        size_t colon = rest.rfind(':');
        if (colon == std::string::npos)
            throw DomainError("rotation must be axis:X,Y,Z:ANGLE or random:SEED");
        std::string xyz = rest.substr(0, colon);
        double angle = std::stod(rest.substr(colon + 1));
        double x, y, z;
        char c1, c2;
        std::istringstream in(xyz);
        if (!(in >> x >> c1 >> y >> c2 >> z) || c1 != ',' || c2 != ',')
            throw DomainError("rotation axis must be X,Y,Z");
        return Mat3::axis_angle({x, y, z}, angle);
    }
    throw DomainError("unknown rotation spec: " + spec);
}

struct PipelineArtifacts {
    Polyhedron body;
    SpiralPath spiral;
    PlanarLayout layout;
    OverlapReport report;
};

PipelineArtifacts run_pipeline(const Polyhedron& input, const std::string& rotate, int winding) {
    PipelineArtifacts art{orient(input, parse_rotation(rotate)), {}, {}, {}};
    art.spiral = build_spiral(art.body, winding);
    CutDisk disk = cut_surface(art.body, art.spiral);
    art.layout = develop(disk);
    art.report = check_simple(art.layout);
    return art;
}

Polyhedron load_input(const std::string& in_path, const GenSpec& gen) {
    if (!in_path.empty()) return read_mesh(in_path);
    if (gen.name.empty())
        throw DomainError("either --in or --gen must be given");
    return gen.build();
}

void add_gen_options(CLI::App* cmd, GenSpec& gen, bool positional) {
    if (positional)
        cmd->add_option("name", gen.name, "generator or solid name")->required();
    else
        cmd->add_option("--gen", gen.name, "generator or solid name");
    cmd->add_option("--scale", gen.scale, "circumradius for catalog solids");
    cmd->add_option("--n", gen.n, "point count (hemiball, random-hull, ngon)");
    cmd->add_option("--seed", gen.seed, "generator seed");
    cmd->add_option("--frequency", gen.frequency, "geodesic subdivision frequency");
    cmd->add_option("--perturb", gen.perturb, "dome vertex perturbation");
    cmd->add_option("--nspin", gen.nspin, "revolution copies around the axis");
    cmd->add_option("--profile", gen.profile_path, "profile curve file (r z per line)");
}

int cmd_gen(const GenSpec& gen, const std::string& out) {
    Polyhedron p = gen.build();
    write_off(out, p);
    return kExitOk;
}

int cmd_spiral(const Polyhedron& body, const std::string& rotate, int winding,
               const std::string& json_out) {
    Polyhedron q = orient(body, parse_rotation(rotate));
    SpiralPath s = build_spiral(q, winding);
    if (!json_out.empty()) write_text_file(json_out, spiral_to_json(s));
    else std::cout << spiral_to_json(s);
    return kExitOk;
}

int cmd_unfold(const Polyhedron& body, const std::string& rotate, int winding,
               const std::string& svg_out, const std::string& json_out,
               const std::string& report_out) {
    PipelineArtifacts art = run_pipeline(body, rotate, winding);
    if (!svg_out.empty()) write_text_file(svg_out, layout_to_svg(art.layout));
    if (!json_out.empty()) write_text_file(json_out, layout_to_json(art.layout));
    if (!report_out.empty()) write_text_file(report_out, report_to_json(art.report));
    std::cout << (art.report.simple ? "simple" : "overlap") << " corners="
              << art.spiral.size() << " crossings=" << art.report.crossings.size() << "\n";
    return art.report.simple ? kExitOk : kExitOverlap;
}

int cmd_validate(const std::string& mesh_path, const std::string& spiral_path) {
    Polyhedron p = read_mesh(mesh_path);
    SpiralPath s = spiral_from_json(read_text_file(spiral_path), p);
    SpiralValidation v = validate_spiral(p, s);
    std::cout << validation_to_json(v);
    return v.ok() ? kExitOk : kExitOverlap;
}

int cmd_annuli(const Polyhedron& body, const std::string& rotate, int winding,
               const std::string& json_out) {
    PipelineArtifacts art = run_pipeline(body, rotate, winding);
    std::vector<int> rings = corner_ring_ids(art.body, art.spiral);
    AnnulusFit fit = annulus_fit(art.layout, rings);
    std::string text = annuli_to_json(fit);
    if (!json_out.empty()) write_text_file(json_out, text);
    else std::cout << text;
    return kExitOk;
}

struct ExperimentArgs {
    std::string name;
    std::vector<int> n_values{4, 8, 12, 16, 20, 25};
    int trials = 50;
    std::uint64_t seed = 1;
    int orientations = 100;
    int hemiball_n = 16;
    int frequency = 3;
    double perturb = 0.01;
    std::vector<int> nspin_values{4, 6, 8, 12, 20};
    std::string profile_path;
    std::string out_prefix;
    bool svg = false;
};

int cmd_experiment(const ExperimentArgs& a) {
    auto emit = [&](const std::string& suffix, const std::string& content) {
        if (a.out_prefix.empty()) std::cout << content;
        else write_text_file(a.out_prefix + suffix, content);
    };

    if (a.name == "random-overlap") {
        if (a.trials < 1) throw DomainError("--trials must be >= 1");
        std::vector<TrialRecord> records;
        OverlapCurve curve = random_overlap_stats(a.n_values, a.trials, a.seed, &records);
        emit(".json", curve_to_json(curve));
        emit(".csv", curve_to_csv(curve));
        if (a.svg) emit(".svg", curve_to_svg(curve));
        return kExitOk;
    }
    if (a.name == "hemiball-sweep") {
        SweepResult r = hemiball_orientation_sweep(a.hemiball_n, a.orientations, a.seed);
        emit(".json", records_to_json(r.records));
        std::cout << "overlap_fraction=" << r.overlap_fraction << " excluded=" << r.excluded
                  << "\n";
        return kExitOk;
    }
    if (a.name == "revolution-threshold") {
        ProfileCurve c = a.profile_path.empty() ? cstar_profile() : read_profile(a.profile_path);
        ThresholdResult r = revolution_threshold_search(c, a.nspin_values);
        std::ostringstream out;
        out << "n_spin,overlap,error\n";
        for (const auto& e : r.entries)
            out << e.n_spin << ',' << (e.overlap ? 1 : 0) << ',' << e.error << '\n';
        emit(".csv", out.str());
        std::cout << "threshold=" << r.threshold
                  << (r.monotonicity_violated ? " (monotonicity violated)" : "") << "\n";
        return kExitOk;
    }
    if (a.name == "dome-conjecture") {
        SweepResult r = dome_conjecture_run(a.frequency, a.perturb, a.orientations, a.seed);
        emit(".json", records_to_json(r.records));
        std::cout << "overlap_fraction=" << r.overlap_fraction << " excluded=" << r.excluded
                  << "\n";
        return kExitOk;
    }
    std::cerr << "unknown experiment '" << a.name
              << "'; valid: random-overlap, hemiball-sweep, revolution-threshold, "
                 "dome-conjecture\n";
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spiral cut-paths on convex polyhedra: construction, unfolding, overlap"};
    app.require_subcommand(1);
    app.set_config("--config");

    GenSpec gen_out, gen_in;
    std::string in_path, out_path, rotate = "none";
    std::string svg_out, json_out, report_out, spiral_path;
    int winding = 0;
    double tol_height = -1.0;
    (void)tol_height;

    auto* gen = app.add_subcommand("gen", "generate a mesh and write OFF");
    add_gen_options(gen, gen_out, true);
    gen->add_option("-o,--out", out_path, "output OFF path")->required();

    auto* spiral = app.add_subcommand("spiral", "construct the spiral cut-path");
    spiral->add_option("-i,--in", in_path, "input mesh (OFF/OBJ)");
    add_gen_options(spiral, gen_in, false);
    spiral->add_option("--rotate", rotate, "axis:X,Y,Z:ANGLE | random:SEED | none");
    spiral->add_option("-w,--winding", winding, "extra loops per band");
    spiral->add_option("--json", json_out, "write spiral JSON here");

    auto* unfold = app.add_subcommand("unfold", "spiral, cut, develop, check overlap");
    unfold->add_option("-i,--in", in_path, "input mesh (OFF/OBJ)");
    add_gen_options(unfold, gen_in, false);
    unfold->add_option("--rotate", rotate, "axis:X,Y,Z:ANGLE | random:SEED | none");
    unfold->add_option("-w,--winding", winding, "extra loops per band");
    unfold->add_option("--svg", svg_out, "write layout SVG here");
    unfold->add_option("--json", json_out, "write layout JSON here");
    unfold->add_option("--report", report_out, "write overlap report JSON here");

    auto* validate = app.add_subcommand("validate", "check a spiral JSON against a mesh");
    validate->add_option("-i,--in", in_path, "input mesh")->required();
    validate->add_option("--spiral", spiral_path, "spiral JSON path")->required();

    auto* annuli = app.add_subcommand("annuli", "fit band annuli of a revolution layout");
    annuli->add_option("-i,--in", in_path, "input mesh (OFF/OBJ)");
    add_gen_options(annuli, gen_in, false);
    annuli->add_option("--rotate", rotate, "axis:X,Y,Z:ANGLE | random:SEED | none");
    annuli->add_option("-w,--winding", winding, "extra loops per band");
    annuli->add_option("--json", json_out, "write annulus JSON here");

    ExperimentArgs exp;
    auto* experiment = app.add_subcommand("experiment", "run a named experiment");
    experiment->add_option("name", exp.name, "experiment name")->required();
    experiment->add_option("--n", exp.n_values, "vertex counts")->delimiter(',');
    experiment->add_option("--trials", exp.trials, "trials per point");
    experiment->add_option("--seed", exp.seed, "experiment seed");
    experiment->add_option("--orientations", exp.orientations, "random orientations");
    experiment->add_option("--hemiball-n", exp.hemiball_n, "hemiball size");
    experiment->add_option("--frequency", exp.frequency, "dome frequency");
    experiment->add_option("--perturb", exp.perturb, "dome perturbation");
    experiment->add_option("--nspin", exp.nspin_values, "revolution n_spin values")
        ->delimiter(',');
    experiment->add_option("--profile", exp.profile_path, "profile curve file");
    experiment->add_option("-o,--out", exp.out_prefix, "output file prefix");
    experiment->add_flag("--svg", exp.svg, "also write a plot SVG");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_out, out_path);
        if (spiral->parsed()) return cmd_spiral(load_input(in_path, gen_in), rotate, winding, json_out);
        if (unfold->parsed())
            return cmd_unfold(load_input(in_path, gen_in), rotate, winding, svg_out, json_out,
                              report_out);
        if (validate->parsed()) return cmd_validate(in_path, spiral_path);
        if (annuli->parsed())
            return cmd_annuli(load_input(in_path, gen_in), rotate, winding, json_out);
        if (experiment->parsed()) return cmd_experiment(exp);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BadCount& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}

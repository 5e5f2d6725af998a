#include "spiralcut/experiments.hpp"

#include <chrono>

#include "spiralcut/spiral.hpp"
#include "spiralcut/unfold.hpp"

namespace spiralcut {

namespace {

std::uint64_t label_seed(const std::string& label) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

constexpr double kTrialTimeCap = 10.0;  // seconds; capped trials become errors

}  // namespace

TrialRecord run_unfold_trial(const Polyhedron& body, const Mat3& rotation, int winding,
                             const std::string& label) {
    TrialRecord rec;
    rec.generator = label;
    rec.rotation = rotation;
    rec.winding = winding;
    auto t0 = std::chrono::steady_clock::now();
    try {
        Polyhedron q = orient(body, rotation);
        SpiralPath s = build_spiral(q, winding);
        rec.corner_count = static_cast<int>(s.corners.size());
        SpiralValidation val = validate_spiral(q, s);
        if (!val.ok()) throw InternalError("constructed path fails spiral validation");
        CutDisk disk = cut_surface(q, s);
        PlanarLayout layout = develop(disk);
        OverlapReport rep = check_simple(layout);
        rec.overlap = !rep.simple;
        rec.crossings = static_cast<int>(rep.crossings.size());
        rec.min_clearance = rep.min_clearance;
    } catch (const Error& e) {
        rec.error = e.what();
    }
    rec.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (rec.error.empty() && rec.runtime_seconds > kTrialTimeCap)
        rec.error = "time cap exceeded";
    return rec;
}

OverlapCurve random_overlap_stats(const std::vector<int>& n_values, int trials,
                                  std::uint64_t seed, std::vector<TrialRecord>* records) {
    if (trials < 1) throw DomainError("trials must be >= 1");
    OverlapCurve curve;
    for (int n : n_values) {
        if (n < 4) throw DomainError("random hulls need n >= 4");
        OverlapCurve::Row row;
        row.n = n;
        row.trials = trials;
        int overlaps = 0, counted = 0;
        for (int t = 0; t < trials; ++t) {
            std::uint64_t hull_seed = mix_seed(seed, mix_seed(n, 2 * t));
            std::uint64_t rot_seed = mix_seed(seed, mix_seed(n, 2 * t + 1));
            Polyhedron body = random_sphere_hull(n, hull_seed);
            Rng rot_rng(rot_seed);
            TrialRecord rec = run_unfold_trial(body, rot_rng.rotation(), 0,
                                               "random-sphere-hull n=" + std::to_string(n));
            rec.seed = hull_seed;
            rec.trial = t;
            if (records) records->push_back(rec);
            if (rec.ok()) {
                ++counted;
                if (rec.overlap) ++overlaps;
            } else {
                ++row.excluded;
            }
        }
        row.overlap_fraction = counted > 0 ? static_cast<double>(overlaps) / counted : 0.0;
        curve.rows.push_back(row);
    }
    return curve;
}

SweepResult hemiball_orientation_sweep(int n, int orientations, std::uint64_t seed) {
    Polyhedron body = hemiball(n);
    SweepResult out;

    // Special orientation 1: flat base horizontal (the canonical frame).
    out.records.push_back(
        run_unfold_trial(body, Mat3::identity(), 0, "hemiball base-horizontal"));
    // Special orientation 2: tilted 90 degrees so (1,0,0) becomes vertical.
    Mat3 tilt = Mat3::axis_angle({0, 1, 0}, -kPi / 2.0);
    out.records.push_back(run_unfold_trial(body, tilt, 0, "hemiball x-vertical"));

    Rng rng(seed);
    for (int i = 0; i < orientations; ++i) {
        TrialRecord rec = run_unfold_trial(body, rng.rotation(), 0,
                                           "hemiball random orientation");
        rec.trial = i;
        rec.seed = seed;
        out.records.push_back(rec);
    }
    int overlaps = 0, counted = 0;
    for (const auto& r : out.records) {
        if (!r.ok()) { ++out.excluded; continue; }
        ++counted;
        if (r.overlap) ++overlaps;
    }
    out.overlap_fraction = counted > 0 ? static_cast<double>(overlaps) / counted : 0.0;
    return out;
}

ThresholdResult revolution_threshold_search(const ProfileCurve& curve,
                                            const std::vector<int>& n_spin_values) {
    if (!curve.is_convex_profile())
        throw NonConvexProfile("threshold search requires a convex profile");
    ThresholdResult out;
    for (int n : n_spin_values) {
        ThresholdResult::Entry e;
        e.n_spin = n;
        try {
            Polyhedron body = revolution(curve, n);
            TrialRecord rec = run_unfold_trial(body, Mat3::identity(), 0,
                                               "revolution n_spin=" + std::to_string(n));
            if (!rec.ok()) e.error = rec.error;
            else e.overlap = rec.overlap;
        } catch (const Error& err) {
            e.error = err.what();
        }
        out.entries.push_back(e);
    }
    for (int i = static_cast<int>(out.entries.size()) - 1; i >= 0; --i) {
        const auto& e = out.entries[i];
        if (!e.error.empty()) continue;
        if (e.overlap) break;
        out.threshold = e.n_spin;
    }
    bool seen_simple = false;
    for (const auto& e : out.entries) {
        if (!e.error.empty()) continue;
        if (!e.overlap) seen_simple = true;
        else if (seen_simple) out.monotonicity_violated = true;
    }
    return out;
}

SweepResult dome_conjecture_run(int frequency, double perturb, int orientations,
                                std::uint64_t seed) {
    Polyhedron body = geodesic_dome(frequency, perturb, seed);
    SweepResult out;
    Rng rng(mix_seed(seed, 0x0d0e));
    for (int i = 0; i < orientations; ++i) {
        TrialRecord rec = run_unfold_trial(body, rng.rotation(), 0,
                                           "geodesic-dome f=" + std::to_string(frequency));
        rec.trial = i;
        rec.seed = seed;
        out.records.push_back(rec);
    }
    int overlaps = 0, counted = 0;
    for (const auto& r : out.records) {
        if (!r.ok()) { ++out.excluded; continue; }
        ++counted;
        if (r.overlap) ++overlaps;
    }
    out.overlap_fraction = counted > 0 ? static_cast<double>(overlaps) / counted : 0.0;
    return out;
}

std::vector<Mat3> probe_rotations(const std::string& solid_label, int count) {
    std::vector<Mat3> rots;
    rots.push_back(Mat3::identity());
    Rng rng(label_seed(solid_label));
    while (static_cast<int>(rots.size()) < count) rots.push_back(rng.rotation());
    return rots;
}

}  // namespace spiralcut

#pragma once
#include <optional>
#include <string>
#include <vector>

#include "spiralcut/generators.hpp"
#include "spiralcut/overlap.hpp"
#include "spiralcut/rng.hpp"

namespace spiralcut {

struct TrialRecord {
    std::string generator;
    std::uint64_t seed = 0;
    int trial = -1;
    Mat3 rotation;
    int winding = 0;
    bool overlap = false;
    int crossings = 0;
    int corner_count = 0;
    double min_clearance = 0.0;
    double runtime_seconds = 0.0;
    std::string error;  // empty on success; failed trials are excluded, never dropped

    bool ok() const { return error.empty(); }
};

struct OverlapCurve {
    struct Row {
        int n = 0;
        int trials = 0;
        double overlap_fraction = 0.0;
        int excluded = 0;
    };
    std::vector<Row> rows;
};

// One full pipeline run: rotate, build the spiral, cut, develop, check.
TrialRecord run_unfold_trial(const Polyhedron& body, const Mat3& rotation, int winding,
                             const std::string& label);

// Random hulls, one curve row per n: trials x (hull -> random rotation ->
// spiral -> develop -> overlap), deterministic per seed.
OverlapCurve random_overlap_stats(const std::vector<int>& n_values, int trials,
                                  std::uint64_t seed, std::vector<TrialRecord>* records = nullptr);

// Hemiball evidence sweep: the two special orientations first (base
// horizontal, then tilted so +x is vertical), then random rotations.
struct SweepResult {
    std::vector<TrialRecord> records;
    double overlap_fraction = 0.0;
    int excluded = 0;
};
SweepResult hemiball_orientation_sweep(int n, int orientations, std::uint64_t seed);

// Upright revolution solids across n_spin values: per-value verdicts and
// the smallest tested n_spin from which every larger tested value is simple.
struct ThresholdResult {
    struct Entry {
        int n_spin = 0;
        bool overlap = false;
        std::string error;
    };
    std::vector<Entry> entries;
    int threshold = -1;              // smallest tested n_spin with stable nonoverlap
    bool monotonicity_violated = false;
};
ThresholdResult revolution_threshold_search(const ProfileCurve& curve,
                                            const std::vector<int>& n_spin_values);

SweepResult dome_conjecture_run(int frequency, double perturb, int orientations,
                                std::uint64_t seed);

// Documented probe set used by the acceptance suite: the canonical
// orientation followed by seeded random rotations.
std::vector<Mat3> probe_rotations(const std::string& solid_label, int count);

}  // namespace spiralcut

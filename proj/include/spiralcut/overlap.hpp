#pragma once
#include <vector>

#include "spiralcut/unfold.hpp"

namespace spiralcut {

struct Crossing {
    int seg_a = -1, seg_b = -1;  // boundary segment indices, seg_a < seg_b
    Vec2 point;
    bool touch = false;  // within the touch tolerance rather than a proper crossing
};

struct OverlapReport {
    bool simple = true;
    std::vector<Crossing> crossings;  // lexicographic by (seg_a, seg_b)
    double min_clearance = 0.0;       // smallest nonadjacent distance when simple
};

// Closed boundary polygon of a layout: rho forward, lambda backward.
std::vector<Vec2> boundary_polygon(const PlanarLayout& l);

// Interval-sweep pairwise intersection test with exact-sign orientation
// predicates; agreement with the brute-force oracle is a test invariant.
OverlapReport check_simple(const PlanarLayout& l);

// Brute-force all-pairs reference used by tests and debug assertions.
OverlapReport check_simple_bruteforce(const PlanarLayout& l);

// Total developed angle at the apex of a cone with half-angle beta.
double cone_apex_angle(double beta);

struct AnnulusFit {
    struct BandFit {
        int lower_ring = -1;     // ring level index of the band's lower circle
        Vec2 center;             // midpoint of the two fitted centers
        Vec2 center_outer, center_inner;
        double r_outer = 0.0, r_inner = 0.0;
        double concentricity = 0.0;  // |center_outer - center_inner| / r_outer
        double fit_residual = 0.0;   // max radial deviation over both fits
    };
    struct PairCheck {
        int lower_ring = -1;     // the shared ring between the two bands
        double r1 = 0.0;         // lower band's arc radius at the shared ring
        double r2 = 0.0;         // upper band's arc radius at the shared ring
        bool nested = false;     // r1 > r2
        Vec2 tangency;           // image of the uncut seam edge midpoint
        double collinearity = 0.0;  // dist(tangency, line(c1, c2)) / r1
        double tangency_gap = 0.0;  // | |c1-c2| - (r1-r2) | / r1, O(1/n_spin^2)
    };
    std::vector<BandFit> bands;
    std::vector<PairCheck> pairs;
};

// Ring level index per spiral corner (-1 for corners between levels).
std::vector<int> corner_ring_ids(const Polyhedron& p, const SpiralPath& s,
                                 double height_tol = -1.0);

// Circle fits per band of a polyhedron-of-revolution layout, with the
// nesting and tangency-collinearity checks between adjacent bands.
AnnulusFit annulus_fit(const PlanarLayout& l, const std::vector<int>& ring_ids);

}  // namespace spiralcut

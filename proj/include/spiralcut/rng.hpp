#pragma once
#include <cstdint>
#include <random>

#include "spiralcut/geometry.hpp"

namespace spiralcut {

// Seeded generator with hand-rolled distributions. std:: distributions are
// implementation-defined, so everything downstream of a seed goes through
// this class to keep results bit-identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do { u1 = uniform01(); } while (u1 <= 0.0);
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return r * std::cos(kTwoPi * u2);
    }

    Vec3 unit_sphere() {
        Vec3 v;
        do {
            v = Vec3{normal(), normal(), normal()};
        } while (v.norm() < 1e-12);
        return v.normalized();
    }

    // Uniform over SO(3) via a random unit quaternion.
    Mat3 rotation() {
        double q[4];
        double n2 = 0.0;
        do {
            n2 = 0.0;
            for (double& c : q) {
                c = normal();
                n2 += c * c;
            }
        } while (n2 < 1e-12);
        double n = std::sqrt(n2);
        double w = q[0] / n, x = q[1] / n, y = q[2] / n, z = q[3] / n;
        Mat3 r;
        r.m = {1 - 2 * (y * y + z * z), 2 * (x * y - w * z),     2 * (x * z + w * y),
               2 * (x * y + w * z),     1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
               2 * (x * z - w * y),     2 * (y * z + w * x),     1 - 2 * (x * x + y * y)};
        return r;
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Stable mixing of seed components for per-trial substreams.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull + b * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace spiralcut

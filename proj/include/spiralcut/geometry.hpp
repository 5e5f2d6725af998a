#pragma once
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace spiralcut {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const {
        double n = norm();
        return n > 0.0 ? *this / n : Vec3{};
    }
    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

struct Vec2 {
    double x = 0.0, y = 0.0;
    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}
    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
};

// Row-major 3x3 matrix, used for rigid rotations.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return {}; }
    static Mat3 axis_angle(const Vec3& axis, double angle);
    static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2);

    Vec3 apply(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    Mat3 mul(const Mat3& o) const;
    Mat3 transposed() const;
    double det() const;
    // Max deviation of R^T R from the identity.
    double orthogonality_error() const;
};

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateInput : Error { using Error::Error; };
struct NotARotation : Error { using Error::Error; };
struct EmptySlice : Error { using Error::Error; };
struct NonSimpleSlice : Error {
    int loop_count;
    NonSimpleSlice(const std::string& msg, int loops) : Error(msg), loop_count(loops) {}
};
struct VertexInside : Error {
    int vertex;
    VertexInside(const std::string& msg, int v) : Error(msg), vertex(v) {}
};
struct HorizontalDegenerate : Error {
    int face;
    HorizontalDegenerate(const std::string& msg, int f) : Error(msg), face(f) {}
};
struct NotOnSurface : Error { using Error::Error; };
struct AmbiguousBand : Error { using Error::Error; };
struct NoNonacuteTurn : Error { using Error::Error; };
struct ExitNotAdjacent : Error { using Error::Error; };
struct BadCount : Error { using Error::Error; };
struct NonConvexProfile : Error { using Error::Error; };
struct SelfIntersectingProfile : Error { using Error::Error; };
struct PathNotSimpleOnSurface : Error { using Error::Error; };
struct NumericalDrift : Error { using Error::Error; };
struct FitDegenerate : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct InternalError : Error { using Error::Error; };

// Exact-sign orientation predicates. The fast filtered path covers almost
// all inputs; near-degenerate cases fall back to expansion arithmetic, so
// the returned sign is exact for any double inputs.
double orient2d(const Vec2& a, const Vec2& b, const Vec2& c);
double orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

inline int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

}  // namespace spiralcut

#include "spiralcut/geometry.hpp"

#include <algorithm>
#include <vector>

namespace spiralcut {

Mat3 Mat3::axis_angle(const Vec3& axis, double angle) {
    Vec3 u = axis.normalized();
    double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
    Mat3 r;
    r.m = {t * u.x * u.x + c,       t * u.x * u.y - s * u.z, t * u.x * u.z + s * u.y,
           t * u.x * u.y + s * u.z, t * u.y * u.y + c,       t * u.y * u.z - s * u.x,
           t * u.x * u.z - s * u.y, t * u.y * u.z + s * u.x, t * u.z * u.z + c};
    return r;
}

Mat3 Mat3::from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
    Mat3 r;
    r.m = {r0.x, r0.y, r0.z, r1.x, r1.y, r1.z, r2.x, r2.y, r2.z};
    return r;
}

Mat3 Mat3::mul(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += m[3 * i + k] * o.m[3 * k + j];
            r.m[3 * i + j] = s;
        }
    return r;
}

Mat3 Mat3::transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[3 * i + j] = m[3 * j + i];
    return r;
}

double Mat3::det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

double Mat3::orthogonality_error() const {
    Mat3 g = transposed().mul(*this);
    double err = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            err = std::max(err, std::abs(g.m[3 * i + j] - (i == j ? 1.0 : 0.0)));
    return err;
}

// ---------------------------------------------------------------------------
// Exact predicates: expansion arithmetic (Shewchuk-style error-free
// transformations). The expansions are nonoverlapping and ordered weakest
// component first, so the sign of the represented value is the sign of the
// strongest nonzero component.
// ---------------------------------------------------------------------------

namespace {

using Expansion = std::vector<double>;

inline void two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    double bv = x - a;
    double av = x - bv;
    y = (a - av) + (b - bv);
}

inline void two_diff(double a, double b, double& x, double& y) {
    x = a - b;
    double bv = a - x;
    double av = x + bv;
    y = (a - av) + (bv - b);
}

inline void two_product(double a, double b, double& x, double& y) {
    x = a * b;
    y = std::fma(a, b, -x);
}

// e + b, preserving the nonoverlapping ordered property; zeros dropped.
Expansion grow(const Expansion& e, double b) {
    Expansion h;
    h.reserve(e.size() + 1);
    double q = b;
    for (double comp : e) {
        double x, y;
        two_sum(q, comp, x, y);
        if (y != 0.0) h.push_back(y);
        q = x;
    }
    h.push_back(q);
    return h;
}

Expansion exp_sum(const Expansion& a, const Expansion& b) {
    Expansion r = a;
    for (double comp : b) r = grow(r, comp);
    return r;
}

Expansion exp_from_two_diff(double a, double b) {
    double x, y;
    two_diff(a, b, x, y);
    Expansion r;
    if (y != 0.0) r.push_back(y);
    r.push_back(x);
    return r;
}

Expansion exp_scale(const Expansion& e, double s) {
    Expansion r;
    for (double comp : e) {
        double x, y;
        two_product(comp, s, x, y);
        if (y != 0.0) r = grow(r, y);
        if (x != 0.0) r = grow(r, x);
    }
    if (r.empty()) r.push_back(0.0);
    return r;
}

Expansion exp_mul(const Expansion& a, const Expansion& b) {
    Expansion r{0.0};
    for (double comp : a) r = exp_sum(r, exp_scale(b, comp));
    return r;
}

Expansion exp_neg(Expansion e) {
    for (double& c : e) c = -c;
    return e;
}

double exp_sign_value(const Expansion& e) {
    for (auto it = e.rbegin(); it != e.rend(); ++it)
        if (*it != 0.0) return *it;
    return 0.0;
}

constexpr double kEps = 1.1102230246251565e-16;  // 2^-53
const double kCcwErrBoundA = (3.0 + 16.0 * kEps) * kEps;
const double kO3dErrBoundA = (7.0 + 56.0 * kEps) * kEps;

double orient2d_exact(const Vec2& a, const Vec2& b, const Vec2& c) {
    Expansion axcx = exp_from_two_diff(a.x, c.x);
    Expansion bycy = exp_from_two_diff(b.y, c.y);
    Expansion aycy = exp_from_two_diff(a.y, c.y);
    Expansion bxcx = exp_from_two_diff(b.x, c.x);
    Expansion det = exp_sum(exp_mul(axcx, bycy), exp_neg(exp_mul(aycy, bxcx)));
    return exp_sign_value(det);
}

double orient3d_exact(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    Expansion ux = exp_from_two_diff(a.x, d.x), uy = exp_from_two_diff(a.y, d.y),
              uz = exp_from_two_diff(a.z, d.z);
    Expansion vx = exp_from_two_diff(b.x, d.x), vy = exp_from_two_diff(b.y, d.y),
              vz = exp_from_two_diff(b.z, d.z);
    Expansion wx = exp_from_two_diff(c.x, d.x), wy = exp_from_two_diff(c.y, d.y),
              wz = exp_from_two_diff(c.z, d.z);

    Expansion cx = exp_sum(exp_mul(vy, wz), exp_neg(exp_mul(vz, wy)));
    Expansion cy = exp_sum(exp_mul(vz, wx), exp_neg(exp_mul(vx, wz)));
    Expansion cz = exp_sum(exp_mul(vx, wy), exp_neg(exp_mul(vy, wx)));

    Expansion det = exp_sum(exp_mul(ux, cx), exp_sum(exp_mul(uy, cy), exp_mul(uz, cz)));
    return exp_sign_value(det);
}

}  // namespace

double orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
    double detleft = (a.x - c.x) * (b.y - c.y);
    double detright = (a.y - c.y) * (b.x - c.x);
    double det = detleft - detright;

    if (detleft > 0.0) {
        if (detright <= 0.0) return det;
    } else if (detleft < 0.0) {
        if (detright >= 0.0) return det;
    } else {
        if (detright == 0.0) return 0.0;
    }

    double detsum = std::abs(detleft) + std::abs(detright);
    if (std::abs(det) >= kCcwErrBoundA * detsum) return det;
    return orient2d_exact(a, b, c);
}

double orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    double adx = a.x - d.x, ady = a.y - d.y, adz = a.z - d.z;
    double bdx = b.x - d.x, bdy = b.y - d.y, bdz = b.z - d.z;
    double cdx = c.x - d.x, cdy = c.y - d.y, cdz = c.z - d.z;

    double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    double cdxady = cdx * ady, adxcdy = adx * cdy;
    double adxbdy = adx * bdy, bdxady = bdx * ady;

    double det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
    double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * std::abs(adz) +
                       (std::abs(cdxady) + std::abs(adxcdy)) * std::abs(bdz) +
                       (std::abs(adxbdy) + std::abs(bdxady)) * std::abs(cdz);
    if (std::abs(det) >= kO3dErrBoundA * permanent) return det;
    return orient3d_exact(a, b, c, d);
}

}  // namespace spiralcut

#pragma once

// Manufactured Stokes solution on the unit cube (nu = 1):
//   psi = curl-free-boundary potential built from s(t) = sin^3(pi t),
//   psi = (s(x) s'(y) s(z), -s'(x) s(y) s(z), 0)
//   u   = curl psi
//   f   = -laplacian u
// Both psi and curl psi vanish on the boundary of the cube.

#include "mesh.hpp"

#include <cmath>

namespace vemgc {

// n-th derivative of sin^3(pi t) via sin^3 = (3 sin - sin 3.)/4
inline double sin3_deriv(double t, int n) {
    const double p = M_PI;
    return (3.0 * std::pow(p, n) * std::sin(p * t + n * M_PI_2) -
            std::pow(3.0 * p, n) * std::sin(3.0 * p * t + n * M_PI_2)) /
           4.0;
}

inline Vec3 exact_psi(const Vec3& x) {
    auto s = [](double t) { return sin3_deriv(t, 0); };
    auto s1 = [](double t) { return sin3_deriv(t, 1); };
    return Vec3(s(x.x()) * s1(x.y()) * s(x.z()), -s1(x.x()) * s(x.y()) * s(x.z()), 0.0);
}

inline Vec3 exact_velocity(const Vec3& x) {  // curl psi
    auto s = [](double t) { return sin3_deriv(t, 0); };
    auto s1 = [](double t) { return sin3_deriv(t, 1); };
    auto s2 = [](double t) { return sin3_deriv(t, 2); };
    return Vec3(s1(x.x()) * s(x.y()) * s1(x.z()), s(x.x()) * s1(x.y()) * s1(x.z()),
                -(s2(x.x()) * s(x.y()) + s(x.x()) * s2(x.y())) * s(x.z()));
}

inline Vec3 exact_load(const Vec3& x) {  // -laplacian of the velocity
    auto s = [](double t) { return sin3_deriv(t, 0); };
    auto s1 = [](double t) { return sin3_deriv(t, 1); };
    auto s2 = [](double t) { return sin3_deriv(t, 2); };
    auto s3 = [](double t) { return sin3_deriv(t, 3); };
    auto s4 = [](double t) { return sin3_deriv(t, 4); };
    double X = x.x(), Y = x.y(), Z = x.z();
    double f1 = -(s3(X) * s(Y) * s1(Z) + s1(X) * s2(Y) * s1(Z) + s1(X) * s(Y) * s3(Z));
    double f2 = -(s2(X) * s1(Y) * s1(Z) + s(X) * s3(Y) * s1(Z) + s(X) * s1(Y) * s3(Z));
    double f3 = s(Z) * (s4(X) * s(Y) + 2.0 * s2(X) * s2(Y) + s(X) * s4(Y)) +
                s2(Z) * (s2(X) * s(Y) + s(X) * s2(Y));
    return Vec3(f1, f2, f3);
}

}  // namespace vemgc

#pragma once

// Scaled monomial bases.  Cell basis (degree 2):
//   {1, X, Y, Z, X^2, XY, XZ, Y^2, YZ, Z^2},  X = (x - b_K)/h_K  etc.
// Face basis (degree 2), in the face frame (u,v) with origin b_f:
//   {1, s, t, s^2, st, t^2},  s = u/h_f, t = v/h_f.

#include "mesh.hpp"

#include <Eigen/Dense>

namespace vemgc {

inline constexpr int kCellP1 = 4;
inline constexpr int kCellP2 = 10;
inline constexpr int kFaceP1 = 3;
inline constexpr int kFaceP2 = 6;

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec10 = Eigen::Matrix<double, 10, 1>;

inline Vec10 cell_monomials(const Cell& K, const Vec3& x) {
    Vec3 d = (x - K.barycenter) / K.diameter;
    Vec10 m;
    m << 1.0, d.x(), d.y(), d.z(), d.x() * d.x(), d.x() * d.y(), d.x() * d.z(),
        d.y() * d.y(), d.y() * d.z(), d.z() * d.z();
    return m;
}

// Gradients of the 10 cell monomials, one row per monomial.
inline Eigen::Matrix<double, 10, 3> cell_monomial_grads(const Cell& K, const Vec3& x) {
    Vec3 d = (x - K.barycenter) / K.diameter;
    double ih = 1.0 / K.diameter;
    Eigen::Matrix<double, 10, 3> g;
    g.setZero();
    g.row(1) << ih, 0, 0;
    g.row(2) << 0, ih, 0;
    g.row(3) << 0, 0, ih;
    g.row(4) << 2 * d.x() * ih, 0, 0;
    g.row(5) << d.y() * ih, d.x() * ih, 0;
    g.row(6) << d.z() * ih, 0, d.x() * ih;
    g.row(7) << 0, 2 * d.y() * ih, 0;
    g.row(8) << 0, d.z() * ih, d.y() * ih;
    g.row(9) << 0, 0, 2 * d.z() * ih;
    return g;
}

inline Vec6 face_monomials(const Face& f, const Vec2& uv) {
    double s = uv.x() / f.diameter, t = uv.y() / f.diameter;
    Vec6 m;
    m << 1.0, s, t, s * s, s * t, t * t;
    return m;
}

// In-plane gradients w.r.t. (u,v), one row per monomial.
inline Eigen::Matrix<double, 6, 2> face_monomial_grads(const Face& f, const Vec2& uv) {
    double s = uv.x() / f.diameter, t = uv.y() / f.diameter;
    double ih = 1.0 / f.diameter;
    Eigen::Matrix<double, 6, 2> g;
    g.setZero();
    g.row(1) << ih, 0;
    g.row(2) << 0, ih;
    g.row(3) << 2 * s * ih, 0;
    g.row(4) << t * ih, s * ih;
    g.row(5) << 0, 2 * t * ih;
    return g;
}

}  // namespace vemgc

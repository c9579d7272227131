#pragma once

// Quadrature rules on edges, polygonal faces and polyhedral cells.
// Faces are fanned into triangles about the barycenter, cells into
// tetrahedra (cell barycenter over face fans); simplex rules come from
// Duffy-collapsed tensor Gauss-Legendre.

#include "mesh.hpp"

#include <cmath>
#include <vector>

namespace vemgc {

struct QuadPoint {
    Vec3 x;
    double w;
};

using QuadRule = std::vector<QuadPoint>;

namespace detail {

// n-point Gauss-Legendre mapped to [0,1]; exact for degree 2n-1.
// Chebyshev initial guesses refined by Newton on P_n.
inline void gauss_legendre01(int n, std::vector<double>& pts, std::vector<double>& wts) {
    pts.resize(n);
    wts.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pn = 0, pnm1 = 0;
        for (int it = 0; it < 100; ++it) {
            pnm1 = 1.0;
            pn = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * pn - (k - 1) * pnm1) / k;
                pnm1 = pn;
                pn = p2;
            }
            double dp = n * (x * pn - pnm1) / (x * x - 1.0);
            double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double dp = n * (x * pn - pnm1) / (x * x - 1.0);
        pts[i] = 0.5 * (x + 1.0);               // map to [0,1]
        wts[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // 2/((1-x^2)P'^2) scaled by 1/2
    }
}

}  // namespace detail

// Rule on the segment [a,b] exact for polynomials of degree `deg`.
inline QuadRule edge_rule(const Vec3& a, const Vec3& b, int deg) {
    int n = deg / 2 + 1;
    std::vector<double> t, w;
    detail::gauss_legendre01(n, t, w);
    double len = (b - a).norm();
    QuadRule rule(n);
    for (int i = 0; i < n; ++i) rule[i] = {a + t[i] * (b - a), w[i] * len};
    return rule;
}

// Rule on triangle (p0,p1,p2) via Duffy transform; exact for degree `deg`.
inline QuadRule triangle_rule(const Vec3& p0, const Vec3& p1, const Vec3& p2, int deg) {
    int n = deg / 2 + 1;  // Duffy raises degree in the collapsed direction by 1
    int m = (deg + 1) / 2 + 1;
    std::vector<double> t1, w1, t2, w2;
    detail::gauss_legendre01(m, t1, w1);
    detail::gauss_legendre01(n, t2, w2);
    double area2 = ((p1 - p0).cross(p2 - p0)).norm();
    QuadRule rule;
    rule.reserve(static_cast<size_t>(n) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            double u = t1[i];             // barycentric: l1 = u, l2 = (1-u) t
            double v = (1.0 - u) * t2[j];
            double jac = (1.0 - u);
            rule.push_back({p0 + u * (p1 - p0) + v * (p2 - p0),
                            w1[i] * w2[j] * jac * area2});
        }
    return rule;
}

// Rule on tetrahedron (p0..p3) via Duffy; exact for degree `deg`.
inline QuadRule tet_rule(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3,
                         int deg) {
    int na = (deg + 2) / 2 + 1;  // collapsed twice
    int nb = (deg + 1) / 2 + 1;
    int nc = deg / 2 + 1;
    std::vector<double> ta, wa, tb, wb, tc, wc;
    detail::gauss_legendre01(na, ta, wa);
    detail::gauss_legendre01(nb, tb, wb);
    detail::gauss_legendre01(nc, tc, wc);
    double vol6 = std::abs(((p1 - p0).cross(p2 - p0)).dot(p3 - p0));
    QuadRule rule;
    rule.reserve(static_cast<size_t>(na) * nb * nc);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            for (int k = 0; k < nc; ++k) {
                double u = ta[i];
                double v = (1.0 - u) * tb[j];
                double w = (1.0 - u - v) * tc[k];
                double jac = (1.0 - u) * (1.0 - u - v);
                rule.push_back({p0 + u * (p1 - p0) + v * (p2 - p0) + w * (p3 - p0),
                                wa[i] * wb[j] * wc[k] * jac * vol6});
            }
    return rule;
}

// Rule on a (planar) polygonal face, exact for degree `deg`.
inline QuadRule face_rule(const Mesh& mesh, int fi, int deg) {
    const Face& f = mesh.faces[fi];
    QuadRule rule;
    const int m = static_cast<int>(f.verts.size());
    for (int i = 0; i < m; ++i) {
        QuadRule tri = triangle_rule(f.barycenter, mesh.vertices[f.verts[i]],
                                     mesh.vertices[f.verts[(i + 1) % m]], deg);
        rule.insert(rule.end(), tri.begin(), tri.end());
    }
    return rule;
}

// Rule on a polyhedral cell, exact for degree `deg`.  Built from tets
// (b_K, b_f, v_i, v_{i+1}) with signed weights, so it is valid even when
// the cell barycenter sits outside some fan tet.
inline QuadRule cell_rule(const Mesh& mesh, int ci, int deg) {
    const Cell& K = mesh.cells[ci];
    QuadRule rule;
    for (size_t j = 0; j < K.faces.size(); ++j) {
        const Face& f = mesh.faces[K.faces[j]];
        const double sgn = K.face_sign[j];
        const int m = static_cast<int>(f.verts.size());
        for (int i = 0; i < m; ++i) {
            const Vec3& a = mesh.vertices[f.verts[i]];
            const Vec3& b = mesh.vertices[f.verts[(i + 1) % m]];
            double det = sgn * ((f.barycenter - K.barycenter)
                                    .cross(a - K.barycenter))
                                   .dot(b - K.barycenter);
            if (det == 0.0) continue;
            QuadRule tet = tet_rule(K.barycenter, f.barycenter, a, b, deg);
            double flip = det > 0 ? 1.0 : -1.0;
            for (auto& qp : tet) qp.w *= flip;
            rule.insert(rule.end(), tet.begin(), tet.end());
        }
    }
    return rule;
}

}  // namespace vemgc

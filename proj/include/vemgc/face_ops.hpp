#pragma once

// Per-face projector machinery, independent of the adjacent cells.
//
// Scalar trace space on a face (order 1): vertex values with piecewise
// linear edge traces, enhanced so that degree-1 and degree-2 moments agree
// with the H1-seminorm projector; the degree-0 moment is either a raw DOF
// (normal components) or given by the projector itself (tangential ones).
//
// Tangential trace space: constant tangential edge components plus the
// scalar rotor known at vertices; the extra interior moment against the
// in-plane position field is fixed to zero.

#include "mesh.hpp"
#include "monomial.hpp"
#include "quadrature.hpp"

#include <Eigen/Dense>

#include <vector>

namespace vemgc {

struct FaceOps {
    int nvf = 0;  // face vertices = face edges
    Eigen::Matrix<double, 6, 6> M2;   // face monomial mass matrix
    Eigen::MatrixXd edge_mono;        // nvf x 6, integrals of monomials per loop edge
    Eigen::MatrixXd Pgrad;            // 3 x nvf: H1 projector coeffs from vertex values
    Eigen::MatrixXd Pi0n;             // 6 x (nvf+1): L2 proj (deg 2) of normal component
    Eigen::MatrixXd Pi01n;            // 3 x (nvf+1): L2 proj (deg 1) of normal component
    Eigen::MatrixXd Pitau;            // 6 x (2*nvf): L2 proj of tangential trace;
                                      // inputs [rotor vertex values; edge tangential means],
                                      // coeffs ordered [u:1,s,t, v:1,s,t]
};

inline FaceOps build_face_ops(const Mesh& mesh, int fi, int quad_deg = 4) {
    const Face& f = mesh.faces[fi];
    FaceOps ops;
    const int n = static_cast<int>(f.verts.size());
    ops.nvf = n;
    const double h = f.diameter;

    // vertex positions in the face frame
    std::vector<Vec2> uv(n);
    for (int i = 0; i < n; ++i) uv[i] = mesh.face_local(fi, mesh.vertices[f.verts[i]]);

    // monomial mass matrix
    ops.M2.setZero();
    for (const QuadPoint& qp : face_rule(mesh, fi, quad_deg)) {
        Vec6 m = face_monomials(f, mesh.face_local(fi, qp.x));
        ops.M2 += qp.w * m * m.transpose();
    }

    // per-edge monomial integrals (loop edge i joins uv[i], uv[i+1])
    ops.edge_mono.setZero(n, 6);
    for (int i = 0; i < n; ++i) {
        const Edge& e = mesh.edges[f.edges[i]];
        for (const QuadPoint& qp :
             edge_rule(mesh.vertices[e.v0], mesh.vertices[e.v1], quad_deg)) {
            Vec6 m = face_monomials(f, mesh.face_local(fi, qp.x));
            ops.edge_mono.row(i) += qp.w * m.transpose();
        }
    }

    // --- H1 projector from vertex values ---
    // gradient equations for the two linear monomials, then the boundary
    // mean fixes the constant
    Eigen::MatrixXd rhs_grad = Eigen::MatrixXd::Zero(2, n);  // rows: m1, m2
    Eigen::RowVectorXd bnd_mean = Eigen::RowVectorXd::Zero(n);
    double bnd_len = 0.0;
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        Vec2 d = uv[j] - uv[i];
        double len = d.norm();
        d /= len;
        Vec2 nrm(d.y(), -d.x());  // outward in-plane normal of the CCW loop
        // trace is linear on the edge, so the edge integral is the trapezoid
        rhs_grad(0, i) += 0.5 * len * nrm.x() / h;
        rhs_grad(0, j) += 0.5 * len * nrm.x() / h;
        rhs_grad(1, i) += 0.5 * len * nrm.y() / h;
        rhs_grad(1, j) += 0.5 * len * nrm.y() / h;
        bnd_mean(i) += 0.5 * len;
        bnd_mean(j) += 0.5 * len;
        bnd_len += len;
    }
    ops.Pgrad.setZero(3, n);
    const double g = f.area / (h * h);  // (grad m_a, grad m_b) = g * delta_ab
    ops.Pgrad.row(1) = rhs_grad.row(0) / g;
    ops.Pgrad.row(2) = rhs_grad.row(1) / g;
    // boundary means of the linear monomials
    double bm1 = ops.edge_mono.col(1).sum() / bnd_len;
    double bm2 = ops.edge_mono.col(2).sum() / bnd_len;
    ops.Pgrad.row(0) =
        bnd_mean / bnd_len - bm1 * ops.Pgrad.row(1) - bm2 * ops.Pgrad.row(2);

    // --- L2 projectors of the normal component ---
    // moments: degree 0 raw, degrees 1..2 through the H1 projector
    Eigen::MatrixXd mom = Eigen::MatrixXd::Zero(6, n + 1);
    mom(0, n) = 1.0;
    mom.block(1, 0, 5, n) = ops.M2.block(1, 0, 5, 3) * ops.Pgrad;
    ops.Pi0n = ops.M2.ldlt().solve(mom);
    ops.Pi01n = ops.M2.topLeftCorner<3, 3>().ldlt().solve(mom.topRows(3));

    // --- L2 projector of the tangential trace ---
    // test fields: perp-gradients of {s,t,s^2,st,t^2} and the position
    // field (u,v); perp-grad q = (-dq/dv, dq/du)
    Eigen::Matrix<double, 6, 6> B;  // standard coeffs of the test fields
    B.setZero();
    const double ih = 1.0 / h;
    B.col(0) << 0, 0, 0, ih, 0, 0;        // perp grad s
    B.col(1) << -ih, 0, 0, 0, 0, 0;       // perp grad t
    B.col(2) << 0, 0, 0, 0, 2 * ih, 0;    // perp grad s^2
    B.col(3) << 0, -ih, 0, 0, 0, ih;      // perp grad st
    B.col(4) << 0, 0, -2 * ih, 0, 0, 0;   // perp grad t^2
    B.col(5) << 0, h, 0, 0, 0, h;         // (u, v) = h (s, t)

    Eigen::Matrix<double, 6, 6> Gstd = Eigen::Matrix<double, 6, 6>::Zero();
    Gstd.topLeftCorner<3, 3>() = ops.M2.topLeftCorner<3, 3>();
    Gstd.bottomRightCorner<3, 3>() = ops.M2.topLeftCorner<3, 3>();

    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(6, 2 * n);
    for (int j = 0; j < 5; ++j) {
        // against perp grad m_{j+1}:
        //   integral v . perp-grad q = loop integral (v.t) q - (rot v, q)
        R.block(j, 0, 1, n) = -(ops.M2.block(j + 1, 0, 1, 3) * ops.Pgrad);
        for (int i = 0; i < n; ++i)
            R(j, n + i) = f.edge_sign[i] * ops.edge_mono(i, j + 1);
    }
    // against (u,v): the moment is zero by construction of the space
    ops.Pitau = (B.transpose() * Gstd).fullPivLu().solve(R);

    return ops;
}

}  // namespace vemgc

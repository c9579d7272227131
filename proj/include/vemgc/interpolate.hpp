#pragma once

// DOF interpolation of analytic fields (full DOF vectors, no BC applied).

#include "dof_layout.hpp"
#include "mesh.hpp"
#include "quadrature.hpp"

#include <Eigen/Dense>

#include <functional>

namespace vemgc {

using VecField = std::function<Vec3(const Vec3&)>;
using ScalField = std::function<double(const Vec3&)>;

inline Eigen::VectorXd interpolate_U(const Mesh& mesh, const ScalField& u) {
    Eigen::VectorXd dofs(mesh.n_vertices());
    for (int v = 0; v < mesh.n_vertices(); ++v) dofs(v) = u(mesh.vertices[v]);
    return dofs;
}

// V DOFs of a field v: rotor values are curl v at vertices, edge values are
// mean tangential components of v.  The default exactness 19 corresponds to
// 10-point Gauss rules per edge, enough to push the quadrature error of
// smooth trigonometric fields below 1e-12.
inline Eigen::VectorXd interpolate_V(const Mesh& mesh, const VecField& v,
                                     const VecField& curl_v, int quad_deg = 19) {
    const int NV = mesh.n_vertices();
    Eigen::VectorXd dofs(3 * NV + mesh.n_edges());
    for (int i = 0; i < NV; ++i) dofs.segment<3>(3 * i) = curl_v(mesh.vertices[i]);
    for (int e = 0; e < mesh.n_edges(); ++e) {
        const Edge& ed = mesh.edges[e];
        double s = 0.0;
        for (const QuadPoint& qp :
             edge_rule(mesh.vertices[ed.v0], mesh.vertices[ed.v1], quad_deg))
            s += qp.w * v(qp.x).dot(ed.tangent);
        dofs(3 * NV + e) = s / ed.length;
    }
    return dofs;
}

// W DOFs of a field w: vertex values and raw normal face moments.
inline Eigen::VectorXd interpolate_W(const Mesh& mesh, const VecField& w,
                                     int quad_deg = 19) {
    const int NV = mesh.n_vertices();
    Eigen::VectorXd dofs(3 * NV + mesh.n_faces());
    for (int i = 0; i < NV; ++i) dofs.segment<3>(3 * i) = w(mesh.vertices[i]);
    for (int f = 0; f < mesh.n_faces(); ++f) {
        double s = 0.0;
        for (const QuadPoint& qp : face_rule(mesh, f, quad_deg))
            s += qp.w * w(qp.x).dot(mesh.faces[f].normal);
        dofs(3 * NV + f) = s;
    }
    return dofs;
}

}  // namespace vemgc

#pragma once

// Structural verification: exactness of the discrete complex, kernel
// dimension of the discrete curl, commutativity of interpolation with curl,
// and the divergence-free property of solved fields.

#include "assembly.hpp"
#include "interpolate.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace vemgc {

inline double max_abs(const SpMat& A) {
    double m = 0.0;
    for (int k = 0; k < A.outerSize(); ++k)
        for (SpMat::InnerIterator it(A, k); it; ++it)
            m = std::max(m, std::abs(it.value()));
    return m;
}

// discrete curl on all DOFs (no boundary elimination)
inline SpMat structural_curl_full(const Mesh& mesh) {
    const int NV = mesh.n_vertices();
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < 3 * NV; ++i) trip.emplace_back(i, i, 1.0);
    for (int f = 0; f < mesh.n_faces(); ++f) {
        const Face& face = mesh.faces[f];
        for (size_t i = 0; i < face.edges.size(); ++i)
            trip.emplace_back(3 * NV + f, 3 * NV + face.edges[i],
                              face.edge_sign[i] * mesh.edges[face.edges[i]].length);
    }
    SpMat E(3 * NV + mesh.n_faces(), 3 * NV + mesh.n_edges());
    E.setFromTriplets(trip.begin(), trip.end());
    return E;
}

struct StructureReport {
    double max_EG = 0.0;     // max |E G| entry
    double scale_EG = 1.0;
    double max_DE = 0.0;     // max |D E| entry
    double scale_DE = 1.0;
    int ker_E = -1;          // kernel dimension of the free discrete curl
    int free_U = -1;         // expected kernel dimension
    bool pass = false;
};

inline StructureReport verify_structure(const Mesh& mesh) {
    DofLayout L = build_dof_layout(mesh);
    SpMat E = structural_curl(mesh, L);
    SpMat G = structural_grad(mesh, L);
    SpMat D = structural_div(mesh, L);

    StructureReport rep;
    rep.scale_EG = std::max(1.0, max_abs(E) * max_abs(G));
    rep.scale_DE = std::max(1.0, max_abs(D) * max_abs(E));
    rep.max_EG = max_abs(SpMat(E * G));
    rep.max_DE = max_abs(SpMat(D * E));

    if (L.nfreeV() == 0) {
        rep.ker_E = 0;
    } else {
        Eigen::MatrixXd Ed(E);
        rep.ker_E =
            L.nfreeV() - static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(Ed).rank());
    }
    rep.free_U = L.nfreeU();
    rep.pass = rep.max_EG <= 1e-13 * rep.scale_EG && rep.max_DE <= 1e-13 * rep.scale_DE &&
               rep.ker_E == rep.free_U;
    return rep;
}

// max DOF discrepancy between curl-after-interpolation and
// interpolation-after-curl for an analytic field
inline double commutativity_gap(const Mesh& mesh, const VecField& v,
                                const VecField& curl_v, int quad_deg = 19) {
    SpMat E = structural_curl_full(mesh);
    Vecx lhs = E * interpolate_V(mesh, v, curl_v, quad_deg);
    Vecx rhs = interpolate_W(mesh, curl_v, quad_deg);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

// max |D E psi| relative scale for a solved free potential vector
inline double divergence_residual(const Mesh& mesh, const DofLayout& L,
                                  const Vecx& psi_free, double* scale_out = nullptr) {
    SpMat E = structural_curl(mesh, L);
    SpMat D = structural_div(mesh, L);
    Vecx w = E * psi_free;
    double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
    if (scale_out) *scale_out = scale;
    Vecx r = D * w;
    return r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace vemgc

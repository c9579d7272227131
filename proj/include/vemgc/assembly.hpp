#pragma once

// Global assembly: stiffness/mass on the free potential DOFs, the gauge
// constraint matrix, its diagonal scaling, and the Schur-complement /
// saddle-point systems.
//
// Local matrices are computed per cell (optionally in worker threads) and
// scattered sequentially in cell order, so results are bit-reproducible for
// a fixed thread-independent local stage.

#include "cell_ops.hpp"
#include "dof_layout.hpp"
#include "interpolate.hpp"
#include "face_ops.hpp"
#include "mesh.hpp"

#include <Eigen/Sparse>

#include <thread>
#include <vector>

namespace vemgc {

using SpMat = Eigen::SparseMatrix<double>;

// trimmed per-cell record kept for error evaluation and output
struct CellLocal {
    std::vector<int> vdofs;  // full global V-dof indices, local ordering
    Mat A;                   // nu E^T A_W E
    Mat B;                   // b_h
    Vecx F;
    Mat VelPi;               // 12 x ndofV: P1^3 coeffs of the discrete velocity
};

struct GlobalSystem {
    DofLayout layout;
    std::vector<CellLocal> cells;

    SpMat A;      // free V x free V, nu * curl-stiffness
    SpMat B;      // free V x free V, discrete L2 form
    Vecx F;       // free V

    SpMat Ggrad;  // free V x free U, discrete gradient
    SpMat Blam;   // free U x free V, gauge constraint  G^T B
    Vecx Mdiag;   // free U, diag(G^T B G)
    SpMat S;      // Schur complement  A + Blam^T Mdiag^-1 Blam
};

struct AssemblyOptions {
    double nu = 1.0;
    int quad_deg = 4;
    int load_deg = 10;
    int threads = 1;
    const VecField* load = nullptr;
};

inline std::vector<FaceOps> build_all_face_ops(const Mesh& mesh, int quad_deg = 4,
                                               int threads = 1) {
    std::vector<FaceOps> ops(mesh.n_faces());
    auto work = [&](int lo, int hi) {
        for (int f = lo; f < hi; ++f) ops[f] = build_face_ops(mesh, f, quad_deg);
    };
    if (threads <= 1) {
        work(0, mesh.n_faces());
    } else {
        std::vector<std::thread> pool;
        int n = mesh.n_faces(), chunk = (n + threads - 1) / threads;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(work, std::min(t * chunk, n), std::min((t + 1) * chunk, n));
        for (auto& th : pool) th.join();
    }
    return ops;
}

// structural (metric-scaled incidence) matrices on the free DOFs
inline SpMat structural_grad(const Mesh& mesh, const DofLayout& L) {
    std::vector<Eigen::Triplet<double>> trip;
    for (int e = 0; e < L.NE; ++e) {
        int row = L.mapV[3 * L.NV + e];
        if (row < 0) continue;
        const Edge& ed = mesh.edges[e];
        int c1 = L.mapU[ed.v1], c0 = L.mapU[ed.v0];
        if (c1 >= 0) trip.emplace_back(row, c1, 1.0 / ed.length);
        if (c0 >= 0) trip.emplace_back(row, c0, -1.0 / ed.length);
    }
    SpMat G(L.nfreeV(), L.nfreeU());
    G.setFromTriplets(trip.begin(), trip.end());
    return G;
}

inline SpMat structural_curl(const Mesh& mesh, const DofLayout& L) {
    std::vector<Eigen::Triplet<double>> trip;
    for (int v = 0; v < L.NV; ++v)
        for (int c = 0; c < 3; ++c) {
            int row = L.mapW[3 * v + c];
            int col = L.mapV[3 * v + c];
            if (row >= 0 && col >= 0) trip.emplace_back(row, col, 1.0);
        }
    for (int f = 0; f < L.NF; ++f) {
        int row = L.mapW[3 * L.NV + f];
        if (row < 0) continue;
        const Face& face = mesh.faces[f];
        for (size_t i = 0; i < face.edges.size(); ++i) {
            int col = L.mapV[3 * L.NV + face.edges[i]];
            if (col >= 0)
                trip.emplace_back(row, col,
                                  face.edge_sign[i] * mesh.edges[face.edges[i]].length);
        }
    }
    SpMat E(L.nfreeW(), L.nfreeV());
    E.setFromTriplets(trip.begin(), trip.end());
    return E;
}

inline SpMat structural_div(const Mesh& mesh, const DofLayout& L) {
    std::vector<Eigen::Triplet<double>> trip;
    for (int c = 0; c < L.NC; ++c) {
        const Cell& K = mesh.cells[c];
        for (size_t j = 0; j < K.faces.size(); ++j) {
            int col = L.mapW[3 * L.NV + K.faces[j]];
            if (col >= 0) trip.emplace_back(c, col, double(K.face_sign[j]));
        }
    }
    SpMat D(L.NC, L.nfreeW());
    D.setFromTriplets(trip.begin(), trip.end());
    return D;
}

inline GlobalSystem assemble(const Mesh& mesh, const AssemblyOptions& opt) {
    GlobalSystem sys;
    sys.layout = build_dof_layout(mesh);
    const DofLayout& L = sys.layout;

    std::vector<FaceOps> fops = build_all_face_ops(mesh, opt.quad_deg, opt.threads);

    sys.cells.resize(mesh.n_cells());
    auto work = [&](int lo, int hi) {
        for (int c = lo; c < hi; ++c) {
            CellOps ops = build_cell_ops(mesh, c, fops, opt.nu, opt.quad_deg,
                                         opt.load_deg, opt.load);
            CellLocal& loc = sys.cells[c];
            loc.vdofs = cell_vdofs(mesh, c);
            loc.A = std::move(ops.A_V);
            loc.B = std::move(ops.B_V);
            loc.F = std::move(ops.F_V);
            loc.VelPi = ops.Wpi01 * ops.E;
        }
    };
    if (opt.threads <= 1) {
        work(0, mesh.n_cells());
    } else {
        std::vector<std::thread> pool;
        int n = mesh.n_cells(), chunk = (n + opt.threads - 1) / opt.threads;
        for (int t = 0; t < opt.threads; ++t)
            pool.emplace_back(work, std::min(t * chunk, n), std::min((t + 1) * chunk, n));
        for (auto& th : pool) th.join();
    }

    std::vector<Eigen::Triplet<double>> ta, tb;
    sys.F = Vecx::Zero(L.nfreeV());
    for (const CellLocal& loc : sys.cells) {
        const int nd = static_cast<int>(loc.vdofs.size());
        for (int i = 0; i < nd; ++i) {
            int gi = L.mapV[loc.vdofs[i]];
            if (gi < 0) continue;
            sys.F(gi) += loc.F(i);
            for (int j = 0; j < nd; ++j) {
                int gj = L.mapV[loc.vdofs[j]];
                if (gj < 0) continue;
                ta.emplace_back(gi, gj, loc.A(i, j));
                tb.emplace_back(gi, gj, loc.B(i, j));
            }
        }
    }
    sys.A.resize(L.nfreeV(), L.nfreeV());
    sys.A.setFromTriplets(ta.begin(), ta.end());
    sys.B.resize(L.nfreeV(), L.nfreeV());
    sys.B.setFromTriplets(tb.begin(), tb.end());

    sys.Ggrad = structural_grad(mesh, L);
    sys.Blam = SpMat(sys.Ggrad.transpose()) * sys.B;
    SpMat GtBG = sys.Blam * sys.Ggrad;
    sys.Mdiag = GtBG.diagonal();

    SpMat Minv(L.nfreeU(), L.nfreeU());
    {
        std::vector<Eigen::Triplet<double>> tm;
        for (int i = 0; i < L.nfreeU(); ++i) tm.emplace_back(i, i, 1.0 / sys.Mdiag(i));
        Minv.setFromTriplets(tm.begin(), tm.end());
    }
    sys.S = sys.A + SpMat(sys.Blam.transpose()) * Minv * sys.Blam;
    sys.S.makeCompressed();
    return sys;
}

// saddle-point form [[A, Blam^T], [Blam, -Mdiag]]
inline SpMat saddle_matrix(const GlobalSystem& sys) {
    const int nV = sys.A.rows(), nU = static_cast<int>(sys.Mdiag.size());
    std::vector<Eigen::Triplet<double>> trip;
    for (int k = 0; k < sys.A.outerSize(); ++k)
        for (SpMat::InnerIterator it(sys.A, k); it; ++it)
            trip.emplace_back(it.row(), it.col(), it.value());
    for (int k = 0; k < sys.Blam.outerSize(); ++k)
        for (SpMat::InnerIterator it(sys.Blam, k); it; ++it) {
            trip.emplace_back(nV + it.row(), it.col(), it.value());
            trip.emplace_back(it.col(), nV + it.row(), it.value());
        }
    for (int i = 0; i < nU; ++i) trip.emplace_back(nV + i, nV + i, -sys.Mdiag(i));
    SpMat M(nV + nU, nV + nU);
    M.setFromTriplets(trip.begin(), trip.end());
    return M;
}

}  // namespace vemgc

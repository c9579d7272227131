#pragma once

// Legacy VTK export of the polyhedral mesh with the piecewise-constant
// discrete velocity (projected curl of the potential) as cell data.

#include "assembly.hpp"
#include "mesh.hpp"

#include <Eigen/Sparse>

#include <fstream>
#include <ostream>

namespace vemgc {

inline void write_vtk(const Mesh& mesh, const GlobalSystem& sys, const Vecx& psi_full,
                      std::ostream& out) {
    out << "# vtk DataFile Version 3.0\n";
    out << "discrete velocity field\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out.precision(12);
    out << "POINTS " << mesh.n_vertices() << " double\n";
    for (const Vec3& v : mesh.vertices)
        out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';

    // VTK_POLYHEDRON layout: nTotalIds, nFaces, (nPts, ids...) per face
    std::size_t list_len = 0;
    for (const Cell& K : mesh.cells) {
        std::size_t n = 2;  // the two counters
        for (int f : K.faces) n += 1 + mesh.faces[f].verts.size();
        list_len += n;
    }
    out << "CELLS " << mesh.n_cells() << ' ' << list_len << '\n';
    for (const Cell& K : mesh.cells) {
        std::size_t n = 1;
        for (int f : K.faces) n += 1 + mesh.faces[f].verts.size();
        out << n << ' ' << K.faces.size();
        for (int f : K.faces) {
            out << ' ' << mesh.faces[f].verts.size();
            for (int v : mesh.faces[f].verts) out << ' ' << v;
        }
        out << '\n';
    }
    out << "CELL_TYPES " << mesh.n_cells() << '\n';
    for (int c = 0; c < mesh.n_cells(); ++c) out << 42 << '\n';

    out << "CELL_DATA " << mesh.n_cells() << '\n';
    out << "VECTORS velocity double\n";
    for (const CellLocal& loc : sys.cells) {
        Vecx e(loc.vdofs.size());
        for (size_t i = 0; i < loc.vdofs.size(); ++i) e(i) = psi_full(loc.vdofs[i]);
        Vecx coeff = loc.VelPi * e;  // P1^3 coeffs; constant terms = barycenter value
        out << coeff(0) << ' ' << coeff(4) << ' ' << coeff(8) << '\n';
    }
}

// MatrixMarket coordinate format
inline void write_matrix_market(const SpMat& A, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << A.rows() << ' ' << A.cols() << ' ' << A.nonZeros() << '\n';
    out.precision(16);
    for (int k = 0; k < A.outerSize(); ++k)
        for (SpMat::InnerIterator it(A, k); it; ++it)
            out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
}

}  // namespace vemgc

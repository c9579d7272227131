#pragma once

// Global DOF numbering and homogeneous boundary elimination.
//
//   U: one value per vertex
//   V: 3 rotor slots per vertex, then one mean tangential value per edge
//   W: 3 slots per vertex, then one raw normal moment per face
//   Q: one raw moment per cell
//
// Boundary DOFs (eliminated): U vertex values, V rotor slots at boundary
// vertices and boundary edge slots, W vertex slots and boundary face slots.

#include "mesh.hpp"

#include <vector>

namespace vemgc {

struct DofLayout {
    int NV = 0, NE = 0, NF = 0, NC = 0;
    int ndofU = 0, ndofV = 0, ndofW = 0, ndofQ = 0;

    std::vector<int> mapU, mapV, mapW;    // full index -> free index or -1
    std::vector<int> listU, listV, listW; // free index -> full index

    int nfreeU() const { return static_cast<int>(listU.size()); }
    int nfreeV() const { return static_cast<int>(listV.size()); }
    int nfreeW() const { return static_cast<int>(listW.size()); }

    // total DOF count in the common reporting convention
    int ndof_report() const { return 4 * NV + NE + NF; }
};

inline DofLayout build_dof_layout(const Mesh& mesh) {
    DofLayout L;
    L.NV = mesh.n_vertices();
    L.NE = mesh.n_edges();
    L.NF = mesh.n_faces();
    L.NC = mesh.n_cells();
    L.ndofU = L.NV;
    L.ndofV = 3 * L.NV + L.NE;
    L.ndofW = 3 * L.NV + L.NF;
    L.ndofQ = L.NC;

    auto number = [](std::vector<int>& map, std::vector<int>& list) {
        for (size_t i = 0; i < map.size(); ++i)
            if (map[i] == 0) {
                map[i] = static_cast<int>(list.size());
                list.push_back(static_cast<int>(i));
            }
    };

    L.mapU.assign(L.ndofU, 0);
    for (int v = 0; v < L.NV; ++v)
        if (mesh.vertex_boundary[v]) L.mapU[v] = -1;
    number(L.mapU, L.listU);

    L.mapV.assign(L.ndofV, 0);
    for (int v = 0; v < L.NV; ++v)
        if (mesh.vertex_boundary[v])
            for (int c = 0; c < 3; ++c) L.mapV[3 * v + c] = -1;
    for (int e = 0; e < L.NE; ++e)
        if (mesh.edges[e].boundary) L.mapV[3 * L.NV + e] = -1;
    number(L.mapV, L.listV);

    L.mapW.assign(L.ndofW, 0);
    for (int v = 0; v < L.NV; ++v)
        if (mesh.vertex_boundary[v])
            for (int c = 0; c < 3; ++c) L.mapW[3 * v + c] = -1;
    for (int f = 0; f < L.NF; ++f)
        if (mesh.faces[f].boundary) L.mapW[3 * L.NV + f] = -1;
    number(L.mapW, L.listW);

    return L;
}

// full V-dof indices of a cell, in the local ordering used by the cell ops
inline std::vector<int> cell_vdofs(const Mesh& mesh, int ci) {
    const Cell& K = mesh.cells[ci];
    std::vector<int> dofs;
    dofs.reserve(3 * K.verts.size() + K.edges.size());
    for (int v : K.verts)
        for (int c = 0; c < 3; ++c) dofs.push_back(3 * v + c);
    for (int e : K.edges) dofs.push_back(3 * mesh.n_vertices() + e);
    return dofs;
}

inline std::vector<int> cell_wdofs(const Mesh& mesh, int ci) {
    const Cell& K = mesh.cells[ci];
    std::vector<int> dofs;
    dofs.reserve(3 * K.verts.size() + K.faces.size());
    for (int v : K.verts)
        for (int c = 0; c < 3; ++c) dofs.push_back(3 * v + c);
    for (int f : K.faces) dofs.push_back(3 * mesh.n_vertices() + f);
    return dofs;
}

}  // namespace vemgc

#pragma once

// Shared mesh fixtures for the test suite: single affinely-mapped hexahedral
// and prism cells (affine images keep faces planar) and a two-cell mesh
// obtained by reflecting a hexahedron through one of its faces.

#include "vemgc/mesh.hpp"

#include <random>
#include <vector>

namespace fixtures {

using vemgc::Mesh;
using vemgc::Vec3;

inline Eigen::Matrix3d random_affine(std::mt19937& rng, double amp = 0.3) {
    std::uniform_real_distribution<double> U(-amp, amp);
    Eigen::Matrix3d A = Eigen::Matrix3d::Identity();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A(i, j) += U(rng);
    if (A.determinant() < 0.1) return random_affine(rng, amp * 0.5);
    return A;
}

// unit cube mapped by x -> A x + shift; vertex k has coordinates from the
// bits of k (x = bit0, y = bit1, z = bit2)
inline Mesh hex_cell(const Eigen::Matrix3d& A, const Vec3& shift = Vec3::Zero()) {
    std::vector<Vec3> vs;
    for (int k = 0; k < 8; ++k)
        vs.push_back(A * Vec3(k & 1, (k >> 1) & 1, (k >> 2) & 1) + shift);
    std::vector<std::vector<int>> faces = {{0, 1, 3, 2}, {4, 6, 7, 5}, {0, 4, 5, 1},
                                           {2, 3, 7, 6}, {0, 2, 6, 4}, {1, 5, 7, 3}};
    return vemgc::build_mesh(vs, faces, {{0, 1, 2, 3, 4, 5}});
}

// triangular prism: triangle (0,0,0)-(1,0,0)-(0,1,0) extruded to z=1, mapped
inline Mesh prism_cell(const Eigen::Matrix3d& A, const Vec3& shift = Vec3::Zero()) {
    std::vector<Vec3> base = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0},
                              {0, 0, 1}, {1, 0, 1}, {0, 1, 1}};
    std::vector<Vec3> vs;
    for (const Vec3& p : base) vs.push_back(A * p + shift);
    std::vector<std::vector<int>> faces = {
        {0, 2, 1}, {3, 4, 5}, {0, 1, 4, 3}, {1, 2, 5, 4}, {2, 0, 3, 5}};
    return vemgc::build_mesh(vs, faces, {{0, 1, 2, 3, 4}});
}

inline Mesh random_cell(std::mt19937& rng) {
    Eigen::Matrix3d A = random_affine(rng);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Vec3 shift(U(rng), U(rng), U(rng));
    if (rng() & 1) return hex_cell(A, shift);
    return prism_cell(A, shift);
}

// two hexahedra sharing the face x=1 (second cell is the reflection of the
// first through that plane)
inline Mesh two_hex() {
    std::vector<Vec3> vs;
    for (int k = 0; k < 12; ++k) {
        double x = k % 3, y = (k / 3) % 2, z = k / 6;
        vs.push_back(Vec3(x, 0.9 * y + 0.05 * x, z));
    }
    auto quad = [](int a, int b, int c, int d) { return std::vector<int>{a, b, c, d}; };
    std::vector<std::vector<int>> faces = {
        quad(0, 1, 4, 3),    // z=0 left
        quad(1, 2, 5, 4),    // z=0 right
        quad(6, 9, 10, 7),   // z=1 left
        quad(7, 10, 11, 8),  // z=1 right
        quad(0, 6, 7, 1),    // y=0 left
        quad(1, 7, 8, 2),    // y=0 right
        quad(3, 4, 10, 9),   // y=1 left
        quad(4, 5, 11, 10),  // y=1 right
        quad(0, 3, 9, 6),    // x=0
        quad(2, 8, 11, 5),   // x=2
        quad(1, 4, 10, 7)};  // shared x=1
    return vemgc::build_mesh(vs, faces, {{0, 2, 4, 6, 8, 10}, {1, 3, 5, 7, 9, 10}});
}

}  // namespace fixtures

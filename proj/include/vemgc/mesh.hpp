#pragma once

// Immutable conforming polyhedral mesh with cached measures, frames and
// orientation signs.  Faces store one global normal; cells store signs
// sigma_{K,f} so that sigma*n_f is outward.  Edge tangents run from the
// lower-index endpoint to the higher-index endpoint.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vemgc {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

class MeshError : public std::runtime_error {
public:
    explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

struct Edge {
    int v0 = -1;             // v0 < v1, tangent points v0 -> v1
    int v1 = -1;
    double length = 0.0;
    Vec3 tangent = Vec3::Zero();
    bool boundary = false;
};

struct Face {
    std::vector<int> verts;      // loop, counter-clockwise w.r.t. normal
    std::vector<int> edges;      // edges[i] joins verts[i], verts[i+1]
    std::vector<int> edge_sign;  // +1 if loop direction matches global tangent
    Vec3 normal = Vec3::Zero();
    Vec3 barycenter = Vec3::Zero();
    Vec3 frame_u = Vec3::Zero();  // orthonormal in-plane frame, n = u x v
    Vec3 frame_v = Vec3::Zero();
    double area = 0.0;
    double diameter = 0.0;
    bool boundary = false;
};

struct Cell {
    std::vector<int> faces;
    std::vector<int> face_sign;  // sigma_{K,f}
    std::vector<int> verts;      // sorted unique global vertex ids
    std::vector<int> edges;      // sorted unique global edge ids
    Vec3 barycenter = Vec3::Zero();
    double volume = 0.0;
    double diameter = 0.0;
};

struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<Edge> edges;
    std::vector<Face> faces;
    std::vector<Cell> cells;
    std::vector<bool> vertex_boundary;

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_edges() const { return static_cast<int>(edges.size()); }
    int n_faces() const { return static_cast<int>(faces.size()); }
    int n_cells() const { return static_cast<int>(cells.size()); }

    double max_cell_diameter() const {
        double h = 0.0;
        for (const auto& c : cells) h = std::max(h, c.diameter);
        return h;
    }

    // 2D coordinates of a point in the face frame, origin at the barycenter.
    Vec2 face_local(int f, const Vec3& x) const {
        const Face& face = faces[f];
        Vec3 d = x - face.barycenter;
        return Vec2(d.dot(face.frame_u), d.dot(face.frame_v));
    }
};

namespace detail {

inline Vec3 newell_normal(const std::vector<Vec3>& pts) {
    Vec3 n = Vec3::Zero();
    const int m = static_cast<int>(pts.size());
    for (int i = 0; i < m; ++i) {
        const Vec3& a = pts[i];
        const Vec3& b = pts[(i + 1) % m];
        n.x() += (a.y() - b.y()) * (a.z() + b.z());
        n.y() += (a.z() - b.z()) * (a.x() + b.x());
        n.z() += (a.x() - b.x()) * (a.y() + b.y());
    }
    return n;
}

inline double polygon_diameter(const std::vector<Vec3>& pts) {
    double d = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            d = std::max(d, (pts[i] - pts[j]).norm());
    return d;
}

}  // namespace detail

// Builds a validated mesh from raw connectivity.  Face vertex loops define
// the stored normal (Newell); cell face lists are unsigned, signs are
// derived by an outwardness test against the cell centroid.
inline Mesh build_mesh(std::vector<Vec3> vertices,
                       const std::vector<std::vector<int>>& face_verts,
                       const std::vector<std::vector<int>>& cell_faces) {
    Mesh mesh;
    mesh.vertices = std::move(vertices);
    const int nv = mesh.n_vertices();

    // --- faces and edge extraction ---
    std::map<std::pair<int, int>, int> edge_ids;
    mesh.faces.resize(face_verts.size());
    for (size_t fi = 0; fi < face_verts.size(); ++fi) {
        Face& f = mesh.faces[fi];
        f.verts = face_verts[fi];
        if (f.verts.size() < 3)
            throw MeshError("face " + std::to_string(fi) + " has fewer than 3 vertices");
        for (int v : f.verts)
            if (v < 0 || v >= nv)
                throw MeshError("face " + std::to_string(fi) + " references missing vertex " +
                                std::to_string(v));
        const int m = static_cast<int>(f.verts.size());
        for (int i = 0; i < m; ++i) {
            int a = f.verts[i], b = f.verts[(i + 1) % m];
            if (a == b) throw MeshError("degenerate edge in face " + std::to_string(fi));
            auto key = std::minmax(a, b);
            auto it = edge_ids.find(key);
            int e;
            if (it == edge_ids.end()) {
                e = static_cast<int>(mesh.edges.size());
                edge_ids.emplace(key, e);
                Edge edge;
                edge.v0 = key.first;
                edge.v1 = key.second;
                mesh.edges.push_back(edge);
            } else {
                e = it->second;
            }
            f.edges.push_back(e);
            f.edge_sign.push_back(a < b ? +1 : -1);
        }
    }

    for (Edge& e : mesh.edges) {
        Vec3 d = mesh.vertices[e.v1] - mesh.vertices[e.v0];
        e.length = d.norm();
        if (e.length <= 0.0) throw MeshError("zero-length edge");
        e.tangent = d / e.length;
    }

    // --- face geometry ---
    for (size_t fi = 0; fi < mesh.faces.size(); ++fi) {
        Face& f = mesh.faces[fi];
        std::vector<Vec3> pts;
        pts.reserve(f.verts.size());
        for (int v : f.verts) pts.push_back(mesh.vertices[v]);

        Vec3 nn = detail::newell_normal(pts);
        double n2 = nn.norm();
        if (n2 <= 0.0) throw MeshError("degenerate face " + std::to_string(fi));
        f.normal = nn / n2;
        f.diameter = detail::polygon_diameter(pts);

        // area and barycenter by fan about the vertex average
        Vec3 c = Vec3::Zero();
        for (const Vec3& p : pts) c += p;
        c /= static_cast<double>(pts.size());
        double area = 0.0;
        Vec3 bary = Vec3::Zero();
        const int m = static_cast<int>(pts.size());
        for (int i = 0; i < m; ++i) {
            const Vec3& a = pts[i];
            const Vec3& b = pts[(i + 1) % m];
            double tri = 0.5 * ((a - c).cross(b - c)).dot(f.normal);
            area += tri;
            bary += tri * (a + b + c) / 3.0;
        }
        if (area <= 0.0)
            throw MeshError("face " + std::to_string(fi) + " has non-positive area");
        f.area = area;
        f.barycenter = bary / area;

        // planarity
        double plane_off = c.dot(f.normal);
        for (const Vec3& p : pts)
            if (std::abs(p.dot(f.normal) - plane_off) > 1e-9 * f.diameter)
                throw MeshError("face " + std::to_string(fi) + " is not planar");

        // in-plane orthonormal frame
        Vec3 u = pts[1] - pts[0];
        u -= u.dot(f.normal) * f.normal;
        f.frame_u = u.normalized();
        f.frame_v = f.normal.cross(f.frame_u);
    }

    // --- cells ---
    std::vector<int> face_use(mesh.faces.size(), 0);
    mesh.cells.resize(cell_faces.size());
    for (size_t ci = 0; ci < cell_faces.size(); ++ci) {
        Cell& K = mesh.cells[ci];
        K.faces = cell_faces[ci];
        if (K.faces.size() < 4)
            throw MeshError("cell " + std::to_string(ci) + " has fewer than 4 faces");
        std::vector<int> vset, eset;
        for (int fj : K.faces) {
            if (fj < 0 || fj >= mesh.n_faces())
                throw MeshError("cell " + std::to_string(ci) + " references missing face");
            ++face_use[fj];
            for (int v : mesh.faces[fj].verts) vset.push_back(v);
            for (int e : mesh.faces[fj].edges) eset.push_back(e);
        }
        std::sort(vset.begin(), vset.end());
        vset.erase(std::unique(vset.begin(), vset.end()), vset.end());
        std::sort(eset.begin(), eset.end());
        eset.erase(std::unique(eset.begin(), eset.end()), eset.end());
        K.verts = std::move(vset);
        K.edges = std::move(eset);

        Vec3 c = Vec3::Zero();
        for (int v : K.verts) c += mesh.vertices[v];
        c /= static_cast<double>(K.verts.size());

        // orientation: sigma*n_f must point away from the cell centroid
        K.face_sign.resize(K.faces.size());
        for (size_t j = 0; j < K.faces.size(); ++j) {
            const Face& f = mesh.faces[K.faces[j]];
            double s = (f.barycenter - c).dot(f.normal);
            if (s == 0.0)
                throw MeshError("cannot orient face of cell " + std::to_string(ci));
            K.face_sign[j] = s > 0.0 ? +1 : -1;
        }

        // volume and barycenter from signed tetrahedra over face fans
        double vol = 0.0;
        Vec3 bary = Vec3::Zero();
        for (size_t j = 0; j < K.faces.size(); ++j) {
            const Face& f = mesh.faces[K.faces[j]];
            const double sgn = K.face_sign[j];
            const int m = static_cast<int>(f.verts.size());
            for (int i = 0; i < m; ++i) {
                Vec3 a = mesh.vertices[f.verts[i]] - c;
                Vec3 b = mesh.vertices[f.verts[(i + 1) % m]] - c;
                Vec3 fc = f.barycenter - c;
                // signed tet (c, b_f, v_i, v_{i+1})
                double tv = sgn * (fc.cross(a)).dot(b) / 6.0;
                vol += tv;
                bary += tv * (c + (c + fc) + (c + a) + (c + b)) / 4.0;
            }
        }
        if (vol <= 0.0)
            throw MeshError("cell " + std::to_string(ci) + " has non-positive volume");
        K.volume = vol;
        K.barycenter = bary / vol;

        double d = 0.0;
        for (size_t i = 0; i < K.verts.size(); ++i)
            for (size_t j = i + 1; j < K.verts.size(); ++j)
                d = std::max(d, (mesh.vertices[K.verts[i]] - mesh.vertices[K.verts[j]]).norm());
        K.diameter = d;
    }

    // --- incidence validation and boundary flags ---
    for (size_t fi = 0; fi < mesh.faces.size(); ++fi) {
        if (face_use[fi] == 0)
            throw MeshError("face " + std::to_string(fi) + " belongs to no cell");
        if (face_use[fi] > 2)
            throw MeshError("non-manifold face " + std::to_string(fi));
        mesh.faces[fi].boundary = (face_use[fi] == 1);
    }
    // interior faces must carry opposite signs in their two cells
    {
        std::vector<int> sign_sum(mesh.faces.size(), 0);
        std::vector<int> sign_cnt(mesh.faces.size(), 0);
        for (const Cell& K : mesh.cells)
            for (size_t j = 0; j < K.faces.size(); ++j) {
                sign_sum[K.faces[j]] += K.face_sign[j];
                ++sign_cnt[K.faces[j]];
            }
        for (size_t fi = 0; fi < mesh.faces.size(); ++fi)
            if (sign_cnt[fi] == 2 && sign_sum[fi] != 0)
                throw MeshError("inconsistent orientation across face " + std::to_string(fi));
    }

    mesh.vertex_boundary.assign(nv, false);
    for (const Face& f : mesh.faces)
        if (f.boundary) {
            for (int v : f.verts) mesh.vertex_boundary[v] = true;
            for (size_t i = 0; i < f.edges.size(); ++i) mesh.edges[f.edges[i]].boundary = true;
        }

    // closed-surface check per cell
    for (size_t ci = 0; ci < mesh.cells.size(); ++ci) {
        const Cell& K = mesh.cells[ci];
        Vec3 s = Vec3::Zero();
        for (size_t j = 0; j < K.faces.size(); ++j)
            s += K.face_sign[j] * mesh.faces[K.faces[j]].area * mesh.faces[K.faces[j]].normal;
        if (s.norm() > 1e-12 * K.diameter * K.diameter)
            throw MeshError("cell " + std::to_string(ci) + " surface is not closed");
    }

    return mesh;
}

// Structured n^3 partition of the unit cube.
inline Mesh build_cube_mesh(int n) {
    if (n < 1) throw MeshError("cube subdivisions must be >= 1");
    const int nv1 = n + 1;
    auto vid = [&](int i, int j, int k) { return (k * nv1 + j) * nv1 + i; };

    std::vector<Vec3> verts(static_cast<size_t>(nv1) * nv1 * nv1);
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i)
                verts[vid(i, j, k)] =
                    Vec3(double(i) / n, double(j) / n, double(k) / n);

    std::vector<std::vector<int>> face_verts;
    std::map<std::array<int, 4>, int> face_ids;
    auto face_of = [&](std::array<int, 4> loop) {
        std::array<int, 4> key = loop;
        std::sort(key.begin(), key.end());
        auto it = face_ids.find(key);
        if (it != face_ids.end()) return it->second;
        int id = static_cast<int>(face_verts.size());
        face_ids.emplace(key, id);
        face_verts.push_back({loop[0], loop[1], loop[2], loop[3]});
        return id;
    };

    std::vector<std::vector<int>> cell_faces;
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                int v000 = vid(i, j, k), v100 = vid(i + 1, j, k);
                int v010 = vid(i, j + 1, k), v110 = vid(i + 1, j + 1, k);
                int v001 = vid(i, j, k + 1), v101 = vid(i + 1, j, k + 1);
                int v011 = vid(i, j + 1, k + 1), v111 = vid(i + 1, j + 1, k + 1);
                std::vector<int> fs;
                fs.push_back(face_of({v000, v010, v110, v100}));  // z-
                fs.push_back(face_of({v001, v101, v111, v011}));  // z+
                fs.push_back(face_of({v000, v100, v101, v001}));  // y-
                fs.push_back(face_of({v010, v011, v111, v110}));  // y+
                fs.push_back(face_of({v000, v001, v011, v010}));  // x-
                fs.push_back(face_of({v100, v110, v111, v101}));  // x+
                cell_faces.push_back(std::move(fs));
            }

    return build_mesh(std::move(verts), face_verts, cell_faces);
}

// Approximate shape-regularity metrics; report-only.
struct RegularityReport {
    double min_edge_ratio = 1.0;       // min |e| / h_K  (A3, exact)
    double min_face_kernel_ratio = 1.0;  // min dist(b_f, edge of f) / h_K  (A2 approx)
    double min_cell_ball_ratio = 1.0;    // min dist(b_K, face plane) / h_K  (A1 approx)
    bool pass = true;
    std::vector<int> failing_edges;
    std::vector<int> failing_faces;
    std::vector<int> failing_cells;
};

inline RegularityReport check_regularity(const Mesh& mesh, double mu) {
    RegularityReport rep;
    for (int ci = 0; ci < mesh.n_cells(); ++ci) {
        const Cell& K = mesh.cells[ci];
        double hK = K.diameter;
        for (int e : K.edges) {
            double r = mesh.edges[e].length / hK;
            rep.min_edge_ratio = std::min(rep.min_edge_ratio, r);
            if (r < mu) { rep.pass = false; rep.failing_edges.push_back(e); }
        }
        for (int fi : K.faces) {
            const Face& f = mesh.faces[fi];
            double inr = f.diameter;
            const int m = static_cast<int>(f.verts.size());
            for (int i = 0; i < m; ++i) {
                Vec3 a = mesh.vertices[f.verts[i]];
                Vec3 b = mesh.vertices[f.verts[(i + 1) % m]];
                Vec3 d = (b - a).normalized();
                Vec3 w = f.barycenter - a;
                inr = std::min(inr, (w - w.dot(d) * d).norm());
            }
            double r = inr / hK;
            rep.min_face_kernel_ratio = std::min(rep.min_face_kernel_ratio, r);
            if (r < mu) { rep.pass = false; rep.failing_faces.push_back(fi); }
            double rb = std::abs((f.barycenter - K.barycenter).dot(f.normal)) / hK;
            rep.min_cell_ball_ratio = std::min(rep.min_cell_ball_ratio, rb);
            if (rb < mu) { rep.pass = false; rep.failing_cells.push_back(ci); }
        }
    }
    std::sort(rep.failing_edges.begin(), rep.failing_edges.end());
    rep.failing_edges.erase(std::unique(rep.failing_edges.begin(), rep.failing_edges.end()),
                            rep.failing_edges.end());
    return rep;
}

}  // namespace vemgc

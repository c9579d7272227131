#pragma once

// Mesh file I/O (simple JSON container) and the "builtin:" pseudo-paths.

#include "mesh.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace vemgc {

inline Mesh load_mesh_json(std::istream& in, const std::string& name = "<stream>") {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw MeshError(name + ": JSON parse error: " + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j.contains("faces") ||
        !j.contains("cells"))
        throw MeshError(name + ": expected object with vertices/faces/cells");
    if (j.value("version", 1) != 1)
        throw MeshError(name + ": unsupported mesh format version");

    std::vector<Vec3> verts;
    for (const auto& v : j["vertices"]) {
        if (!v.is_array() || v.size() != 3)
            throw MeshError(name + ": vertex must be [x,y,z]");
        verts.emplace_back(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
    }
    std::vector<std::vector<int>> face_verts, cell_faces;
    for (const auto& f : j["faces"]) face_verts.push_back(f.get<std::vector<int>>());
    for (const auto& c : j["cells"]) cell_faces.push_back(c.get<std::vector<int>>());
    return build_mesh(std::move(verts), face_verts, cell_faces);
}

inline void save_mesh_json(const Mesh& mesh, std::ostream& out) {
    nlohmann::json j;
    j["version"] = 1;
    auto& jv = j["vertices"] = nlohmann::json::array();
    for (const Vec3& v : mesh.vertices) jv.push_back({v.x(), v.y(), v.z()});
    auto& jf = j["faces"] = nlohmann::json::array();
    for (const Face& f : mesh.faces) jf.push_back(f.verts);
    auto& jc = j["cells"] = nlohmann::json::array();
    for (const Cell& c : mesh.cells) jc.push_back(c.faces);
    out << j.dump(1) << "\n";
}

// Accepts either a file path or "builtin:cube:<n>".
inline Mesh load_mesh(const std::string& spec) {
    const std::string prefix = "builtin:cube:";
    if (spec.rfind(prefix, 0) == 0) {
        int n = 0;
        try {
            n = std::stoi(spec.substr(prefix.size()));
        } catch (...) {
            throw MeshError("bad builtin mesh spec: " + spec);
        }
        return build_cube_mesh(n);
    }
    if (spec.rfind("builtin:", 0) == 0)
        throw MeshError("unknown builtin mesh: " + spec);
    std::ifstream in(spec);
    if (!in) throw MeshError("cannot open mesh file: " + spec);
    return load_mesh_json(in, spec);
}

}  // namespace vemgc

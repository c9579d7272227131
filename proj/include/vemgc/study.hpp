#pragma once

// Single-mesh solve, discrete error norms, convergence studies and their
// CSV/JSON serialization.

#include "assembly.hpp"
#include "interpolate.hpp"
#include "manufactured.hpp"
#include "mesh.hpp"
#include "solvers.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

namespace vemgc {

inline Vecx expand_V(const DofLayout& L, const Vecx& free) {
    Vecx full = Vecx::Zero(L.ndofV);
    for (int i = 0; i < L.nfreeV(); ++i) full(L.listV[i]) = free(i);
    return full;
}

inline Vecx restrict_V(const DofLayout& L, const Vecx& full) {
    Vecx free(L.nfreeV());
    for (int i = 0; i < L.nfreeV(); ++i) free(i) = full(L.listV[i]);
    return free;
}

// cell-accumulated quadratic forms of a full V-dof vector
inline double norm_b(const GlobalSystem& sys, const Vecx& full) {
    double s = 0.0;
    for (const CellLocal& loc : sys.cells) {
        Vecx e(loc.vdofs.size());
        for (size_t i = 0; i < loc.vdofs.size(); ++i) e(i) = full(loc.vdofs[i]);
        s += e.dot(loc.B * e);
    }
    return std::sqrt(std::max(0.0, s));
}

inline double norm_a1(const GlobalSystem& sys, const Vecx& full) {
    double s = 0.0;
    for (const CellLocal& loc : sys.cells) {
        Vecx e(loc.vdofs.size());
        for (size_t i = 0; i < loc.vdofs.size(); ++i) e(i) = full(loc.vdofs[i]);
        s += e.dot(loc.A * e);
    }
    return std::sqrt(std::max(0.0, s));
}

struct SolveOptions {
    std::string solver = "cg";  // "cg" or "direct"
    double tol = 1e-12;
    int maxiter = -1;           // default 10 * ndof
};

struct RunResult {
    std::string mesh_name;
    double h = 0.0;
    int ndof = 0;         // free V + free U unknowns
    int ndof_report = 0;  // 4 N_V + N_E + N_F cross-check convention
    double err_b = 0.0;
    double err_a1 = 0.0;
    double lambda_ratio = 0.0;  // saddle multiplier size relative to psi_h
    int iters = 0;
    double seconds = 0.0;
    Vecx psi_free;  // solution of the reduced system
};

inline RunResult solve_manufactured(const Mesh& mesh, const GlobalSystem& sys,
                                    const SolveOptions& sopt,
                                    bool with_lambda_check = false) {
    RunResult r;
    const DofLayout& L = sys.layout;
    r.h = mesh.max_cell_diameter();
    r.ndof = L.nfreeV() + L.nfreeU();
    r.ndof_report = L.ndof_report();

    auto t0 = std::chrono::steady_clock::now();
    Vecx psi;
    if (sopt.solver == "direct") {
        psi = direct_solve_spd(sys.S, sys.F);
    } else {
        int maxiter = sopt.maxiter > 0 ? sopt.maxiter : 10 * r.ndof;
        psi = Vecx::Zero(L.nfreeV());
        CgResult cg = jacobi_pcg(sys.S, sys.F, psi, sopt.tol, maxiter);
        if (!cg.converged)
            throw std::runtime_error("CG did not converge: relative residual " +
                                     std::to_string(cg.residual));
        r.iters = cg.iters;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.psi_free = psi;

    // errors against the interpolant of the exact potential
    Vecx exact = interpolate_V(
        mesh, [](const Vec3& x) { return exact_psi(x); },
        [](const Vec3& x) { return exact_velocity(x); });
    Vecx err_full = exact - expand_V(L, psi);
    // the interpolant satisfies the homogeneous BC up to roundoff; compare
    // on the free slots only
    for (int i = 0; i < L.ndofV; ++i)
        if (L.mapV[i] < 0) err_full(i) = 0.0;
    r.err_b = norm_b(sys, err_full);
    r.err_a1 = norm_a1(sys, err_full);

    if (with_lambda_check) {
        SpMat Ms = saddle_matrix(sys);
        Vecx rhs = Vecx::Zero(Ms.rows());
        rhs.head(L.nfreeV()) = sys.F;
        Vecx sol = direct_solve_lu(Ms, rhs);
        // the multiplier is a nodal potential; measure it through its
        // discrete gradient in the b_h norm
        Vecx lam = sol.tail(L.nfreeU());
        Vecx glam_free = sys.Ggrad * lam;
        double nlam = norm_b(sys, expand_V(L, glam_free));
        double npsi = norm_b(sys, expand_V(L, psi));
        r.lambda_ratio = npsi > 0 ? nlam / npsi : nlam;
    }
    return r;
}

struct StudyRow {
    RunResult run;
    double rate_b = 0.0;   // 0 marks "no previous mesh"
    double rate_a1 = 0.0;
};

inline std::vector<StudyRow> run_study(const std::vector<std::string>& mesh_specs,
                                       const AssemblyOptions& aopt,
                                       const SolveOptions& sopt,
                                       std::vector<Mesh>* meshes_out = nullptr,
                                       bool with_lambda_check = false);

inline void write_study_csv(const std::vector<StudyRow>& rows, std::ostream& out) {
    out << "mesh,h,ndof,ndof_paper_convention,err_b,rate_b,err_a1,rate_a1,iters,seconds\n";
    out.precision(12);
    for (const StudyRow& s : rows) {
        out << s.run.mesh_name << ',' << s.run.h << ',' << s.run.ndof << ','
            << s.run.ndof_report << ',' << s.run.err_b << ',' << s.rate_b << ','
            << s.run.err_a1 << ',' << s.rate_a1 << ',' << s.run.iters << ','
            << s.run.seconds << '\n';
    }
}

inline void write_study_json(const std::vector<StudyRow>& rows, std::ostream& out) {
    nlohmann::json j = nlohmann::json::array();
    for (const StudyRow& s : rows) {
        j.push_back({{"mesh", s.run.mesh_name},
                     {"h", s.run.h},
                     {"ndof", s.run.ndof},
                     {"ndof_paper_convention", s.run.ndof_report},
                     {"err_b", s.run.err_b},
                     {"rate_b", s.rate_b},
                     {"err_a1", s.run.err_a1},
                     {"rate_a1", s.rate_a1},
                     {"iters", s.run.iters},
                     {"seconds", s.run.seconds}});
    }
    out << j.dump(1) << "\n";
}

}  // namespace vemgc

// out-of-line to keep the mesh loader dependency local
#include "mesh_io.hpp"

namespace vemgc {

inline std::vector<StudyRow> run_study(const std::vector<std::string>& mesh_specs,
                                       const AssemblyOptions& aopt,
                                       const SolveOptions& sopt,
                                       std::vector<Mesh>* meshes_out,
                                       bool with_lambda_check) {
    std::vector<StudyRow> rows;
    VecField load = [](const Vec3& x) { return exact_load(x); };
    AssemblyOptions opt = aopt;
    opt.load = &load;
    for (const std::string& spec : mesh_specs) {
        Mesh mesh = load_mesh(spec);
        GlobalSystem sys = assemble(mesh, opt);
        RunResult run = solve_manufactured(mesh, sys, sopt, with_lambda_check);
        run.mesh_name = spec;
        StudyRow row;
        row.run = std::move(run);
        if (!rows.empty()) {
            const RunResult& prev = rows.back().run;
            double lh = std::log(prev.h / row.run.h);
            row.rate_b = std::log(prev.err_b / row.run.err_b) / lh;
            row.rate_a1 = std::log(prev.err_a1 / row.run.err_a1) / lh;
        }
        if (meshes_out) meshes_out->push_back(std::move(mesh));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace vemgc

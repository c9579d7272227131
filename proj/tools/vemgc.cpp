// Command-line driver: manufactured-solution runs and convergence studies,
// structural verification, and mesh inspection.

#include "vemgc/vemgc.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CommonOpts {
    std::string out;
    std::string solver = "cg";
    double tol = 1e-12;
    int maxiter = -1;
    int quad = 4;
    std::string dump_matrix;
    std::string vtk;
    int threads = 0;  // 0: use env var or 1
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--out", o.out, "output path (.csv or .json)");
    cmd->add_option("--solver", o.solver, "linear solver")
        ->check(CLI::IsMember({"cg", "direct"}));
    cmd->add_option("--tol", o.tol, "CG relative tolerance");
    cmd->add_option("--maxiter", o.maxiter, "CG iteration cap (default 10*ndof)");
    cmd->add_option("--quad", o.quad, "quadrature degree for projector integrals");
    cmd->add_option("--dump-matrix", o.dump_matrix,
                    "write the reduced system matrix (MatrixMarket)");
    cmd->add_option("--vtk", o.vtk, "write mesh + cell velocity (legacy VTK)");
    cmd->add_option("--threads", o.threads, "worker threads for assembly");
}

int effective_threads(int opt) {
    if (opt > 0) return opt;
    if (const char* env = std::getenv("VEMGC_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

bool ends_with(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

void write_rows(const std::vector<vemgc::StudyRow>& rows, const std::string& out) {
    if (out.empty()) return;
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open output file: " + out);
    if (ends_with(out, ".json"))
        vemgc::write_study_json(rows, f);
    else
        vemgc::write_study_csv(rows, f);
}

void print_rows(const std::vector<vemgc::StudyRow>& rows) {
    vemgc::write_study_csv(rows, std::cout);
}

int do_run_or_study(const std::vector<std::string>& specs, const CommonOpts& o) {
    vemgc::AssemblyOptions aopt;
    aopt.quad_deg = o.quad;
    aopt.threads = effective_threads(o.threads);
    vemgc::SolveOptions sopt;
    sopt.solver = o.solver;
    sopt.tol = o.tol;
    sopt.maxiter = o.maxiter;

    std::vector<vemgc::Mesh> meshes;
    std::vector<vemgc::StudyRow> rows = vemgc::run_study(specs, aopt, sopt, &meshes);
    print_rows(rows);
    write_rows(rows, o.out);

    if (!o.dump_matrix.empty() || !o.vtk.empty()) {
        // re-assemble the last mesh to recover its system for the extras
        const vemgc::Mesh& mesh = meshes.back();
        vemgc::VecField load = [](const vemgc::Vec3& x) { return vemgc::exact_load(x); };
        vemgc::AssemblyOptions a2 = aopt;
        a2.load = &load;
        vemgc::GlobalSystem sys = vemgc::assemble(mesh, a2);
        if (!o.dump_matrix.empty()) {
            std::ofstream f(o.dump_matrix);
            if (!f) throw std::runtime_error("cannot open " + o.dump_matrix);
            vemgc::write_matrix_market(sys.S, f);
        }
        if (!o.vtk.empty()) {
            std::ofstream f(o.vtk);
            if (!f) throw std::runtime_error("cannot open " + o.vtk);
            vemgc::Vecx full =
                vemgc::expand_V(sys.layout, rows.back().run.psi_free);
            vemgc::write_vtk(mesh, sys, full, f);
        }
    }
    return 0;
}

int do_verify(const std::string& spec, const CommonOpts& o) {
    vemgc::Mesh mesh = vemgc::load_mesh(spec);
    vemgc::StructureReport rep = vemgc::verify_structure(mesh);
    double gap = vemgc::commutativity_gap(
        mesh, [](const vemgc::Vec3& x) { return vemgc::exact_psi(x); },
        [](const vemgc::Vec3& x) { return vemgc::exact_velocity(x); });
    bool commut_ok = gap <= 1e-10;

    std::cout << "complex exactness: max|E*G| = " << rep.max_EG << " (tol "
              << 1e-13 * rep.scale_EG << "), max|D*E| = " << rep.max_DE << " (tol "
              << 1e-13 * rep.scale_DE << ")\n";
    std::cout << "curl kernel dimension: " << rep.ker_E << " (expected " << rep.free_U
              << ")\n";
    std::cout << "interpolation/curl commutativity gap: " << gap << " (tol 1e-10)\n";

    // divergence-free solution check on the same mesh
    vemgc::VecField load = [](const vemgc::Vec3& x) { return vemgc::exact_load(x); };
    vemgc::AssemblyOptions aopt;
    aopt.quad_deg = o.quad;
    aopt.threads = effective_threads(o.threads);
    aopt.load = &load;
    vemgc::GlobalSystem sys = vemgc::assemble(mesh, aopt);
    vemgc::SolveOptions sopt;
    sopt.solver = o.solver;
    sopt.tol = o.tol;
    sopt.maxiter = o.maxiter;
    vemgc::RunResult run = vemgc::solve_manufactured(mesh, sys, sopt);
    double scale = 1.0;
    double divres = vemgc::divergence_residual(mesh, sys.layout, run.psi_free, &scale);
    bool div_ok = divres <= 1e-13 * scale;
    std::cout << "solution divergence residual: " << divres << " (tol " << 1e-13 * scale
              << ")\n";

    bool pass = rep.pass && commut_ok && div_ok;
    std::cout << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

int do_meshinfo(const std::string& spec) {
    vemgc::Mesh mesh = vemgc::load_mesh(spec);
    vemgc::DofLayout L = vemgc::build_dof_layout(mesh);
    std::cout << "vertices: " << mesh.n_vertices() << "\nedges: " << mesh.n_edges()
              << "\nfaces: " << mesh.n_faces() << "\ncells: " << mesh.n_cells()
              << "\nh: " << mesh.max_cell_diameter() << "\nfree potential dofs: "
              << L.nfreeV() << "\nfree gauge dofs: " << L.nfreeU()
              << "\ntotal (reporting convention): " << L.ndof_report() << "\n";
    vemgc::RegularityReport reg = vemgc::check_regularity(mesh, 0.1);
    std::cout << "min edge/h_K ratio: " << reg.min_edge_ratio
              << "\nmin face inradius/h_K ratio: " << reg.min_face_kernel_ratio
              << "\nmin face-distance/h_K ratio: " << reg.min_cell_ball_ratio
              << "\nshape regularity (mu = 0.1): " << (reg.pass ? "ok" : "degenerate")
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lowest-order polyhedral solver for the vector potential Stokes system"};
    app.require_subcommand(1);

    std::string mesh_spec;
    std::string meshes_arg;
    CommonOpts run_o, study_o, verify_o;

    CLI::App* run = app.add_subcommand("run", "solve on a single mesh");
    run->add_option("--mesh", mesh_spec, "mesh file or builtin:cube:<n>")->required();
    add_common(run, run_o);

    CLI::App* study = app.add_subcommand("study", "convergence study over a mesh sequence");
    study->add_option("--meshes", meshes_arg, "comma-separated mesh list")->required();
    add_common(study, study_o);

    CLI::App* verify = app.add_subcommand("verify", "structural checks on one mesh");
    verify->add_option("--mesh", mesh_spec, "mesh file or builtin:cube:<n>")->required();
    add_common(verify, verify_o);

    CLI::App* info = app.add_subcommand("meshinfo", "print mesh statistics");
    info->add_option("--mesh", mesh_spec, "mesh file or builtin:cube:<n>")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) return do_run_or_study({mesh_spec}, run_o);
        if (study->parsed()) {
            std::vector<std::string> specs;
            std::stringstream ss(meshes_arg);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) specs.push_back(item);
            if (specs.empty()) {
                std::cerr << "error: --meshes list is empty\n";
                return 2;
            }
            return do_run_or_study(specs, study_o);
        }
        if (verify->parsed()) return do_verify(mesh_spec, verify_o);
        if (info->parsed()) return do_meshinfo(mesh_spec);
    } catch (const vemgc::MeshError& e) {
        std::cerr << "mesh error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

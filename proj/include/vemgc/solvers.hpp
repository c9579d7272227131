#pragma once

// Linear solvers: Jacobi-preconditioned CG for the SPD reduced system and
// sparse direct factorizations (Cholesky for SPD, LU for the indefinite
// saddle form).

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <stdexcept>
#include <vector>

namespace vemgc {

struct CgResult {
    int iters = 0;
    double residual = 0.0;  // relative
    bool converged = false;
};

inline CgResult jacobi_pcg(const Eigen::SparseMatrix<double>& A,
                           const Eigen::VectorXd& b, Eigen::VectorXd& x,
                           double tol = 1e-12, int maxiter = -1,
                           std::vector<double>* history = nullptr) {
    const int n = static_cast<int>(A.rows());
    if (maxiter < 0) maxiter = 10 * n;
    Eigen::VectorXd dinv = A.diagonal().cwiseInverse();
    if (x.size() != n) x = Eigen::VectorXd::Zero(n);

    Eigen::VectorXd r = b - A * x;
    const double bnorm = b.norm();
    CgResult res;
    if (bnorm == 0.0) {
        x.setZero();
        res.converged = true;
        return res;
    }
    Eigen::VectorXd z = dinv.cwiseProduct(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    for (int it = 0; it < maxiter; ++it) {
        res.residual = r.norm() / bnorm;
        if (history) history->push_back(res.residual);
        if (res.residual <= tol) {
            res.converged = true;
            return res;
        }
        Eigen::VectorXd Ap = A * p;
        double alpha = rz / p.dot(Ap);
        x += alpha * p;
        r -= alpha * Ap;
        z = dinv.cwiseProduct(r);
        double rz_new = r.dot(z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
        ++res.iters;
    }
    res.residual = r.norm() / bnorm;
    res.converged = (res.residual <= tol);
    return res;
}

// Cholesky solve; throws if the matrix is not SPD.
inline Eigen::VectorXd direct_solve_spd(const Eigen::SparseMatrix<double>& A,
                                        const Eigen::VectorXd& b) {
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(A);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("Cholesky factorization failed: matrix is not SPD");
    return llt.solve(b);
}

inline Eigen::VectorXd direct_solve_lu(const Eigen::SparseMatrix<double>& A,
                                       const Eigen::VectorXd& b) {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(A);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("sparse LU factorization failed");
    return lu.solve(b);
}

}  // namespace vemgc

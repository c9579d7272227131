#include <catch2/catch_amalgamated.hpp>

#include "vemgc/mesh.hpp"
#include "vemgc/monomial.hpp"
#include "vemgc/quadrature.hpp"

#include "fixtures.hpp"

#include <cmath>
#include <random>

using namespace vemgc;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// int over the unit simplex {x,y,z >= 0, x+y+z <= 1} of x^a y^b z^c
double simplex_moment(int a, int b, int c) {
    return factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 3);
}

double rule_sum(const QuadRule& r) {
    double s = 0.0;
    for (const QuadPoint& qp : r) s += qp.w;
    return s;
}

}  // namespace

TEST_CASE("edge rule: exact for polynomials up to the requested degree") {
    Vec3 a(0.2, -0.1, 0.4), b(1.1, 0.7, -0.3);
    double len = (b - a).norm();
    for (int deg : {1, 3, 5, 9}) {
        QuadRule r = edge_rule(a, b, deg);
        CHECK(rule_sum(r) == Catch::Approx(len).epsilon(1e-13));
        for (int p = 0; p <= deg; ++p) {
            // parameterize by arclength fraction t in [0,1]: integral of t^p
            double num = 0.0;
            for (const QuadPoint& qp : r) {
                double t = (qp.x - a).norm() / len;
                num += qp.w * std::pow(t, p);
            }
            CHECK(num == Catch::Approx(len / (p + 1)).epsilon(1e-12));
        }
    }
}

TEST_CASE("tetrahedron rule reproduces simplex monomial moments") {
    Vec3 p0(0, 0, 0), p1(1, 0, 0), p2(0, 1, 0), p3(0, 0, 1);
    QuadRule r = tet_rule(p0, p1, p2, p3, 6);
    CHECK(rule_sum(r) == Catch::Approx(1.0 / 6.0).epsilon(1e-13));
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; a + b <= 6; ++b)
            for (int c = 0; a + b + c <= 6; ++c) {
                double num = 0.0;
                for (const QuadPoint& qp : r)
                    num += qp.w * std::pow(qp.x.x(), a) * std::pow(qp.x.y(), b) *
                           std::pow(qp.x.z(), c);
                CHECK(num == Catch::Approx(simplex_moment(a, b, c)).epsilon(1e-12));
            }
}

TEST_CASE("face rule: pentagon area matches the shoelace formula") {
    // irregular planar pentagon in the z=0.5 plane
    std::vector<Vec3> loop = {{0, 0, 0.5}, {1.2, 0.1, 0.5}, {1.5, 1.0, 0.5},
                              {0.6, 1.7, 0.5}, {-0.3, 0.9, 0.5}};
    double shoelace = 0.0;
    for (size_t i = 0; i < loop.size(); ++i) {
        const Vec3& p = loop[i];
        const Vec3& q = loop[(i + 1) % loop.size()];
        shoelace += p.x() * q.y() - q.x() * p.y();
    }
    shoelace = std::abs(shoelace) / 2.0;

    // close the pentagon into a prism so the face lives in a valid mesh
    std::vector<Vec3> vs = loop;
    std::vector<int> top;
    for (const Vec3& p : loop) vs.push_back(p + Vec3(0, 0, 1));
    std::vector<std::vector<int>> faces = {{0, 1, 2, 3, 4}, {9, 8, 7, 6, 5}};
    for (int i = 0; i < 5; ++i) {
        int j = (i + 1) % 5;
        faces.push_back({i, j, j + 5, i + 5});
    }
    Mesh m = build_mesh(vs, faces, {{0, 1, 2, 3, 4, 5, 6}});
    CHECK(m.faces[0].area == Catch::Approx(shoelace).epsilon(1e-14));
    CHECK(rule_sum(face_rule(m, 0, 4)) == Catch::Approx(shoelace).epsilon(1e-13));
}

TEST_CASE("cell rule on the unit cube") {
    Mesh m = build_cube_mesh(1);
    QuadRule r = cell_rule(m, 0, 4);
    CHECK(rule_sum(r) == Catch::Approx(1.0).epsilon(1e-13));
    double xxy = 0.0;
    for (const QuadPoint& qp : r) xxy += qp.w * qp.x.x() * qp.x.x() * qp.x.y();
    CHECK(xxy == Catch::Approx(1.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("cell rule exactness on random cells") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 4; ++trial) {
        Mesh m = fixtures::random_cell(rng);
        const Cell& K = m.cells[0];
        QuadRule r = cell_rule(m, 0, 4);
        CHECK(rule_sum(r) == Catch::Approx(K.volume).epsilon(1e-12));
        // oracle: the same monomials integrated by a much finer rule
        QuadRule fine = cell_rule(m, 0, 8);
        Vec10 num = Vec10::Zero(), ref = Vec10::Zero();
        for (const QuadPoint& qp : r) num += qp.w * cell_monomials(K, qp.x);
        for (const QuadPoint& qp : fine) ref += qp.w * cell_monomials(K, qp.x);
        CHECK((num - ref).cwiseAbs().maxCoeff() <= 1e-12 * K.volume);
    }
}

TEST_CASE("scaled monomial conditioning is scale invariant") {
    std::mt19937 rng(23);
    Eigen::Matrix3d A = fixtures::random_affine(rng);
    auto gram_cond = [](const Mesh& m) {
        const Cell& K = m.cells[0];
        Eigen::Matrix<double, 10, 10> G = Eigen::Matrix<double, 10, 10>::Zero();
        for (const QuadPoint& qp : cell_rule(m, 0, 4)) {
            Vec10 v = cell_monomials(K, qp.x);
            G += (qp.w / K.volume) * v * v.transpose();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 10, 10>> es(G);
        return es.eigenvalues()(9) / es.eigenvalues()(0);
    };
    double c1 = gram_cond(fixtures::hex_cell(A));
    double c2 = gram_cond(fixtures::hex_cell(0.5 * A));
    CHECK(c2 / c1 > 0.5);
    CHECK(c2 / c1 < 2.0);
}

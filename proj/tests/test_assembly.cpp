#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "pdwg/assembly.hpp"
#include "pdwg/errors.hpp"
#include "pdwg/norms.hpp"

using namespace pdwg;

namespace {

ProblemSpec zero_problem(Vec2 beta = Vec2::Zero())
{
    ProblemSpec p;
    p.id = "zero";
    p.beta = [beta](const Vec2&) { return beta; };
    p.convective = beta.norm() > 0.0;
    p.constant_beta = true;
    p.f = [](const Vec2&) { return 0.0; };
    p.g = [](const Vec2&) { return 0.0; };
    p.u_exact = [](const Vec2&) { return 0.0; };
    p.grad_u_exact = [](const Vec2&) { return Vec2(0.0, 0.0); };
    return p;
}

ElementGeometry reference_triangle()
{
    static const Mesh m = Mesh::from_triangles({Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)}, {{0, 1, 2}});
    return m.element_geometry(0);
}

double eval_edge(const ElementEdge& e, const Eigen::VectorXd& c, const Vec2& x)
{
    const EdgeBasis b(static_cast<int>(c.size()) - 1, e.start, e.end);
    return b.values(b.parameter(x)).dot(c);
}

/// sum_e h^a int jump^2 + h^b int (alpha grad s0.n - sign sn)^2 by the
/// oracle rules.
double stabilizer_oracle(const ElementGeometry& g, int k, const Eigen::VectorXd& dofs, double a,
                         double b, double alpha = 1.0)
{
    const LocalWeakDofs d = LocalWeakDofs::unflatten(g, k, dofs);
    const TriangleBasis pk(k, g.centroid, g.diameter);
    double s = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
        const ElementEdge& e = g.edges[j];
        s += std::pow(g.diameter, a) * oracle::integrate_segment(
                 [&](const Vec2& x) { return std::pow(pk.values(x).dot(d.sigma0) - eval_edge(e, d.sigma_b[j], x), 2); },
                 e.start, e.end);
        s += std::pow(g.diameter, b) * oracle::integrate_segment(
                 [&](const Vec2& x) {
                     const Vec2 grad = pk.gradients(x) * d.sigma0;
                     return std::pow(alpha * grad.dot(e.outward) - d.sign[j] * eval_edge(e, d.sigma_n[j], x), 2);
                 },
                 e.start, e.end);
    }
    return s;
}

Eigen::VectorXd random_vector(std::mt19937& rng, Eigen::Index n)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = u(rng);
    return v;
}

} // namespace

TEST_CASE("layout_dofs counts")
{
    const Mesh m1 = build_uniform(1);
    const DofLayout a = layout_dofs(m1, 1, 0);
    CHECK(a.num_lambda == 13);
    CHECK(a.num_u == 2);
    const DofLayout b = layout_dofs(m1, 2, 1);
    CHECK(b.num_lambda == 25);
    CHECK(b.num_u == 6);
    const Mesh m4 = build_uniform(4);
    const DofLayout c = layout_dofs(m4, 2, 1);
    CHECK(c.num_lambda == 424);
    CHECK(c.num_u == 96);
    CHECK(c.total() == 520);

    // Every global index belongs to exactly one block.
    std::vector<int> hits(static_cast<std::size_t>(c.num_lambda), 0);
    for (int t = 0; t < c.num_elements; ++t)
        for (int i = 0; i < c.dim_k; ++i)
            ++hits[static_cast<std::size_t>(c.sigma0(t, i))];
    for (int e = 0; e < c.num_edges; ++e) {
        for (int mm = 0; mm <= c.k; ++mm)
            if (c.sigma_b(e, mm) >= 0)
                ++hits[static_cast<std::size_t>(c.sigma_b(e, mm))];
        for (int mm = 0; mm < c.k; ++mm)
            ++hits[static_cast<std::size_t>(c.sigma_n(e, mm))];
    }
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}

TEST_CASE("layout_dofs validation")
{
    const Mesh m = build_uniform(1);
    CHECK_THROWS_AS(layout_dofs(m, 0, 0), ConfigError);
    CHECK_THROWS_AS(layout_dofs(m, 2, 2), ConfigError);
    CHECK_THROWS_AS(layout_dofs(m, 3, 0), ConfigError);
    CHECK_THROWS_AS(layout_dofs(m, 1, -1), ConfigError);
    CHECK_THROWS_AS(layout_dofs(m, 2, 0, true), ConfigError);
    CHECK_NOTHROW(layout_dofs(m, 2, 0, false));
}

TEST_CASE("assemble_B reproduces the projected operator for polynomial data")
{
    const Mesh m = build_uniform(4);
    const oracle::Poly X = oracle::Poly::x(), Y = oracle::Poly::y();
    const oracle::Poly one = oracle::Poly::constant(1.0);
    const oracle::Poly w = X * (one + X * -1.0) * Y * (one + Y * -1.0);
    const oracle::Poly lap = w.laplacian(), wx = w.dx(), wy = w.dy();

    for (const Vec2& beta : {Vec2(0.0, 0.0), Vec2(1.0, -2.0)}) {
        const ProblemSpec problem = zero_problem(beta);
        for (int s : {0, 1}) {
            if (beta.norm() > 0.0 && s != 1)
                continue;
            const DofLayout L = layout_dofs(m, 2, s, problem.convective);
            const WeakFunction q = project_weak(m, L, w, [&](const Vec2& x) { return Vec2(wx(x), wy(x)); });
            const Eigen::VectorXd Bq = assemble_B(m, L, problem).multiply(q.coeffs);
            double dev = 0.0, ref_max = 0.0;
            for (int t = 0; t < L.num_elements; ++t) {
                const ElementGeometry g = m.element_geometry(static_cast<std::size_t>(t));
                const TriangleBasis ps(s, g.centroid, g.diameter);
                for (int j = 0; j < L.dim_s; ++j) {
                    const double ref = oracle::integrate(
                        [&](const Vec2& x) {
                            return ps.values(x)[j] * (-beta.x() * wx(x) - beta.y() * wy(x) - lap(x));
                        },
                        g.vertices);
                    dev = std::max(dev, std::abs(Bq[L.u(t, j)] - ref));
                    ref_max = std::max(ref_max, std::abs(ref));
                }
            }
            CHECK(dev <= 1e-12 * std::max(1.0, ref_max));
        }
    }
}

TEST_CASE("local coupling for a globally linear weak function")
{
    const Mesh m = build_uniform(4);
    const ProblemSpec problem = zero_problem(Vec2(0.7, -1.3));
    const auto s0 = [](const Vec2& x) { return 0.4 + 2.0 * x.x() - 3.0 * x.y(); };
    const Vec2 grad(2.0, -3.0);
    for (std::size_t t = 0; t < m.num_elements(); ++t) {
        const ElementGeometry g = m.element_geometry(t);
        const LocalWeakDofs d = project_weak_local(g, 2, s0, [&](const Vec2&) { return grad; });
        const Eigen::VectorXd bv = local_coupling(g, 2, 1, problem) * d.flatten();
        const TriangleBasis ps(1, g.centroid, g.diameter);
        for (int j = 0; j < ps.size(); ++j) {
            const double ref = oracle::integrate(
                [&](const Vec2& x) { return ps.values(x)[j] * -(0.7 * grad.x() - 1.3 * grad.y()); },
                g.vertices);
            CHECK(std::abs(bv[j] - ref) <= 1e-12);
        }
    }
}

TEST_CASE("assemble_B: zero lambda gives zero action")
{
    const Mesh m = build_uniform(4);
    const ProblemSpec problem = get_problem("ex2");
    const DofLayout L = layout_dofs(m, 2, 1, true);
    const SparseMatrix B = assemble_B(m, L, problem);
    CHECK(B.rows() == L.num_u);
    CHECK(B.cols() == L.num_lambda);
    CHECK(B.multiply(Eigen::VectorXd::Zero(L.num_lambda)).norm() == 0.0);
}

TEST_CASE("stabilizer: constant jump on the reference triangle")
{
    const ElementGeometry g = reference_triangle();
    const LocalLayout L(1);
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(L.size());
    lam[L.sigma0(0)] = 1.0;   // sigma_0 = 1, sigma_b = 0, sigma_n = 0
    const Eigen::MatrixXd S = local_stabilizer(g, 1, Eigen::VectorXd::Zero(L.size()), 2.0, 1e-3, 1.0);
    const double value = lam.dot(S * lam);
    CHECK(value == doctest::Approx((2.0 + std::sqrt(2.0)) / (2.0 * std::sqrt(2.0))).epsilon(1e-14));
    CHECK(value == doctest::Approx(1.2071).epsilon(1e-4));
}

TEST_CASE("stabilizer: p = 2 matches the oracle and ignores lambda_prev")
{
    std::mt19937 rng(17);
    const Mesh m = build_uniform(4);
    for (int k : {1, 2}) {
        const LocalLayout L(k);
        for (std::size_t t = 0; t < m.num_elements(); t += 5) {
            const ElementGeometry g = m.element_geometry(t);
            const Eigen::MatrixXd S0 = local_stabilizer(g, k, Eigen::VectorXd::Zero(L.size()), 2.0, 1e-3, 1.0);
            const Eigen::MatrixXd S1 = local_stabilizer(g, k, random_vector(rng, L.size()), 2.0, 1e-3, 1.0);
            CHECK((S0 - S1).cwiseAbs().maxCoeff() == 0.0);
            const Eigen::VectorXd lam = random_vector(rng, L.size());
            const double ref = stabilizer_oracle(g, k, lam, -3.0, -1.0);
            CHECK(lam.dot(S0 * lam) == doctest::Approx(ref).epsilon(1e-12));

            const Eigen::MatrixXd Sa = local_stabilizer(g, k, Eigen::VectorXd::Zero(L.size()), 2.0, 1e-3, 5.0);
            CHECK(lam.dot(Sa * lam) == doctest::Approx(stabilizer_oracle(g, k, lam, -3.0, -1.0, 5.0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("stabilizer: zero lambda_prev gives eps^(p-2) times the unweighted form")
{
    std::mt19937 rng(23);
    const Mesh m = build_uniform(2);
    const int k = 2;
    const LocalLayout L(k);
    for (double p : {1.0, 1.5, 3.0, 5.0})
        for (double eps : {1e-3, 0.1}) {
            const ElementGeometry g = m.element_geometry(3);
            const Eigen::MatrixXd S = local_stabilizer(g, k, Eigen::VectorXd::Zero(L.size()), p, eps, 1.0);
            const Eigen::VectorXd lam = random_vector(rng, L.size());
            const double ref = std::pow(eps, p - 2.0) * stabilizer_oracle(g, k, lam, 1.0 - 2.0 * p, 1.0 - p);
            CHECK(lam.dot(S * lam) == doctest::Approx(ref).epsilon(1e-12));
        }
}

TEST_CASE("assemble_S: symmetric positive semidefinite")
{
    std::mt19937 rng(29);
    const Mesh m = build_uniform(4);
    const ProblemSpec problem = get_problem("ex1");
    const DofLayout L = layout_dofs(m, 2, 1);
    for (double p : {2.0, 3.0}) {
        WeakFunction prev{random_vector(rng, L.num_lambda)};
        const SparseMatrix S = assemble_S(m, L, prev, p, 1e-3, problem);
        const Eigen::MatrixXd D = S.to_dense();
        CHECK((D - D.transpose()).cwiseAbs().maxCoeff() <= 1e-14 * D.cwiseAbs().maxCoeff());
        for (int trial = 0; trial < 100; ++trial) {
            const Eigen::VectorXd lam = random_vector(rng, L.num_lambda);
            CHECK(lam.dot(S.multiply(lam)) >= 0.0);
        }
    }
    CHECK_THROWS_AS(assemble_S(m, L, WeakFunction{Eigen::VectorXd::Zero(L.num_lambda)}, 0.5, 1e-3, problem),
                    ConfigError);
    CHECK_THROWS_AS(assemble_S(m, L, WeakFunction{Eigen::VectorXd::Zero(L.num_lambda)}, 2.0, 0.0, problem),
                    ConfigError);
}

TEST_CASE("assemble_S vanishes on projections of polynomials")
{
    const Mesh m = build_uniform(4);
    const ProblemSpec problem = get_problem("ex1");
    const oracle::Poly X = oracle::Poly::x(), Y = oracle::Poly::y(), one = oracle::Poly::constant(1.0);
    const oracle::Poly w = X * (one + X * -1.0) * Y * (one + Y * -1.0);
    const oracle::Poly wx = w.dx(), wy = w.dy();
    const DofLayout L = layout_dofs(m, 4, 3);
    const WeakFunction q = project_weak(m, L, w, [&](const Vec2& x) { return Vec2(wx(x), wy(x)); });
    for (double p : {2.0, 3.0}) {
        CAPTURE(p);
        // The jumps vanish to round-off, so the form evaluated from them is
        // tiny; the matrix product is limited by cancellation at |S| |q|^2.
        CHECK(stabilizer_value(m, L, q, p, problem) <= 1e-20);
        const SparseMatrix S = assemble_S(m, L, q, p, 1e-3, problem);
        const double scale = S.to_dense().cwiseAbs().maxCoeff() * q.coeffs.squaredNorm();
        CHECK(std::abs(q.coeffs.dot(S.multiply(q.coeffs))) <= 1e-14 * scale);
    }
}

TEST_CASE("assemble_rhs: trivial data")
{
    const Mesh m = build_uniform(4);
    const DofLayout L = layout_dofs(m, 2, 1);
    CHECK(assemble_rhs(m, L, zero_problem()).norm() == 0.0);

    ProblemSpec unit = zero_problem();
    unit.f = [](const Vec2&) { return 1.0; };
    const DofLayout L1 = layout_dofs(m, 1, 0);
    const Eigen::VectorXd r = assemble_rhs(m, L1, unit);
    REQUIRE(r.size() == L1.total());
    for (int t = 0; t < L1.num_elements; ++t)
        CHECK(r[L1.sigma0(t, 0)] == doctest::Approx(m.area(static_cast<std::size_t>(t))).epsilon(1e-14));
    CHECK(r.tail(L1.num_u).norm() == 0.0);
}

TEST_CASE("assemble_rhs: ex1 data against the oracle")
{
    const Mesh m = build_uniform(4);
    const ProblemSpec problem = get_problem("ex1");
    const DofLayout L = layout_dofs(m, 2, 1);
    const Eigen::VectorXd r = assemble_rhs(m, L, problem);
    Eigen::VectorXd ref = Eigen::VectorXd::Zero(L.total());
    for (int t = 0; t < L.num_elements; ++t) {
        const ElementGeometry g = m.element_geometry(static_cast<std::size_t>(t));
        const TriangleBasis pk(2, g.centroid, g.diameter);
        for (int i = 0; i < L.dim_k; ++i)
            ref[L.sigma0(t, i)] =
                oracle::integrate([&](const Vec2& x) { return problem.f(x) * pk.values(x)[i]; }, g.vertices);
    }
    for (int e = 0; e < L.num_edges; ++e) {
        const MeshEdge& me = m.edge(static_cast<std::size_t>(e));
        if (!me.boundary)
            continue;
        const Vec2 a = m.vertices()[static_cast<std::size_t>(me.vertices[0])];
        const Vec2 b = m.vertices()[static_cast<std::size_t>(me.vertices[1])];
        for (int mm = 0; mm < L.k; ++mm)
            ref[L.sigma_n(e, mm)] = -oracle::integrate_segment(
                [&](const Vec2& x) { return problem.g(x) * std::pow((x - a).dot(b - a) / (b - a).squaredNorm(), mm); },
                a, b);
    }
    CHECK((r - ref).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("assemble_rhs: interface flux of ex3")
{
    const ProblemSpec problem = get_problem("ex3");
    const Mesh m = problem.build_mesh(4);
    const DofLayout L = layout_dofs(m, 2, 1);
    const Eigen::VectorXd r = assemble_rhs(m, L, problem);
    int seen = 0;
    for (int e = 0; e < L.num_edges; ++e) {
        const MeshEdge& me = m.edge(static_cast<std::size_t>(e));
        if (!me.interface)
            continue;
        ++seen;
        const Vec2 a = m.vertices()[static_cast<std::size_t>(me.vertices[0])];
        const Vec2 b = m.vertices()[static_cast<std::size_t>(me.vertices[1])];
        const Vec2 mid = 0.5 * (a + b);
        // Outward normal of the box (0.25, 0.75)^2 at the edge midpoint.
        Vec2 n = Vec2::Zero();
        if (std::abs(mid.x() - 0.25) < 1e-12) n = Vec2(-1, 0);
        else if (std::abs(mid.x() - 0.75) < 1e-12) n = Vec2(1, 0);
        else if (std::abs(mid.y() - 0.25) < 1e-12) n = Vec2(0, -1);
        else n = Vec2(0, 1);
        for (int mm = 0; mm <= L.k; ++mm) {
            const double ref = oracle::integrate_segment(
                [&](const Vec2& x) {
                    return problem.psi(x, n) * std::pow((x - a).dot(b - a) / (b - a).squaredNorm(), mm);
                },
                a, b);
            CHECK(std::abs(r[L.sigma_b(e, mm)] - ref) <= 1e-12);
        }
    }
    CHECK(seen == 8);

    const Mesh untagged = build_uniform(4);
    CHECK_THROWS_AS(assemble_rhs(untagged, layout_dofs(untagged, 2, 1), problem), ConfigError);
}

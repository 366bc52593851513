#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "properties.hpp"
#include "pdwg/mesh.hpp"
#include "pdwg/spaces.hpp"
#include "pdwg/weakops.hpp"

using namespace pdwg;

namespace {

ElementGeometry reference_triangle()
{
    static const Mesh m = Mesh::from_triangles({Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)}, {{0, 1, 2}});
    return m.element_geometry(0);
}

using props::eval;
using props::eval_edge;
using props::max_diff;

} // namespace

TEST_CASE("project_weak_local: w = x is reproduced")
{
    const Mesh m = build_uniform(4);
    const auto w = [](const Vec2& x) { return x.x(); };
    const auto gw = [](const Vec2&) { return Vec2(1.0, 0.0); };
    for (std::size_t t = 0; t < m.num_elements(); ++t) {
        const ElementGeometry g = m.element_geometry(t);
        const LocalWeakDofs d = project_weak_local(g, 1, w, gw);
        CHECK(max_diff(g, 1, d.sigma0, w) <= 1e-14);
        for (int j = 0; j < 3; ++j) {
            const ElementEdge& e = g.edges[static_cast<std::size_t>(j)];
            for (double t01 : {0.0, 0.3, 1.0}) {
                const Vec2 x = e.start + t01 * (e.end - e.start);
                CHECK(std::abs(eval_edge(e, d.sigma_b[static_cast<std::size_t>(j)], x) - x.x()) <= 1e-14);
            }
            const Vec2 ne = m.edge(static_cast<std::size_t>(e.edge)).normal;
            REQUIRE(d.sigma_n[static_cast<std::size_t>(j)].size() == 1);
            CHECK(std::abs(d.sigma_n[static_cast<std::size_t>(j)][0] - ne.x()) <= 1e-14);
        }
    }
}

TEST_CASE("project_weak_local: k = 0 gives the mean")
{
    const ElementGeometry g = reference_triangle();
    const LocalWeakDofs d = project_weak_local(
        g, 0, [](const Vec2& x) { return x.x(); }, [](const Vec2&) { return Vec2(1, 0); });
    CHECK(d.sigma0[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("project_weak: L2 error of sin x sin y decays like h^3")
{
    const auto w = [](const Vec2& x) { return std::sin(x.x()) * std::sin(x.y()); };
    const auto gw = [](const Vec2& x) {
        return Vec2(std::cos(x.x()) * std::sin(x.y()), std::sin(x.x()) * std::cos(x.y()));
    };
    std::vector<double> errors;
    for (int n : {4, 8, 16}) {
        const Mesh m = build_uniform(n);
        const DofLayout L = make_layout(m, 2, 1);
        const WeakFunction q = project_weak(m, L, w, gw);
        double e2 = 0.0;
        for (std::size_t t = 0; t < m.num_elements(); ++t) {
            const ElementGeometry g = m.element_geometry(t);
            const Eigen::VectorXd c = q.coeffs.segment(L.sigma0(static_cast<int>(t), 0), L.dim_k);
            e2 += oracle::integrate([&](const Vec2& x) { return std::pow(w(x) - eval(g, 2, c, x), 2); },
                                    g.vertices);
            // Q_0 w equals the independent oracle projection.
            CHECK(max_diff(g, 2, c, oracle::project(w, g.vertices, 2)) <= 1e-12);
        }
        errors.push_back(std::sqrt(e2));
    }
    CHECK(std::log2(errors[0] / errors[1]) > 2.9);
    CHECK(std::log2(errors[1] / errors[2]) > 2.9);
}

TEST_CASE("project_primal")
{
    const Mesh m = build_uniform(2);
    for (int s : {0, 1, 2}) {
        const PrimalFunction one = project_primal(m, s, [](const Vec2&) { return 1.0; });
        for (std::size_t t = 0; t < m.num_elements(); ++t)
            CHECK(max_diff(m.element_geometry(t), s,
                           one.coeffs.segment(static_cast<Eigen::Index>(t) * triangle_basis_size(s),
                                              triangle_basis_size(s)),
                           [](const Vec2&) { return 1.0; }) <= 1e-14);
    }

    const ElementGeometry ref = reference_triangle();
    CHECK(project_element(ref, 0, [](const Vec2& x) { return x.x(); })[0] ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    // x^2 - Q x^2 is orthogonal to P_1.
    const auto f = [](const Vec2& x) { return x.x() * x.x(); };
    for (std::size_t t = 0; t < m.num_elements(); ++t) {
        const ElementGeometry g = m.element_geometry(t);
        const Eigen::VectorXd c = project_element(g, 1, f);
        for (auto mono : {std::pair{0, 0}, std::pair{1, 0}, std::pair{0, 1}}) {
            const double r = oracle::integrate(
                [&](const Vec2& x) {
                    return (f(x) - eval(g, 1, c, x)) * std::pow(x.x(), mono.first) * std::pow(x.y(), mono.second);
                },
                g.vertices);
            CHECK(std::abs(r) <= 1e-12);
        }
    }
}

TEST_CASE("weak Laplacian: unit outward flux on the reference triangle")
{
    const ElementGeometry g = reference_triangle();
    const int k = 1;
    const LocalLayout L(k);
    Eigen::VectorXd sigma = Eigen::VectorXd::Zero(L.size());
    for (int j = 0; j < 3; ++j)
        sigma[L.sigma_n(j, 0)] = g.edges[static_cast<std::size_t>(j)].sign;   // outward value 1
    const Eigen::VectorXd lap = weak_laplacian_local(g, k, 0) * sigma;
    CHECK(lap[0] == doctest::Approx(4.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("weak Laplacian of Q_h(x^2) is 2")
{
    const Mesh m = build_uniform(4);
    const auto w = [](const Vec2& x) { return x.x() * x.x(); };
    const auto gw = [](const Vec2& x) { return Vec2(2.0 * x.x(), 0.0); };
    for (int s : {0, 1})
        for (std::size_t t = 0; t < m.num_elements(); ++t) {
            const ElementGeometry g = m.element_geometry(t);
            const Eigen::VectorXd lap =
                weak_laplacian_local(g, 2, s) * project_weak_local(g, 2, w, gw).flatten();
            CHECK(max_diff(g, s, lap, [](const Vec2&) { return 2.0; }) <= 1e-11);
        }
}

TEST_CASE("weak gradient: closed contour and divergence theorem")
{
    const ElementGeometry g = reference_triangle();
    const int k = 1;
    const LocalLayout L(k);
    Eigen::VectorXd ones = Eigen::VectorXd::Zero(L.size());
    Eigen::VectorXd trace_x = Eigen::VectorXd::Zero(L.size());
    for (int j = 0; j < 3; ++j) {
        const ElementEdge& e = g.edges[static_cast<std::size_t>(j)];
        ones[L.sigma_b(j, 0)] = 1.0;
        trace_x[L.sigma_b(j, 0)] = e.start.x();
        trace_x[L.sigma_b(j, 1)] = e.end.x() - e.start.x();
    }
    const auto G = weak_gradient_local(g, k, 0);
    CHECK(std::abs((G[0] * ones)[0]) <= 1e-15);
    CHECK(std::abs((G[1] * ones)[0]) <= 1e-15);
    CHECK((G[0] * trace_x)[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs((G[1] * trace_x)[0]) <= 1e-14);
}

TEST_CASE("commutativity with projections on every element")
{
    const Mesh m = build_uniform(4);
    // P_k data for every admissible (k, s), plus a cubic for k = 2, s = 1.
    CHECK(props::commutativity_deviation(m, 1, 0, 1, 11) <= 1e-12);
    CHECK(props::commutativity_deviation(m, 2, 1, 2, 12) <= 1e-12);
    CHECK(props::commutativity_deviation(m, 2, 0, 2, 13) <= 1e-12);
    CHECK(props::commutativity_deviation(m, 2, 1, 3, 14) <= 1e-12);
}

TEST_CASE("integration-by-parts form of the weak operators")
{
    const Mesh m = build_uniform(4);
    for (int k : {1, 2})
        for (int s = 0; s <= k - 1; ++s)
            CHECK(props::ibp_deviation(m, k, s, 5 + static_cast<unsigned>(k * 10 + s), 3) <= 1e-12);
}

TEST_CASE("sigma_n is antisymmetric across interior edges")
{
    const Mesh m = build_uniform(4);
    CHECK(props::antisymmetry_deviation(m, 1, 3) == 0.0);
    CHECK(props::antisymmetry_deviation(m, 2, 4) == 0.0);
}

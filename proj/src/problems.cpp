#include "pdwg/problems.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pdwg/errors.hpp"

namespace pdwg {

namespace {

ProblemSpec example1()
{
    ProblemSpec p;
    p.id = "ex1";
    p.description = "u = sin(x) sin(y), beta = 0";
    p.beta = [](const Vec2&) { return Vec2(0.0, 0.0); };
    p.constant_beta = true;
    p.u_exact = [](const Vec2& x) { return std::sin(x.x()) * std::sin(x.y()); };
    p.grad_u_exact = [](const Vec2& x) {
        return Vec2(std::cos(x.x()) * std::sin(x.y()), std::sin(x.x()) * std::cos(x.y()));
    };
    p.f = [](const Vec2& x) { return 2.0 * std::sin(x.x()) * std::sin(x.y()); };
    p.g = p.u_exact;
    return p;
}

ProblemSpec example2()
{
    ProblemSpec p;
    p.id = "ex2";
    p.description = "u = sin(x+y)/2 + cos(x-y) + 3/2, beta = (-y, x)";
    p.beta = [](const Vec2& x) { return Vec2(-x.y(), x.x()); };
    p.convective = true;
    p.u_exact = [](const Vec2& x) {
        return 0.5 * std::sin(x.x() + x.y()) + std::cos(x.x() - x.y()) + 1.5;
    };
    p.grad_u_exact = [](const Vec2& x) {
        const double a = 0.5 * std::cos(x.x() + x.y());
        const double b = std::sin(x.x() - x.y());
        return Vec2(a - b, a + b);
    };
    // beta is divergence free, so div(beta u) = beta . grad u.
    const auto beta = p.beta;
    const auto grad = p.grad_u_exact;
    p.f = [beta, grad](const Vec2& x) {
        return std::sin(x.x() + x.y()) + 2.0 * std::cos(x.x() - x.y()) + beta(x).dot(grad(x));
    };
    p.g = p.u_exact;
    return p;
}

ProblemSpec example3()
{
    ProblemSpec p;
    p.id = "ex3";
    p.description = "u = exp(x) cos(y) + 10, alpha = 5 in (0.25,0.75)^2 and 1 outside";
    p.beta = [](const Vec2&) { return Vec2(0.0, 0.0); };
    p.constant_beta = true;
    p.alpha_inner = 5.0;
    p.alpha_outer = 1.0;
    p.interface_box = Rectangle{0.25, 0.25, 0.75, 0.75};
    p.n_divisor = 4;
    p.u_exact = [](const Vec2& x) { return std::exp(x.x()) * std::cos(x.y()) + 10.0; };
    p.grad_u_exact = [](const Vec2& x) {
        const double e = std::exp(x.x());
        return Vec2(e * std::cos(x.y()), -e * std::sin(x.y()));
    };
    // exp(x) cos(y) is harmonic.
    p.f = [](const Vec2&) { return 0.0; };
    p.g = p.u_exact;
    const auto grad = p.grad_u_exact;
    const double jump = p.alpha_inner - p.alpha_outer;
    p.psi = [grad, jump](const Vec2& x, const Vec2& n) { return jump * grad(x).dot(n); };
    return p;
}

} // namespace

std::vector<std::string> problem_ids() { return {"ex1", "ex2", "ex3"}; }

ProblemSpec get_problem(const std::string& id)
{
    if (id == "ex1")
        return example1();
    if (id == "ex2")
        return example2();
    if (id == "ex3")
        return example3();
    throw ConfigError("unknown problem '" + id + "' (expected ex1, ex2 or ex3)");
}

Mesh ProblemSpec::tag(const Mesh& mesh) const
{
    if (!interface_box)
        return mesh;
    return tag_interface(mesh, box_interface(*interface_box));
}

Mesh ProblemSpec::build_mesh(int n) const
{
    if (n % n_divisor != 0)
        throw ConfigError(id + " requires n divisible by " + std::to_string(n_divisor) + ", got n=" +
                          std::to_string(n));
    return tag(build_uniform(n, domain));
}

ConsistencyReport check_consistency(const ProblemSpec& problem, int samples, unsigned seed)
{
    constexpr double step = 1e-5;
    const Vec2 ex(step, 0.0), ey(0.0, step);
    std::mt19937 rng(seed);
    const Rectangle& d = problem.domain;
    std::uniform_real_distribution<double> ux(d.x0, d.x1), uy(d.y0, d.y1);

    auto inside = [&](const Vec2& x) {
        if (!problem.interface_box)
            return false;
        const Rectangle& b = *problem.interface_box;
        return x.x() > b.x0 && x.x() < b.x1 && x.y() > b.y0 && x.y() < b.y1;
    };
    auto residual = [&](const Vec2& x, double alpha) {
        const auto& gu = problem.grad_u_exact;
        const double lap = (gu(x + ex).x() - gu(x - ex).x() + gu(x + ey).y() - gu(x - ey).y()) /
                           (2.0 * step);
        auto flux = [&](const Vec2& y) { return Vec2(problem.beta(y) * problem.u_exact(y)); };
        const double div = (flux(x + ex).x() - flux(x - ex).x() + flux(x + ey).y() -
                            flux(x - ey).y()) / (2.0 * step);
        return std::abs(-alpha * lap + div - problem.f(x));
    };

    ConsistencyReport rep;
    const int regions = problem.has_interface() ? 2 : 1;
    for (int r = 0; r < regions; ++r) {
        const bool want_inside = problem.has_interface() && r == 0;
        const double alpha = want_inside ? problem.alpha_inner : problem.alpha_outer;
        int found = 0;
        // Stay a finite-difference step away from the boundary and interface.
        while (found < samples) {
            const Vec2 x(ux(rng), uy(rng));
            if (inside(x) != want_inside)
                continue;
            bool near = false;
            for (const Vec2& o : {ex, ey, Vec2(-ex), Vec2(-ey)})
                near = near || inside(x + 2.0 * o) != want_inside;
            if (near)
                continue;
            rep.pde_residual = std::max(rep.pde_residual, residual(x, alpha));
            ++found;
        }
    }

    if (problem.interface_box) {
        const Rectangle& b = *problem.interface_box;
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = 0; i < samples; ++i) {
            const double t = unit(rng);
            const std::array<std::pair<Vec2, Vec2>, 4> sides{{
                {Vec2(b.x0 + t * (b.x1 - b.x0), b.y0), Vec2(0.0, -1.0)},
                {Vec2(b.x1, b.y0 + t * (b.y1 - b.y0)), Vec2(1.0, 0.0)},
                {Vec2(b.x0 + t * (b.x1 - b.x0), b.y1), Vec2(0.0, 1.0)},
                {Vec2(b.x0, b.y0 + t * (b.y1 - b.y0)), Vec2(-1.0, 0.0)},
            }};
            for (const auto& [x, n] : sides) {
                // u and its gradient are the same smooth field on both sides.
                const Vec2 gu = problem.grad_u_exact(x);
                const Vec2 bu = problem.beta(x) * problem.u_exact(x);
                const double inner = (problem.alpha_inner * gu - bu).dot(n);
                const double outer = (problem.alpha_outer * gu - bu).dot(n);
                const double psi = problem.psi ? problem.psi(x, n) : 0.0;
                rep.interface_residual = std::max(rep.interface_residual, std::abs(inner - outer - psi));
            }
        }
    }

    rep.ok = rep.pde_residual <= 1e-8 && rep.interface_residual <= 1e-10;
    return rep;
}

} // namespace pdwg

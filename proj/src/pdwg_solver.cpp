#include "pdwg/pdwg_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pdwg/errors.hpp"
#include "pdwg/norms.hpp"

namespace pdwg {

double SolverConfig::q() const
{
    return p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
}

double SolverConfig::omega() const
{
    if (relaxation > 0.0)
        return relaxation;
    return p > 2.0 ? 1.0 / (p - 1.0) : 1.0;
}

void SolverConfig::validate() const
{
    if (relaxation > 1.0)
        throw ConfigError("relaxation must lie in (0, 1]");
    if (!(p >= 1.0))
        throw ConfigError("p must be >= 1, got " + std::to_string(p));
    if (!(eps > 0.0))
        throw ConfigError("eps must be positive");
    if (max_iters < 1)
        throw ConfigError("max_iters must be >= 1");
    if (!(rel_tol > 0.0))
        throw ConfigError("rel_tol must be positive");
    if (!(divergence_factor > 1.0))
        throw ConfigError("divergence factor must exceed 1");
}

PdwgSystem::PdwgSystem(const Mesh& mesh, const DofLayout& layout, const ProblemSpec& problem,
                       const SolverConfig& config)
    : mesh_(mesh), layout_(layout), problem_(problem), config_(config),
      B_(assemble_B(mesh, layout, problem, config.quad)),
      rhs_(assemble_rhs(mesh, layout, problem, config.quad))
{
    config_.validate();
}

SparseMatrix PdwgSystem::matrix(const WeakFunction& lambda_prev) const
{
    const SparseMatrix S =
        assemble_S(mesh_, layout_, lambda_prev, config_.p, config_.eps, problem_, config_.quad);
    return saddle_point_matrix(S, B_);
}

Solution PdwgSystem::step(const WeakFunction& lambda_prev)
{
    const SparseMatrix K = matrix(lambda_prev);
    solver_.factorize(K);
    const Eigen::VectorXd x = solver_.solve(rhs_, config_.linear_tol);

    Solution sol;
    sol.lambda.coeffs = x.head(layout_.num_lambda);
    sol.u.degree = layout_.s;
    sol.u.coeffs = x.tail(layout_.num_u);
    sol.report.linear_residual = solver_.last_residual();
    return sol;
}

Solution linear_step(const Mesh& mesh, const DofLayout& layout, const ProblemSpec& problem,
                     const WeakFunction& lambda_prev, const SolverConfig& config)
{
    PdwgSystem system(mesh, layout, problem, config);
    return system.step(lambda_prev);
}

Solution solve(const Mesh& mesh, const DofLayout& layout, const ProblemSpec& problem,
               const SolverConfig& config)
{
    PdwgSystem system(mesh, layout, problem, config);

    const double omega = config.omega();
    WeakFunction weights_from;
    weights_from.coeffs = Eigen::VectorXd::Zero(layout.num_lambda);
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(layout.total());
    std::vector<double> changes;
    double smallest = std::numeric_limits<double>::infinity();

    for (int it = 1; it <= config.max_iters; ++it) {
        Solution sol = system.step(weights_from);
        Eigen::VectorXd x(layout.total());
        x << sol.lambda.coeffs, sol.u.coeffs;
        const double norm = x.norm();
        const double change = norm > 0.0 ? (x - prev).norm() / norm : 0.0;
        changes.push_back(change);
        prev = std::move(x);
        if (it == 1 || omega == 1.0)
            weights_from = sol.lambda;
        else
            weights_from.coeffs = omega * sol.lambda.coeffs + (1.0 - omega) * weights_from.coeffs;

        if (change < config.rel_tol) {
            sol.report.iterations = it;
            sol.report.changes = std::move(changes);
            sol.report.stabilizer =
                stabilizer_value(mesh, layout, sol.lambda, config.p, problem, config.quad);
            const Eigen::VectorXd b = system.coupling().multiply(sol.lambda.coeffs);
            sol.report.constraint_residual = b.size() ? b.cwiseAbs().maxCoeff() : 0.0;
            return sol;
        }
        // The first step starts from lambda = 0 with weights eps^(p-2), so the
        // change it produces is not a meaningful baseline.
        if (it >= 3 && change > config.divergence_factor * smallest)
            throw ConvergenceError("Picard iteration diverged at iteration " + std::to_string(it) +
                                       ": relative change " + std::to_string(change),
                                   changes);
        if (it >= 2)
            smallest = std::min(smallest, change);
    }
    throw ConvergenceError("Picard iteration did not converge in " +
                               std::to_string(config.max_iters) + " iterations (last change " +
                               std::to_string(changes.back()) + ")",
                           changes);
}

} // namespace pdwg

#pragma once

#include <memory>
#include <vector>

#include "pdwg/assembly.hpp"
#include "pdwg/linalg.hpp"
#include "pdwg/mesh.hpp"
#include "pdwg/problems.hpp"
#include "pdwg/spaces.hpp"
#include "pdwg/weakops.hpp"

namespace pdwg {

struct SolverConfig {
    double p = 2.0;
    double eps = 1e-3;
    int max_iters = 100;
    double rel_tol = 1e-10;
    double divergence_factor = 1e6;
    double linear_tol = 1e-9;
    /// Weight relaxation omega in (0, 1]: the stabilizer weights of step m+1
    /// use omega * lambda^m + (1 - omega) * (previous weight iterate).
    /// Non-positive selects 1 / (p - 1) for p > 2 and 1 otherwise.
    double relaxation = 0.0;
    QuadratureOptions quad;

    /// Conjugate exponent p / (p - 1); infinity for p = 1.
    double q() const;
    double omega() const;
    void validate() const;
};

struct SolveReport {
    int iterations = 0;
    std::vector<double> changes;      // relative l2 change per iteration
    double stabilizer = 0.0;          // s(lambda_h, lambda_h)
    double linear_residual = 0.0;     // last linear solve, relative
    double constraint_residual = 0.0; // max_v |b(v, lambda_h)|
};

struct Solution {
    PrimalFunction u;
    WeakFunction lambda;
    SolveReport report;
};

/// The saddle-point system for one mesh and problem. B and the right side are
/// assembled once; each step reassembles the reweighted stabilizer and reuses
/// the symbolic factorization.
class PdwgSystem {
public:
    PdwgSystem(const Mesh& mesh, const DofLayout& layout, const ProblemSpec& problem,
               const SolverConfig& config);

    const SparseMatrix& coupling() const { return B_; }
    const Eigen::VectorXd& rhs() const { return rhs_; }
    /// The full system matrix for a given previous iterate.
    SparseMatrix matrix(const WeakFunction& lambda_prev) const;

    /// Solves [[S(lambda_prev), B^T], [B, 0]] (lambda; u) = (F; 0).
    Solution step(const WeakFunction& lambda_prev);

private:
    const Mesh& mesh_;
    const DofLayout& layout_;
    const ProblemSpec& problem_;
    SolverConfig config_;
    SparseMatrix B_;
    Eigen::VectorXd rhs_;
    SparseDirectSolver solver_;
};

/// One linearized step from lambda_prev.
Solution linear_step(const Mesh& mesh, const DofLayout& layout, const ProblemSpec& problem,
                     const WeakFunction& lambda_prev, const SolverConfig& config);

/// Picard iteration from lambda = 0 until the relative change of (lambda, u)
/// drops below rel_tol. For p > 2 the weights are relaxed (see
/// SolverConfig::relaxation); the fixed point is unchanged. Throws ConvergenceError after max_iters or when the
/// change grows by divergence_factor over its smallest value.
Solution solve(const Mesh& mesh, const DofLayout& layout, const ProblemSpec& problem,
               const SolverConfig& config);

} // namespace pdwg

#pragma once

#include <Eigen/Core>

#include "pdwg/linalg.hpp"
#include "pdwg/mesh.hpp"
#include "pdwg/problems.hpp"
#include "pdwg/spaces.hpp"
#include "pdwg/weakops.hpp"

namespace pdwg {

/// Layout for the PDWG spaces. Requires k >= 1, s in {k-1, k-2}, s >= 0,
/// and s = k-1 when the problem has convection.
DofLayout layout_dofs(const Mesh& mesh, int k, int s, bool convective = false);

/// Local coupling matrix of one element: rows are the P_s basis v, columns
/// the local weak dofs, entries (v, -beta . grad_w lambda - alpha lap_w lambda)_T.
/// alpha weights the sigma_0 and sigma_b parts of the weak Laplacian only;
/// sigma_n approximates the flux alpha grad sigma_0 . n and is left unweighted.
Eigen::MatrixXd local_coupling(const ElementGeometry& geom, int k, int s,
                               const ProblemSpec& problem, const QuadratureOptions& quad = {});

/// Local reweighted stabilizer of one element for the previous iterate
/// `lambda_prev` (local dofs in LocalLayout order).
Eigen::MatrixXd local_stabilizer(const ElementGeometry& geom, int k,
                                 const Eigen::VectorXd& lambda_prev, double p, double eps,
                                 double alpha, const QuadratureOptions& quad = {});

/// B (num_u x num_lambda) with b(v, lambda) = v^T B lambda.
SparseMatrix assemble_B(const Mesh& mesh, const DofLayout& layout, const ProblemSpec& problem,
                        const QuadratureOptions& quad = {});

/// Reweighted stabilizer (num_lambda x num_lambda) with pointwise weights
/// (|jump(lambda_prev)| + eps)^(p-2).
SparseMatrix assemble_S(const Mesh& mesh, const DofLayout& layout, const WeakFunction& lambda_prev,
                        double p, double eps, const ProblemSpec& problem,
                        const QuadratureOptions& quad = {});

/// Right side of length num_lambda + num_u: (f, sigma_0) - <g, sigma_n> on
/// the boundary + <psi, sigma_b> on the interface, then zeros.
Eigen::VectorXd assemble_rhs(const Mesh& mesh, const DofLayout& layout, const ProblemSpec& problem,
                             const QuadratureOptions& quad = {});

} // namespace pdwg

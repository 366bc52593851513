#pragma once

#include <array>

#include <Eigen/Core>

#include "pdwg/mesh.hpp"
#include "pdwg/polybasis.hpp"
#include "pdwg/spaces.hpp"

namespace pdwg {

/// Quadrature used by element and edge integrals. Non-positive values select
/// the defaults: triangle exactness 2k + 4 (capped at the largest table) and
/// k + 3 edge points.
struct QuadratureOptions {
    int triangle_degree = 0;
    int edge_points = 0;

    int triangle(int k) const;
    int edge(int k) const;
};

/// Sizes and offsets of the local weak dofs of one element, ordered
/// sigma_0, sigma_b on edges 0..2, sigma_n on edges 0..2.
struct LocalLayout {
    int k = 1;
    int dim_k = 3;

    explicit LocalLayout(int degree) : k(degree), dim_k(triangle_basis_size(degree)) {}

    int size() const { return dim_k + 3 * (k + 1) + 3 * k; }
    int sigma0(int i) const { return i; }
    int sigma_b(int j, int m) const { return dim_k + j * (k + 1) + m; }
    int sigma_n(int j, int m) const { return dim_k + 3 * (k + 1) + j * k + m; }
};

/// Coefficients of a weak function restricted to one element. sigma_n is
/// stored in the orientation of the edge normal; the element sees
/// sign[j] * sigma_n[j].
struct LocalWeakDofs {
    int element = -1;
    int k = 1;
    Eigen::VectorXd sigma0;
    std::array<Eigen::VectorXd, 3> sigma_b;
    std::array<Eigen::VectorXd, 3> sigma_n;
    std::array<double, 3> sign{1.0, 1.0, 1.0};

    /// Flattened in LocalLayout order.
    Eigen::VectorXd flatten() const;
    static LocalWeakDofs unflatten(const ElementGeometry& geom, int k, const Eigen::VectorXd& v);
};

/// Local weak operators on one element. The moment matrices hold the right
/// sides of the defining relations against the P_s test basis; the operator
/// matrices are the moments solved with the P_s mass matrix, so that
/// `laplacian * dofs.flatten()` are the P_s coefficients of the weak
/// Laplacian.
struct LocalOperatorMatrices {
    int s = 0;
    Eigen::MatrixXd mass;              // P_s Gram matrix
    Eigen::MatrixXd laplacian_moments;
    Eigen::MatrixXd grad_x_moments, grad_y_moments;
    Eigen::MatrixXd laplacian;
    Eigen::MatrixXd grad_x, grad_y;
};

LocalOperatorMatrices local_weak_operators(const ElementGeometry& geom, int k, int s,
                                           const QuadratureOptions& quad = {});

Eigen::MatrixXd weak_laplacian_local(const ElementGeometry& geom, int k, int s,
                                     const QuadratureOptions& quad = {});

/// Returns {G_x, G_y}.
std::array<Eigen::MatrixXd, 2> weak_gradient_local(const ElementGeometry& geom, int k, int s,
                                                   const QuadratureOptions& quad = {});

/// Edge traces of the local weak dofs at the edge quadrature points of one
/// element edge. Rows are quadrature points, columns local dofs.
///   jump      : sigma_0 - sigma_b
///   grad_flux : grad sigma_0 . n_T (sigma_0 columns only)
///   flux      : sign * sigma_n (sigma_n columns only)
struct LocalEdgeTraces {
    MappedEdgeRule rule;
    Eigen::MatrixXd jump;
    Eigen::MatrixXd grad_flux;
    Eigen::MatrixXd flux;
};

std::array<LocalEdgeTraces, 3> local_edge_traces(const ElementGeometry& geom, int k,
                                                 const QuadratureOptions& quad = {});

/// Q_h w = {Q_0 w, Q_b w, Q_n (grad w . n_e)} on one element.
LocalWeakDofs project_weak_local(const ElementGeometry& geom, int k, const ScalarField& w,
                                 const VectorField& grad_w, const QuadratureOptions& quad = {});

/// Q_h w on the whole mesh. Boundary sigma_b values are dropped.
WeakFunction project_weak(const Mesh& mesh, const DofLayout& layout, const ScalarField& w,
                          const VectorField& grad_w, const QuadratureOptions& quad = {});

/// Elementwise L2 projection onto P_s.
PrimalFunction project_primal(const Mesh& mesh, int s, const ScalarField& fn,
                              const QuadratureOptions& quad = {});

/// P_s coefficients of the L2 projection of fn on one element.
Eigen::VectorXd project_element(const ElementGeometry& geom, int degree, const ScalarField& fn,
                                const QuadratureOptions& quad = {});

/// Local dofs of element t extracted from a global weak function.
LocalWeakDofs gather_local(const Mesh& mesh, const DofLayout& layout, const WeakFunction& lambda,
                           int t);

TriangleBasis element_basis(const ElementGeometry& geom, int degree);
EdgeBasis edge_basis(const ElementEdge& edge, int degree);

} // namespace pdwg

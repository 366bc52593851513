#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "pdwg/mesh.hpp"

namespace pdwg {

using ScalarField = std::function<double(const Vec2&)>;
using VectorField = std::function<Vec2(const Vec2&)>;

/// Global numbering of the weak-function unknowns (sigma_0, interior sigma_b,
/// sigma_n) followed by the piecewise-polynomial unknowns u. Blocks are
/// contiguous and appear in that order. Boundary sigma_b coefficients are
/// fixed to zero and have no index.
struct DofLayout {
    int k = 1;
    int s = 0;
    int num_elements = 0;
    int num_edges = 0;
    int num_boundary_edges = 0;
    int dim_k = 0;   // dim P_k(T)
    int dim_s = 0;   // dim P_s(T)

    int sigma0_begin = 0;
    int sigma_b_begin = 0;
    int sigma_n_begin = 0;
    int num_lambda = 0;
    int num_u = 0;

    std::vector<int> sigma_b_slot;   // per edge; -1 on the boundary

    int total() const { return num_lambda + num_u; }
    int sigma0(int t, int i) const { return sigma0_begin + t * dim_k + i; }
    /// -1 for boundary edges.
    int sigma_b(int e, int m) const
    {
        const int slot = sigma_b_slot[static_cast<std::size_t>(e)];
        return slot < 0 ? -1 : sigma_b_begin + slot * (k + 1) + m;
    }
    int sigma_n(int e, int m) const { return sigma_n_begin + e * k + m; }
    /// Index into the u block (add num_lambda for the saddle-point system).
    int u(int t, int j) const { return t * dim_s + j; }

    /// Global lambda indices of the local weak dofs of element t in the
    /// order sigma_0, sigma_b (edges 0..2), sigma_n (edges 0..2); -1 marks an
    /// eliminated boundary sigma_b.
    std::vector<int> local_lambda_dofs(const Mesh& mesh, int t) const;
};

/// Builds the layout. Requires k >= 1 and 0 <= s <= k - 1.
DofLayout make_layout(const Mesh& mesh, int k, int s);

/// Coefficients of a weak function in DofLayout order (length num_lambda).
struct WeakFunction {
    Eigen::VectorXd coeffs;
};

/// Per-element P_s coefficients (length num_elements * dim P_s) in the
/// scaled-monomial basis of each element.
struct PrimalFunction {
    int degree = 0;
    Eigen::VectorXd coeffs;

    double evaluate(const Mesh& mesh, int t, const Vec2& x) const;
};

} // namespace pdwg

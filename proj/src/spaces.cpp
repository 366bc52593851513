#include "pdwg/spaces.hpp"

#include <string>

#include "pdwg/errors.hpp"
#include "pdwg/polybasis.hpp"

namespace pdwg {

DofLayout make_layout(const Mesh& mesh, int k, int s)
{
    if (k < 1)
        throw ConfigError("layout: k must be >= 1, got " + std::to_string(k));
    if (s < 0 || s > k - 1)
        throw ConfigError("layout: s must lie in [0, k-1], got s=" + std::to_string(s) +
                          " for k=" + std::to_string(k));

    DofLayout L;
    L.k = k;
    L.s = s;
    L.num_elements = static_cast<int>(mesh.num_elements());
    L.num_edges = static_cast<int>(mesh.num_edges());
    L.num_boundary_edges = static_cast<int>(mesh.num_boundary_edges());
    L.dim_k = triangle_basis_size(k);
    L.dim_s = triangle_basis_size(s);

    L.sigma_b_slot.assign(mesh.num_edges(), -1);
    int slot = 0;
    for (std::size_t e = 0; e < mesh.num_edges(); ++e)
        if (!mesh.edge(e).boundary)
            L.sigma_b_slot[e] = slot++;

    L.sigma0_begin = 0;
    L.sigma_b_begin = L.num_elements * L.dim_k;
    L.sigma_n_begin = L.sigma_b_begin + slot * (k + 1);
    L.num_lambda = L.sigma_n_begin + L.num_edges * k;
    L.num_u = L.num_elements * L.dim_s;
    return L;
}

std::vector<int> DofLayout::local_lambda_dofs(const Mesh& mesh, int t) const
{
    std::vector<int> dofs;
    dofs.reserve(static_cast<std::size_t>(dim_k + 3 * (k + 1) + 3 * k));
    for (int i = 0; i < dim_k; ++i)
        dofs.push_back(sigma0(t, i));
    const auto& edges = mesh.element_edges(static_cast<std::size_t>(t));
    for (int j = 0; j < 3; ++j)
        for (int m = 0; m <= k; ++m)
            dofs.push_back(sigma_b(edges[static_cast<std::size_t>(j)], m));
    for (int j = 0; j < 3; ++j)
        for (int m = 0; m < k; ++m)
            dofs.push_back(sigma_n(edges[static_cast<std::size_t>(j)], m));
    return dofs;
}

double PrimalFunction::evaluate(const Mesh& mesh, int t, const Vec2& x) const
{
    const auto tt = static_cast<std::size_t>(t);
    const TriangleBasis basis(degree, mesh.centroid(tt), mesh.diameter(tt));
    const int n = basis.size();
    return basis.values(x).dot(coeffs.segment(t * n, n));
}

} // namespace pdwg

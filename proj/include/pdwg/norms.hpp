#pragma once

#include <limits>
#include <string>
#include <vector>

#include "pdwg/mesh.hpp"
#include "pdwg/problems.hpp"
#include "pdwg/spaces.hpp"
#include "pdwg/weakops.hpp"

namespace pdwg {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (sum_T int_T |u - u_h|^q)^(1/q). For q = infinity the maximum over a
/// barycentric lattice of the given order plus the quadrature nodes.
double lq_error(const ScalarField& u, const PrimalFunction& uh, const Mesh& mesh, double q,
                int triangle_degree = 8, int lattice_order = 10);

/// (sum_T sum_{|a| <= m} int_T |D^a v|^p)^(1/p) for a piecewise polynomial v.
double broken_sobolev_norm(const PrimalFunction& v, const Mesh& mesh, int m, double p,
                           int triangle_degree = 8);

/// The sigma_0 component of a weak function as a piecewise polynomial.
PrimalFunction interior_part(const DofLayout& layout, const WeakFunction& lambda);

/// s(lambda, lambda) = sum_T h_T^(1-2p) int_dT |lambda_0 - lambda_b|^p
///                   + h_T^(1-p) int_dT |alpha grad lambda_0 . n - lambda_n|^p.
double stabilizer_value(const Mesh& mesh, const DofLayout& layout, const WeakFunction& lambda,
                        double p, const ProblemSpec& problem, const QuadratureOptions& quad = {});

/// log(E[i-1] / E[i]) / log(h[i-1] / h[i]) for i >= 1.
std::vector<double> convergence_rates(const std::vector<double>& errors,
                                      const std::vector<double>& hs);

struct ConvergenceColumn {
    std::string name;
    std::vector<double> values;
    std::vector<double> rates;   // rates[0] is NaN
};

struct ConvergenceTable {
    std::vector<double> h;
    std::vector<int> iterations;
    std::vector<ConvergenceColumn> columns;

    std::size_t levels() const { return h.size(); }
    const ConvergenceColumn& column(const std::string& name) const;
};

/// Builds a table from per-level values; every column gets a rate column.
ConvergenceTable rates_table(const std::vector<double>& hs,
                             const std::vector<std::pair<std::string, std::vector<double>>>& columns,
                             const std::vector<int>& iterations = {});

} // namespace pdwg

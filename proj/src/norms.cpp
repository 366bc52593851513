#include "pdwg/norms.hpp"

#include <algorithm>
#include <cmath>

#include "pdwg/errors.hpp"
#include "pdwg/polybasis.hpp"

namespace pdwg {

namespace {

TriangleBasis basis_of(const Mesh& mesh, std::size_t t, int degree)
{
    return TriangleBasis(degree, mesh.centroid(t), mesh.diameter(t));
}

std::vector<Vec2> lattice_points(const std::array<Vec2, 3>& v, int order)
{
    std::vector<Vec2> pts;
    for (int i = 0; i <= order; ++i)
        for (int j = 0; j <= order - i; ++j) {
            const double a = static_cast<double>(i) / order;
            const double b = static_cast<double>(j) / order;
            pts.push_back((1.0 - a - b) * v[0] + a * v[1] + b * v[2]);
        }
    return pts;
}

} // namespace

double lq_error(const ScalarField& u, const PrimalFunction& uh, const Mesh& mesh, double q,
                int triangle_degree, int lattice_order)
{
    if (!(q >= 1.0))
        throw ConfigError("lq_error: q must be >= 1");
    const TriangleRule rule = triangle_rule(triangle_degree);
    const int n = triangle_basis_size(uh.degree);
    double acc = 0.0;
    for (std::size_t t = 0; t < mesh.num_elements(); ++t) {
        const TriangleBasis basis = basis_of(mesh, t, uh.degree);
        const Eigen::VectorXd c = uh.coeffs.segment(static_cast<Eigen::Index>(t) * n, n);
        const ElementGeometry geom = mesh.element_geometry(t);
        const MappedRule mr = map_rule(rule, geom.vertices);
        if (std::isinf(q)) {
            std::vector<Vec2> pts = lattice_points(geom.vertices, lattice_order);
            pts.insert(pts.end(), mr.points.begin(), mr.points.end());
            const Eigen::VectorXd vals = basis.evaluate(pts).value * c;
            for (std::size_t i = 0; i < pts.size(); ++i)
                acc = std::max(acc, std::abs(u(pts[i]) - vals[static_cast<Eigen::Index>(i)]));
        } else {
            const Eigen::VectorXd vals = basis.evaluate(mr.points).value * c;
            for (std::size_t i = 0; i < mr.points.size(); ++i)
                acc += mr.weights[i] *
                       std::pow(std::abs(u(mr.points[i]) - vals[static_cast<Eigen::Index>(i)]), q);
        }
    }
    return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

double broken_sobolev_norm(const PrimalFunction& v, const Mesh& mesh, int m, double p,
                           int triangle_degree)
{
    if (m < 0 || m > 2)
        throw ConfigError("broken_sobolev_norm: m must be 0, 1 or 2");
    if (!(p >= 1.0))
        throw ConfigError("broken_sobolev_norm: p must be >= 1");
    const TriangleRule rule = triangle_rule(triangle_degree);
    const int n = triangle_basis_size(v.degree);
    double acc = 0.0;
    for (std::size_t t = 0; t < mesh.num_elements(); ++t) {
        const TriangleBasis basis = basis_of(mesh, t, v.degree);
        const Eigen::VectorXd c = v.coeffs.segment(static_cast<Eigen::Index>(t) * n, n);
        const MappedRule mr = map_rule(rule, mesh.element_geometry(t).vertices);
        const BasisTable tb = basis.evaluate(mr.points);
        const auto w = Eigen::Map<const Eigen::VectorXd>(mr.weights.data(),
                                                         static_cast<Eigen::Index>(mr.weights.size()));
        auto add = [&](const Eigen::MatrixXd& table) {
            acc += w.dot((table * c).cwiseAbs().array().pow(p).matrix());
        };
        add(tb.value);
        if (m >= 1) {
            add(tb.dx);
            add(tb.dy);
        }
        if (m >= 2) {
            add(tb.dxx);
            add(tb.dxy);
            add(tb.dyy);
        }
    }
    return std::pow(acc, 1.0 / p);
}

PrimalFunction interior_part(const DofLayout& layout, const WeakFunction& lambda)
{
    PrimalFunction out;
    out.degree = layout.k;
    out.coeffs = lambda.coeffs.segment(layout.sigma0_begin, layout.num_elements * layout.dim_k);
    return out;
}

double stabilizer_value(const Mesh& mesh, const DofLayout& layout, const WeakFunction& lambda,
                        double p, const ProblemSpec& problem, const QuadratureOptions& quad)
{
    if (!(p >= 1.0))
        throw ConfigError("stabilizer_value: p must be >= 1");
    double acc = 0.0;
    for (int t = 0; t < layout.num_elements; ++t) {
        const ElementGeometry geom = mesh.element_geometry(static_cast<std::size_t>(t));
        const Eigen::VectorXd dofs = gather_local(mesh, layout, lambda, t).flatten();
        const double alpha = problem.alpha(geom.region);
        const double h = geom.diameter;
        for (const LocalEdgeTraces& tr : local_edge_traces(geom, layout.k, quad)) {
            const Eigen::VectorXd za = tr.jump * dofs;
            const Eigen::VectorXd zb = (alpha * tr.grad_flux - tr.flux) * dofs;
            for (std::size_t q = 0; q < tr.rule.weights.size(); ++q) {
                const auto qi = static_cast<Eigen::Index>(q);
                acc += tr.rule.weights[q] * (std::pow(h, 1.0 - 2.0 * p) * std::pow(std::abs(za[qi]), p) +
                                             std::pow(h, 1.0 - p) * std::pow(std::abs(zb[qi]), p));
            }
        }
    }
    return acc;
}

std::vector<double> convergence_rates(const std::vector<double>& errors,
                                      const std::vector<double>& hs)
{
    if (errors.size() != hs.size())
        throw ConfigError("convergence_rates: " + std::to_string(errors.size()) + " errors for " +
                          std::to_string(hs.size()) + " mesh sizes");
    std::vector<double> rates;
    for (std::size_t i = 1; i < errors.size(); ++i)
        rates.push_back(std::log(errors[i - 1] / errors[i]) / std::log(hs[i - 1] / hs[i]));
    return rates;
}

const ConvergenceColumn& ConvergenceTable::column(const std::string& name) const
{
    for (const auto& c : columns)
        if (c.name == name)
            return c;
    throw Error("ConvergenceTable: no column '" + name + "'");
}

ConvergenceTable rates_table(const std::vector<double>& hs,
                             const std::vector<std::pair<std::string, std::vector<double>>>& columns,
                             const std::vector<int>& iterations)
{
    if (hs.size() < 2)
        throw ConfigError("rates_table: at least two levels are needed");
    for (std::size_t i = 1; i < hs.size(); ++i)
        if (!(hs[i] < hs[i - 1]))
            throw ConfigError("rates_table: mesh sizes must decrease strictly");
    ConvergenceTable table;
    table.h = hs;
    table.iterations = iterations;
    for (const auto& [name, values] : columns) {
        ConvergenceColumn col;
        col.name = name;
        col.values = values;
        col.rates = convergence_rates(values, hs);
        col.rates.insert(col.rates.begin(), std::nan(""));
        table.columns.push_back(std::move(col));
    }
    return table;
}

} // namespace pdwg

#include "pdwg/assembly.hpp"

#include <cmath>
#include <string>

#include "pdwg/errors.hpp"
#include "pdwg/parallel.hpp"

namespace pdwg {

namespace {

Eigen::Map<const Eigen::VectorXd> as_vector(const std::vector<double>& w)
{
    return {w.data(), static_cast<Eigen::Index>(w.size())};
}

} // namespace

DofLayout layout_dofs(const Mesh& mesh, int k, int s, bool convective)
{
    if (k < 1)
        throw ConfigError("k must be >= 1, got " + std::to_string(k));
    if (s != k - 1 && s != k - 2)
        throw ConfigError("s must be k-1 or k-2, got s=" + std::to_string(s) + " for k=" +
                          std::to_string(k));
    if (s < 0)
        throw ConfigError("s = k-2 needs k >= 2");
    if (convective && s != k - 1)
        throw ConfigError("problems with convection require s = k-1");
    return make_layout(mesh, k, s);
}

Eigen::MatrixXd local_coupling(const ElementGeometry& geom, int k, int s,
                               const ProblemSpec& problem, const QuadratureOptions& quad)
{
    const LocalLayout L(k);
    const LocalOperatorMatrices op = local_weak_operators(geom, k, s, quad);
    const double alpha = problem.alpha(geom.region);

    Eigen::MatrixXd lap = op.laplacian_moments;
    lap.leftCols(L.dim_k + 3 * (k + 1)) *= alpha;
    Eigen::MatrixXd C = -lap;

    if (problem.beta) {
        // (v, beta . grad_w lambda) with beta sampled at the quadrature nodes.
        const TriangleBasis w = element_basis(geom, s);
        const MappedRule rule = map_rule(triangle_rule(quad.triangle(k)), geom.vertices);
        const BasisTable tw = w.evaluate(rule.points);
        const auto nq = static_cast<Eigen::Index>(rule.points.size());
        Eigen::VectorXd bx(nq), by(nq);
        for (Eigen::Index q = 0; q < nq; ++q) {
            const Vec2 b = problem.beta(rule.points[static_cast<std::size_t>(q)]);
            bx[q] = b.x() * rule.weights[static_cast<std::size_t>(q)];
            by[q] = b.y() * rule.weights[static_cast<std::size_t>(q)];
        }
        if (bx.cwiseAbs().maxCoeff() > 0.0 || by.cwiseAbs().maxCoeff() > 0.0) {
            const Eigen::MatrixXd mx = tw.value.transpose() * bx.asDiagonal() * tw.value;
            const Eigen::MatrixXd my = tw.value.transpose() * by.asDiagonal() * tw.value;
            C -= mx * op.grad_x + my * op.grad_y;
        }
    }
    return C;
}

Eigen::MatrixXd local_stabilizer(const ElementGeometry& geom, int k,
                                 const Eigen::VectorXd& lambda_prev, double p, double eps,
                                 double alpha, const QuadratureOptions& quad)
{
    if (p < 1.0)
        throw ConfigError("p must be >= 1, got " + std::to_string(p));
    if (!(eps > 0.0))
        throw ConfigError("eps must be positive");
    const LocalLayout L(k);
    const double h = geom.diameter;
    const double scale_value = std::pow(h, 1.0 - 2.0 * p);
    const double scale_flux = std::pow(h, 1.0 - p);

    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(L.size(), L.size());
    for (const LocalEdgeTraces& tr : local_edge_traces(geom, k, quad)) {
        const Eigen::MatrixXd flux = alpha * tr.grad_flux - tr.flux;
        const Eigen::VectorXd za = tr.jump * lambda_prev;
        const Eigen::VectorXd zb = flux * lambda_prev;
        const auto w = as_vector(tr.rule.weights);
        Eigen::VectorXd wa(w.size()), wb(w.size());
        for (Eigen::Index q = 0; q < w.size(); ++q) {
            wa[q] = w[q] * std::pow(std::abs(za[q]) + eps, p - 2.0);
            wb[q] = w[q] * std::pow(std::abs(zb[q]) + eps, p - 2.0);
        }
        S.noalias() += scale_value * (tr.jump.transpose() * wa.asDiagonal() * tr.jump);
        S.noalias() += scale_flux * (flux.transpose() * wb.asDiagonal() * flux);
    }
    return S;
}

SparseMatrix assemble_B(const Mesh& mesh, const DofLayout& layout, const ProblemSpec& problem,
                        const QuadratureOptions& quad)
{
    const auto nt = static_cast<std::size_t>(layout.num_elements);
    std::vector<Eigen::MatrixXd> local(nt);
    parallel_for(nt, [&](std::size_t t) {
        local[t] = local_coupling(mesh.element_geometry(t), layout.k, layout.s, problem, quad);
    });

    SparseMatrix B(layout.num_u, layout.num_lambda);
    B.reserve(nt * static_cast<std::size_t>(local.empty() ? 0 : local[0].size()));
    for (std::size_t t = 0; t < nt; ++t) {
        const int ti = static_cast<int>(t);
        const std::vector<int> dofs = layout.local_lambda_dofs(mesh, ti);
        for (int i = 0; i < layout.dim_s; ++i)
            for (std::size_t c = 0; c < dofs.size(); ++c)
                if (dofs[c] >= 0)
                    B.add(layout.u(ti, i), dofs[c], local[t](i, static_cast<Eigen::Index>(c)));
    }
    B.finalize();
    return B;
}

SparseMatrix assemble_S(const Mesh& mesh, const DofLayout& layout, const WeakFunction& lambda_prev,
                        double p, double eps, const ProblemSpec& problem,
                        const QuadratureOptions& quad)
{
    if (lambda_prev.coeffs.size() != layout.num_lambda)
        throw Error("assemble_S: lambda has the wrong length");
    const auto nt = static_cast<std::size_t>(layout.num_elements);
    std::vector<Eigen::MatrixXd> local(nt);
    parallel_for(nt, [&](std::size_t t) {
        const ElementGeometry geom = mesh.element_geometry(t);
        const LocalWeakDofs prev = gather_local(mesh, layout, lambda_prev, static_cast<int>(t));
        local[t] = local_stabilizer(geom, layout.k, prev.flatten(), p, eps,
                                    problem.alpha(geom.region), quad);
    });

    SparseMatrix S(layout.num_lambda, layout.num_lambda);
    S.reserve(nt * static_cast<std::size_t>(local.empty() ? 0 : local[0].size()));
    for (std::size_t t = 0; t < nt; ++t) {
        const std::vector<int> dofs = layout.local_lambda_dofs(mesh, static_cast<int>(t));
        for (std::size_t r = 0; r < dofs.size(); ++r) {
            if (dofs[r] < 0)
                continue;
            for (std::size_t c = 0; c < dofs.size(); ++c)
                if (dofs[c] >= 0)
                    S.add(dofs[r], dofs[c],
                          local[t](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
        }
    }
    S.finalize();
    return S;
}

Eigen::VectorXd assemble_rhs(const Mesh& mesh, const DofLayout& layout, const ProblemSpec& problem,
                             const QuadratureOptions& quad)
{
    const int k = layout.k;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(layout.total());

    const TriangleRule trule = triangle_rule(quad.triangle(k));
    for (int t = 0; t < layout.num_elements; ++t) {
        const ElementGeometry geom = mesh.element_geometry(static_cast<std::size_t>(t));
        const MappedRule rule = map_rule(trule, geom.vertices);
        const BasisTable tb = element_basis(geom, k).evaluate(rule.points);
        Eigen::VectorXd fw(static_cast<Eigen::Index>(rule.points.size()));
        for (std::size_t q = 0; q < rule.points.size(); ++q)
            fw[static_cast<Eigen::Index>(q)] = problem.f(rule.points[q]) * rule.weights[q];
        rhs.segment(layout.sigma0(t, 0), layout.dim_k) = tb.value.transpose() * fw;
    }

    if (problem.psi && mesh.num_interface_edges() == 0)
        throw ConfigError("problem " + problem.id + " has interface data but the mesh has no "
                          "interface edges");

    const EdgeRule erule = edge_rule(quad.edge(k));
    const auto& verts = mesh.vertices();
    for (int e = 0; e < layout.num_edges; ++e) {
        const MeshEdge& me = mesh.edge(static_cast<std::size_t>(e));
        if (!me.boundary && !(me.interface && problem.psi))
            continue;
        const Vec2& a = verts[static_cast<std::size_t>(me.vertices[0])];
        const Vec2& b = verts[static_cast<std::size_t>(me.vertices[1])];
        const MappedEdgeRule er = map_rule(erule, a, b);
        const Eigen::MatrixXd psi = EdgeBasis(k, a, b).evaluate(er.params);
        const auto nq = static_cast<Eigen::Index>(er.points.size());
        Eigen::VectorXd vals(nq);
        if (me.boundary) {
            for (Eigen::Index q = 0; q < nq; ++q)
                vals[q] = -problem.g(er.points[static_cast<std::size_t>(q)]) *
                          er.weights[static_cast<std::size_t>(q)];
            rhs.segment(layout.sigma_n(e, 0), k) += psi.leftCols(k).transpose() * vals;
        } else {
            // Normal pointing out of the inner region.
            const bool first_inner =
                mesh.region(static_cast<std::size_t>(me.elements[0])) == Region::kInner;
            const Vec2 n = first_inner ? me.normal : Vec2(-me.normal);
            for (Eigen::Index q = 0; q < nq; ++q)
                vals[q] = problem.psi(er.points[static_cast<std::size_t>(q)], n) *
                          er.weights[static_cast<std::size_t>(q)];
            rhs.segment(layout.sigma_b(e, 0), k + 1) += psi.transpose() * vals;
        }
    }
    return rhs;
}

} // namespace pdwg

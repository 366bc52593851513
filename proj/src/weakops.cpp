#include "pdwg/weakops.hpp"

#include <algorithm>

#include <Eigen/Cholesky>

#include "pdwg/errors.hpp"

namespace pdwg {

namespace {

Eigen::MatrixXd spd_solve(const Eigen::MatrixXd& gram, const Eigen::MatrixXd& rhs, const char* what)
{
    const Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success)
        throw SingularMatrixError(std::string(what) + ": local Gram matrix is not positive definite");
    return llt.solve(rhs);
}

Eigen::Map<const Eigen::VectorXd> as_vector(const std::vector<double>& w)
{
    return {w.data(), static_cast<Eigen::Index>(w.size())};
}

} // namespace

int QuadratureOptions::triangle(int k) const
{
    return triangle_degree > 0 ? triangle_degree : std::min(2 * k + 4, kMaxTriangleDegree);
}

int QuadratureOptions::edge(int k) const
{
    return edge_points > 0 ? edge_points : k + 3;
}

TriangleBasis element_basis(const ElementGeometry& geom, int degree)
{
    return TriangleBasis(degree, geom.centroid, geom.diameter);
}

EdgeBasis edge_basis(const ElementEdge& edge, int degree)
{
    return EdgeBasis(degree, edge.start, edge.end);
}

Eigen::VectorXd LocalWeakDofs::flatten() const
{
    const LocalLayout L(k);
    Eigen::VectorXd v(L.size());
    v.head(L.dim_k) = sigma0;
    for (int j = 0; j < 3; ++j) {
        v.segment(L.sigma_b(j, 0), k + 1) = sigma_b[static_cast<std::size_t>(j)];
        v.segment(L.sigma_n(j, 0), k) = sigma_n[static_cast<std::size_t>(j)];
    }
    return v;
}

LocalWeakDofs LocalWeakDofs::unflatten(const ElementGeometry& geom, int k, const Eigen::VectorXd& v)
{
    const LocalLayout L(k);
    LocalWeakDofs d;
    d.element = geom.index;
    d.k = k;
    d.sigma0 = v.head(L.dim_k);
    for (int j = 0; j < 3; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        d.sigma_b[jj] = v.segment(L.sigma_b(j, 0), k + 1);
        d.sigma_n[jj] = v.segment(L.sigma_n(j, 0), k);
        d.sign[jj] = geom.edges[jj].sign;
    }
    return d;
}

LocalOperatorMatrices local_weak_operators(const ElementGeometry& geom, int k, int s,
                                           const QuadratureOptions& quad)
{
    const LocalLayout L(k);
    const TriangleBasis phi = element_basis(geom, k);
    const TriangleBasis w = element_basis(geom, s);
    const int ns = w.size();

    const MappedRule rule = map_rule(triangle_rule(quad.triangle(k)), geom.vertices);
    const auto wt = as_vector(rule.weights);
    const BasisTable tp = phi.evaluate(rule.points);
    const BasisTable tw = w.evaluate(rule.points);

    LocalOperatorMatrices op;
    op.s = s;
    op.mass = tw.value.transpose() * wt.asDiagonal() * tw.value;
    op.laplacian_moments = Eigen::MatrixXd::Zero(ns, L.size());
    op.grad_x_moments = Eigen::MatrixXd::Zero(ns, L.size());
    op.grad_y_moments = Eigen::MatrixXd::Zero(ns, L.size());

    // (sigma_0, lap w)_T and -(sigma_0, div phi)_T
    const Eigen::MatrixXd lap_w = tw.dxx + tw.dyy;
    op.laplacian_moments.leftCols(L.dim_k) = lap_w.transpose() * wt.asDiagonal() * tp.value;
    op.grad_x_moments.leftCols(L.dim_k) = -tw.dx.transpose() * wt.asDiagonal() * tp.value;
    op.grad_y_moments.leftCols(L.dim_k) = -tw.dy.transpose() * wt.asDiagonal() * tp.value;

    const EdgeRule erule = edge_rule(quad.edge(k));
    for (int j = 0; j < 3; ++j) {
        const ElementEdge& e = geom.edges[static_cast<std::size_t>(j)];
        const MappedEdgeRule er = map_rule(erule, e.start, e.end);
        const auto ew = as_vector(er.weights);
        const BasisTable te = w.evaluate(er.points);
        const Eigen::MatrixXd psi = edge_basis(e, k).evaluate(er.params);
        const Eigen::MatrixXd dwdn = te.dx * e.outward.x() + te.dy * e.outward.y();

        // -<sigma_b, grad w . n> + <sign sigma_n, w>
        op.laplacian_moments.middleCols(L.sigma_b(j, 0), k + 1) =
            -dwdn.transpose() * ew.asDiagonal() * psi;
        op.laplacian_moments.middleCols(L.sigma_n(j, 0), k) =
            e.sign * te.value.transpose() * ew.asDiagonal() * psi.leftCols(k);
        // <sigma_b, phi . n>
        op.grad_x_moments.middleCols(L.sigma_b(j, 0), k + 1) =
            e.outward.x() * te.value.transpose() * ew.asDiagonal() * psi;
        op.grad_y_moments.middleCols(L.sigma_b(j, 0), k + 1) =
            e.outward.y() * te.value.transpose() * ew.asDiagonal() * psi;
    }

    op.laplacian = spd_solve(op.mass, op.laplacian_moments, "weak Laplacian");
    op.grad_x = spd_solve(op.mass, op.grad_x_moments, "weak gradient");
    op.grad_y = spd_solve(op.mass, op.grad_y_moments, "weak gradient");
    return op;
}

Eigen::MatrixXd weak_laplacian_local(const ElementGeometry& geom, int k, int s,
                                     const QuadratureOptions& quad)
{
    return local_weak_operators(geom, k, s, quad).laplacian;
}

std::array<Eigen::MatrixXd, 2> weak_gradient_local(const ElementGeometry& geom, int k, int s,
                                                   const QuadratureOptions& quad)
{
    LocalOperatorMatrices op = local_weak_operators(geom, k, s, quad);
    return {std::move(op.grad_x), std::move(op.grad_y)};
}

std::array<LocalEdgeTraces, 3> local_edge_traces(const ElementGeometry& geom, int k,
                                                 const QuadratureOptions& quad)
{
    const LocalLayout L(k);
    const TriangleBasis phi = element_basis(geom, k);
    const EdgeRule erule = edge_rule(quad.edge(k));
    std::array<LocalEdgeTraces, 3> out;
    for (int j = 0; j < 3; ++j) {
        const ElementEdge& e = geom.edges[static_cast<std::size_t>(j)];
        LocalEdgeTraces& tr = out[static_cast<std::size_t>(j)];
        tr.rule = map_rule(erule, e.start, e.end);
        const auto nq = static_cast<Eigen::Index>(tr.rule.points.size());
        const BasisTable tp = phi.evaluate(tr.rule.points);
        const Eigen::MatrixXd psi = edge_basis(e, k).evaluate(tr.rule.params);

        tr.jump = Eigen::MatrixXd::Zero(nq, L.size());
        tr.grad_flux = Eigen::MatrixXd::Zero(nq, L.size());
        tr.flux = Eigen::MatrixXd::Zero(nq, L.size());
        tr.jump.leftCols(L.dim_k) = tp.value;
        tr.jump.middleCols(L.sigma_b(j, 0), k + 1) = -psi;
        tr.grad_flux.leftCols(L.dim_k) = tp.dx * e.outward.x() + tp.dy * e.outward.y();
        tr.flux.middleCols(L.sigma_n(j, 0), k) = e.sign * psi.leftCols(k);
    }
    return out;
}

Eigen::VectorXd project_element(const ElementGeometry& geom, int degree, const ScalarField& fn,
                                const QuadratureOptions& quad)
{
    const TriangleBasis basis = element_basis(geom, degree);
    const MappedRule rule = map_rule(triangle_rule(quad.triangle(std::max(degree, 1))), geom.vertices);
    const BasisTable t = basis.evaluate(rule.points);
    Eigen::VectorXd f(static_cast<Eigen::Index>(rule.points.size()));
    for (std::size_t q = 0; q < rule.points.size(); ++q)
        f[static_cast<Eigen::Index>(q)] = fn(rule.points[q]);
    const auto wt = as_vector(rule.weights);
    const Eigen::MatrixXd gram = t.value.transpose() * wt.asDiagonal() * t.value;
    const Eigen::VectorXd rhs = t.value.transpose() * wt.cwiseProduct(f);
    return spd_solve(gram, rhs, "projection");
}

namespace {

// Projections of the trace of w and of grad w . n_e onto P_k(e), P_{k-1}(e).
void project_edge(const Vec2& start, const Vec2& end, const Vec2& normal, int k,
                  const ScalarField& w, const VectorField& grad_w, const QuadratureOptions& quad,
                  Eigen::VectorXd& sigma_b, Eigen::VectorXd& sigma_n)
{
    const MappedEdgeRule er = map_rule(edge_rule(quad.edge(k)), start, end);
    const EdgeBasis eb(k, start, end);
    const Eigen::MatrixXd psi = eb.evaluate(er.params);
    const auto ew = as_vector(er.weights);
    const auto nq = static_cast<Eigen::Index>(er.points.size());
    Eigen::VectorXd fv(nq), fn(nq);
    for (Eigen::Index q = 0; q < nq; ++q) {
        const Vec2& x = er.points[static_cast<std::size_t>(q)];
        fv[q] = w(x);
        fn[q] = grad_w(x).dot(normal);
    }
    const Eigen::MatrixXd gram = psi.transpose() * ew.asDiagonal() * psi;
    sigma_b = spd_solve(gram, psi.transpose() * ew.cwiseProduct(fv), "trace projection");
    if (k == 0) {
        sigma_n.resize(0);
        return;
    }
    const Eigen::MatrixXd chi = psi.leftCols(k);
    sigma_n = spd_solve(gram.topLeftCorner(k, k), chi.transpose() * ew.cwiseProduct(fn),
                        "normal projection");
}

} // namespace

LocalWeakDofs project_weak_local(const ElementGeometry& geom, int k, const ScalarField& w,
                                 const VectorField& grad_w, const QuadratureOptions& quad)
{
    LocalWeakDofs d;
    d.element = geom.index;
    d.k = k;
    d.sigma0 = project_element(geom, k, w, quad);
    for (int j = 0; j < 3; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        const ElementEdge& e = geom.edges[jj];
        d.sign[jj] = e.sign;
        // Stored in the edge-normal orientation, which is sign * outward.
        project_edge(e.start, e.end, e.sign * e.outward, k, w, grad_w, quad, d.sigma_b[jj],
                     d.sigma_n[jj]);
    }
    return d;
}

WeakFunction project_weak(const Mesh& mesh, const DofLayout& layout, const ScalarField& w,
                          const VectorField& grad_w, const QuadratureOptions& quad)
{
    const int k = layout.k;
    WeakFunction out;
    out.coeffs = Eigen::VectorXd::Zero(layout.num_lambda);
    for (int t = 0; t < layout.num_elements; ++t) {
        const Eigen::VectorXd c =
            project_element(mesh.element_geometry(static_cast<std::size_t>(t)), k, w, quad);
        out.coeffs.segment(layout.sigma0(t, 0), layout.dim_k) = c;
    }
    const auto& verts = mesh.vertices();
    for (int e = 0; e < layout.num_edges; ++e) {
        const MeshEdge& me = mesh.edge(static_cast<std::size_t>(e));
        Eigen::VectorXd sb, sn;
        project_edge(verts[static_cast<std::size_t>(me.vertices[0])],
                     verts[static_cast<std::size_t>(me.vertices[1])], me.normal, k, w, grad_w, quad,
                     sb, sn);
        if (!me.boundary)
            out.coeffs.segment(layout.sigma_b(e, 0), k + 1) = sb;
        out.coeffs.segment(layout.sigma_n(e, 0), k) = sn;
    }
    return out;
}

PrimalFunction project_primal(const Mesh& mesh, int s, const ScalarField& fn,
                              const QuadratureOptions& quad)
{
    const int ns = triangle_basis_size(s);
    PrimalFunction out;
    out.degree = s;
    out.coeffs.resize(static_cast<Eigen::Index>(mesh.num_elements()) * ns);
    for (std::size_t t = 0; t < mesh.num_elements(); ++t)
        out.coeffs.segment(static_cast<Eigen::Index>(t) * ns, ns) =
            project_element(mesh.element_geometry(t), s, fn, quad);
    return out;
}

LocalWeakDofs gather_local(const Mesh& mesh, const DofLayout& layout, const WeakFunction& lambda,
                           int t)
{
    const ElementGeometry geom = mesh.element_geometry(static_cast<std::size_t>(t));
    const std::vector<int> dofs = layout.local_lambda_dofs(mesh, t);
    Eigen::VectorXd v(static_cast<Eigen::Index>(dofs.size()));
    for (std::size_t i = 0; i < dofs.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = dofs[i] < 0 ? 0.0 : lambda.coeffs[dofs[i]];
    return LocalWeakDofs::unflatten(geom, layout.k, v);
}

} // namespace pdwg

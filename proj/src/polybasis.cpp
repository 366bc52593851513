#include "pdwg/polybasis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pdwg/errors.hpp"

namespace pdwg {

// Defined in quadrature_tables.cpp.
TriangleRule triangle_table_rule(int degree);

TriangleRule triangle_rule(int degree)
{
    if (degree < 1 || degree > kMaxTriangleDegree)
        throw ConfigError("triangle_rule: degree must be in [1, " +
                          std::to_string(kMaxTriangleDegree) + "], got " + std::to_string(degree));
    return triangle_table_rule(degree);
}

EdgeRule edge_rule(int points)
{
    if (points < 1 || points > kMaxEdgePoints)
        throw ConfigError("edge_rule: number of points must be in [1, " +
                          std::to_string(kMaxEdgePoints) + "], got " + std::to_string(points));
    EdgeRule rule;
    rule.exactness = 2 * points - 1;
    rule.points.resize(static_cast<std::size_t>(points));
    rule.weights.resize(static_cast<std::size_t>(points));

    // Newton iteration on the Legendre polynomial P_n over [-1, 1].
    const int n = points;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16)
                break;
        }
        if (n == 1) {
            z = 0.0;
            dp = 1.0;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.points[lo] = {0.5 * (1.0 - z)};
        rule.points[hi] = {0.5 * (1.0 + z)};
        rule.weights[lo] = 0.5 * w;
        rule.weights[hi] = 0.5 * w;
    }
    return rule;
}

TriangleBasis::TriangleBasis(int degree, const Vec2& center, double scale)
    : degree_(degree), center_(center), scale_(scale)
{
    if (degree < 0)
        throw ConfigError("TriangleBasis: negative degree");
    if (!(scale > 0.0))
        throw ConfigError("TriangleBasis: scale must be positive");
}

std::array<int, 2> TriangleBasis::exponents(int i) const
{
    int d = 0;
    while (triangle_basis_size(d) <= i)
        ++d;
    const int b = i - d * (d + 1) / 2;
    return {d - b, b};
}

Eigen::VectorXd TriangleBasis::values(const Vec2& p) const
{
    const double x = (p.x() - center_.x()) / scale_;
    const double y = (p.y() - center_.y()) / scale_;
    Eigen::VectorXd v(size());
    int i = 0;
    for (int d = 0; d <= degree_; ++d)
        for (int b = 0; b <= d; ++b)
            v[i++] = std::pow(x, d - b) * std::pow(y, b);
    return v;
}

Eigen::Matrix<double, 2, Eigen::Dynamic> TriangleBasis::gradients(const Vec2& p) const
{
    const Vec2 pts[1] = {p};
    const BasisTable t = evaluate(pts);
    Eigen::Matrix<double, 2, Eigen::Dynamic> g(2, size());
    g.row(0) = t.dx.row(0);
    g.row(1) = t.dy.row(0);
    return g;
}

BasisTable TriangleBasis::evaluate(std::span<const Vec2> points) const
{
    const auto np = static_cast<Eigen::Index>(points.size());
    const int n = size();
    BasisTable t;
    t.value.resize(np, n);
    t.dx.resize(np, n);
    t.dy.resize(np, n);
    t.dxx.resize(np, n);
    t.dxy.resize(np, n);
    t.dyy.resize(np, n);

    // powers[k] = x^k with the convention x^(-1) = 0 handled by the coefficients below.
    std::vector<double> px(static_cast<std::size_t>(degree_ + 1)), py(px.size());
    const double inv = 1.0 / scale_;
    auto pw = [](const std::vector<double>& pows, int k) { return k < 0 ? 0.0 : pows[static_cast<std::size_t>(k)]; };

    for (Eigen::Index q = 0; q < np; ++q) {
        const double x = (points[static_cast<std::size_t>(q)].x() - center_.x()) * inv;
        const double y = (points[static_cast<std::size_t>(q)].y() - center_.y()) * inv;
        px[0] = py[0] = 1.0;
        for (int k = 1; k <= degree_; ++k) {
            px[static_cast<std::size_t>(k)] = px[static_cast<std::size_t>(k - 1)] * x;
            py[static_cast<std::size_t>(k)] = py[static_cast<std::size_t>(k - 1)] * y;
        }
        int i = 0;
        for (int d = 0; d <= degree_; ++d)
            for (int b = 0; b <= d; ++b, ++i) {
                const int a = d - b;
                t.value(q, i) = pw(px, a) * pw(py, b);
                t.dx(q, i) = a * pw(px, a - 1) * pw(py, b) * inv;
                t.dy(q, i) = b * pw(px, a) * pw(py, b - 1) * inv;
                t.dxx(q, i) = a * (a - 1) * pw(px, a - 2) * pw(py, b) * inv * inv;
                t.dxy(q, i) = a * b * pw(px, a - 1) * pw(py, b - 1) * inv * inv;
                t.dyy(q, i) = b * (b - 1) * pw(px, a) * pw(py, b - 2) * inv * inv;
            }
    }
    return t;
}

EdgeBasis::EdgeBasis(int degree, const Vec2& start, const Vec2& end)
    : degree_(degree), start_(start), end_(end)
{
    if (degree < 0)
        throw ConfigError("EdgeBasis: negative degree");
}

double EdgeBasis::parameter(const Vec2& p) const
{
    const Vec2 d = end_ - start_;
    return (p - start_).dot(d) / d.squaredNorm();
}

Eigen::VectorXd EdgeBasis::values(double t) const
{
    Eigen::VectorXd v(size());
    double tp = 1.0;
    for (int m = 0; m <= degree_; ++m, tp *= t)
        v[m] = tp;
    return v;
}

Eigen::MatrixXd EdgeBasis::evaluate(std::span<const double> ts) const
{
    Eigen::MatrixXd out(static_cast<Eigen::Index>(ts.size()), size());
    for (std::size_t q = 0; q < ts.size(); ++q)
        out.row(static_cast<Eigen::Index>(q)) = values(ts[q]).transpose();
    return out;
}

MappedRule map_rule(const TriangleRule& rule, const std::array<Vec2, 3>& v)
{
    const Vec2 e1 = v[1] - v[0];
    const Vec2 e2 = v[2] - v[0];
    const double jac = std::abs(e1.x() * e2.y() - e1.y() * e2.x());
    MappedRule m;
    m.points.reserve(rule.size());
    m.weights.reserve(rule.size());
    for (std::size_t q = 0; q < rule.size(); ++q) {
        m.points.push_back(v[0] + rule.points[q][0] * e1 + rule.points[q][1] * e2);
        m.weights.push_back(rule.weights[q] * jac);
    }
    return m;
}

MappedEdgeRule map_rule(const EdgeRule& rule, const Vec2& start, const Vec2& end)
{
    const double len = (end - start).norm();
    MappedEdgeRule m;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double t = rule.points[q][0];
        m.points.push_back(start + t * (end - start));
        m.params.push_back(t);
        m.weights.push_back(rule.weights[q] * len);
    }
    return m;
}

Eigen::MatrixXd mass_matrix(const TriangleBasis& basis, const MappedRule& rule)
{
    const BasisTable t = basis.evaluate(rule.points);
    const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(),
                                              static_cast<Eigen::Index>(rule.weights.size()));
    return t.value.transpose() * w.asDiagonal() * t.value;
}

} // namespace pdwg

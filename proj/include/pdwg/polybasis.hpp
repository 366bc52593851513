#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "pdwg/mesh.hpp"

namespace pdwg {

/// Quadrature rule on a reference cell: the triangle {x, y >= 0, x + y <= 1}
/// (Dim = 2, measure 1/2) or the interval [0, 1] (Dim = 1).
template <int Dim>
struct QuadratureRule {
    std::vector<std::array<double, Dim>> points;
    std::vector<double> weights;
    int exactness = 0;   // polynomial degree integrated exactly

    std::size_t size() const { return weights.size(); }
};

using TriangleRule = QuadratureRule<2>;
using EdgeRule = QuadratureRule<1>;

inline constexpr int kMaxTriangleDegree = 14;
inline constexpr int kMaxEdgePoints = 20;

/// Symmetric positive-weight rule exact at least to `degree` (1..14).
TriangleRule triangle_rule(int degree);

/// Gauss-Legendre rule with `points` nodes on [0, 1] (1..20).
EdgeRule edge_rule(int points);

/// Index of the scaled monomial x^a y^b in the degree-graded ordering
/// (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
constexpr int monomial_index(int a, int b)
{
    const int d = a + b;
    return d * (d + 1) / 2 + b;
}

constexpr int triangle_basis_size(int degree) { return (degree + 1) * (degree + 2) / 2; }

/// Values and derivatives of a basis at a set of points. Each matrix has one
/// row per point and one column per basis function.
struct BasisTable {
    Eigen::MatrixXd value, dx, dy, dxx, dxy, dyy;
};

/// Scaled centroid monomials ((x - xc) / h)^a ((y - yc) / h)^b, a + b <= degree.
class TriangleBasis {
public:
    TriangleBasis(int degree, const Vec2& center, double scale);

    int degree() const { return degree_; }
    int size() const { return triangle_basis_size(degree_); }
    const Vec2& center() const { return center_; }
    double scale() const { return scale_; }

    Eigen::VectorXd values(const Vec2& p) const;
    /// Row 0: d/dx, row 1: d/dy.
    Eigen::Matrix<double, 2, Eigen::Dynamic> gradients(const Vec2& p) const;
    BasisTable evaluate(std::span<const Vec2> points) const;

    /// Exponent pair (a, b) of basis function i.
    std::array<int, 2> exponents(int i) const;

private:
    int degree_;
    Vec2 center_;
    double scale_;
};

/// Monomials t^m, m <= degree, in the parameter t in [0, 1] running from
/// `start` to `end`. Both neighbours of an edge pass the same endpoints so
/// they agree on the coefficients.
class EdgeBasis {
public:
    EdgeBasis(int degree, const Vec2& start, const Vec2& end);

    int degree() const { return degree_; }
    int size() const { return degree_ + 1; }

    double parameter(const Vec2& p) const;
    Vec2 point(double t) const { return start_ + t * (end_ - start_); }
    Eigen::VectorXd values(double t) const;
    /// One row per parameter value.
    Eigen::MatrixXd evaluate(std::span<const double> ts) const;

private:
    int degree_;
    Vec2 start_, end_;
};

/// Physical quadrature points and weights on a triangle.
struct MappedRule {
    std::vector<Vec2> points;
    std::vector<double> weights;
};

MappedRule map_rule(const TriangleRule& rule, const std::array<Vec2, 3>& vertices);

/// Physical points on the segment start->end, together with their parameters.
struct MappedEdgeRule {
    std::vector<Vec2> points;
    std::vector<double> params;
    std::vector<double> weights;
};

MappedEdgeRule map_rule(const EdgeRule& rule, const Vec2& start, const Vec2& end);

/// Element mass (Gram) matrix of a triangle basis under the given rule.
Eigen::MatrixXd mass_matrix(const TriangleBasis& basis, const MappedRule& rule);

} // namespace pdwg

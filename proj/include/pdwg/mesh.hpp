#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

namespace pdwg {

using Vec2 = Eigen::Vector2d;

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rectangle {
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;

    double area() const { return (x1 - x0) * (y1 - y0); }
    double perimeter() const { return 2.0 * ((x1 - x0) + (y1 - y0)); }
};

inline constexpr Rectangle kUnitSquare{0.0, 0.0, 1.0, 1.0};

/// Region an element belongs to. Meshes without an interface use kSingle.
enum class Region : std::uint8_t { kSingle = 0, kInner = 1, kOuter = 2 };

struct MeshEdge {
    std::array<int, 2> vertices{};          // vertices[0] < vertices[1]
    std::array<int, 2> elements{-1, -1};    // elements[0] < elements[1]; -1 if absent
    Vec2 normal = Vec2::Zero();             // unit; from elements[0] into elements[1], outward on the boundary
    double length = 0.0;
    bool boundary = false;
    bool interface = false;
};

/// Relation of a straight mesh edge to an interface curve.
enum class EdgeRelation { kDisjoint, kOnInterface, kCrossing };

/// Mesh-aligned interface description. `classify` decides how a segment
/// relates to the curve; `inside` tells whether a point lies in the inner
/// region.
struct InterfaceGeometry {
    std::function<EdgeRelation(const Vec2&, const Vec2&)> classify;
    std::function<bool(const Vec2&)> inside;
};

/// Interface given by the boundary of an axis-aligned box.
InterfaceGeometry box_interface(const Rectangle& box);

/// Per-element edge data seen from one element.
struct ElementEdge {
    int edge = -1;       // global edge index
    Vec2 start, end;     // endpoints ordered by global vertex index
    Vec2 outward;        // outward unit normal of the element
    double length = 0.0;
    double sign = 1.0;   // outward = sign * edge normal
    bool boundary = false;
    bool interface = false;
};

/// Geometry of one triangle as needed by the local operators.
struct ElementGeometry {
    int index = -1;
    std::array<Vec2, 3> vertices;
    Vec2 centroid;
    double area = 0.0;
    double diameter = 0.0;   // longest edge
    Region region = Region::kSingle;
    std::array<ElementEdge, 3> edges;   // edge j is opposite vertex j
};

/// Conforming triangulation. Immutable once built.
class Mesh {
public:
    /// Builds connectivity from raw vertices and triangles. Triangles with
    /// clockwise orientation are reordered to counter-clockwise.
    static Mesh from_triangles(std::vector<Vec2> vertices,
                               std::vector<std::array<int, 3>> triangles);

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_elements() const { return triangles_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t num_boundary_edges() const { return num_boundary_edges_; }
    std::size_t num_interface_edges() const;

    const std::vector<Vec2>& vertices() const { return vertices_; }
    const std::array<int, 3>& triangle(std::size_t t) const { return triangles_[t]; }
    const std::array<int, 3>& element_edges(std::size_t t) const { return element_edges_[t]; }
    const MeshEdge& edge(std::size_t e) const { return edges_[e]; }
    const std::vector<MeshEdge>& edges() const { return edges_; }

    double area(std::size_t t) const { return areas_[t]; }
    double diameter(std::size_t t) const { return diameters_[t]; }
    Region region(std::size_t t) const { return regions_[t]; }
    Vec2 centroid(std::size_t t) const;

    /// Global mesh size h = max over elements of the diameter.
    double h() const { return h_; }

    ElementGeometry element_geometry(std::size_t t) const;

    /// Sign relating the stored edge normal to the outward normal of `t`.
    double normal_sign(std::size_t t, int local_edge) const;

    /// Writes a plain-text dump (vertices, triangles, edges with flags).
    void write(std::ostream& os) const;

private:
    friend Mesh refine(const Mesh&);
    friend Mesh tag_interface(const Mesh&, const InterfaceGeometry&);

    std::vector<Vec2> vertices_;
    std::vector<std::array<int, 3>> triangles_;
    std::vector<std::array<int, 3>> element_edges_;
    std::vector<MeshEdge> edges_;
    std::vector<double> areas_;
    std::vector<double> diameters_;
    std::vector<Region> regions_;
    std::size_t num_boundary_edges_ = 0;
    double h_ = 0.0;
};

/// n x n squares over `domain`, each split along its SW-NE diagonal.
Mesh build_uniform(int n, const Rectangle& domain = kUnitSquare);

/// Midpoint subdivision of every triangle into four congruent children.
/// Region tags and interface flags are inherited.
Mesh refine(const Mesh& mesh);

/// Flags edges on the interface and tags element regions by centroid.
/// Throws AlignmentError if an edge crosses the interface.
Mesh tag_interface(const Mesh& mesh, const InterfaceGeometry& gamma);

} // namespace pdwg

#include "pdwg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>
#include <unordered_map>

#include "pdwg/errors.hpp"

namespace pdwg {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec2 outward_normal(const Vec2& from, const Vec2& to)
{
    const Vec2 d = to - from;
    return Vec2(d.y(), -d.x()) / d.norm();
}

} // namespace

Mesh Mesh::from_triangles(std::vector<Vec2> vertices,
                          std::vector<std::array<int, 3>> triangles)
{
    Mesh m;
    m.vertices_ = std::move(vertices);
    m.triangles_ = std::move(triangles);
    const auto nv = static_cast<int>(m.vertices_.size());
    const std::size_t nt = m.triangles_.size();
    if (nt == 0)
        throw ConfigError("mesh has no triangles");

    m.areas_.resize(nt);
    m.diameters_.resize(nt);
    m.regions_.assign(nt, Region::kSingle);
    m.element_edges_.resize(nt);

    std::unordered_map<std::uint64_t, int> edge_ids;
    edge_ids.reserve(3 * nt);

    for (std::size_t t = 0; t < nt; ++t) {
        auto& tri = m.triangles_[t];
        for (int v : tri)
            if (v < 0 || v >= nv)
                throw ConfigError("triangle " + std::to_string(t) + " references a missing vertex");
        const Vec2& p0 = m.vertices_[tri[0]];
        double twice_area = cross(m.vertices_[tri[1]] - p0, m.vertices_[tri[2]] - p0);
        if (twice_area < 0.0) {
            std::swap(tri[1], tri[2]);
            twice_area = -twice_area;
        }
        if (!(twice_area > 0.0))
            throw ConfigError("degenerate triangle " + std::to_string(t));
        m.areas_[t] = 0.5 * twice_area;

        double diam = 0.0;
        for (int j = 0; j < 3; ++j) {
            const int a = tri[(j + 1) % 3];
            const int b = tri[(j + 2) % 3];
            diam = std::max(diam, (m.vertices_[b] - m.vertices_[a]).norm());

            const auto lo = static_cast<std::uint64_t>(std::min(a, b));
            const auto hi = static_cast<std::uint64_t>(std::max(a, b));
            const std::uint64_t key = (lo << 32) | hi;
            auto [it, inserted] = edge_ids.try_emplace(key, static_cast<int>(m.edges_.size()));
            if (inserted) {
                MeshEdge e;
                e.vertices = {static_cast<int>(lo), static_cast<int>(hi)};
                e.elements = {static_cast<int>(t), -1};
                e.length = (m.vertices_[b] - m.vertices_[a]).norm();
                e.normal = outward_normal(m.vertices_[a], m.vertices_[b]);
                m.edges_.push_back(e);
            } else {
                MeshEdge& e = m.edges_[it->second];
                if (e.elements[1] >= 0)
                    throw ConfigError("edge shared by more than two triangles");
                e.elements[1] = static_cast<int>(t);
            }
            m.element_edges_[t][j] = it->second;
        }
        m.diameters_[t] = diam;
        m.h_ = std::max(m.h_, diam);
    }

    for (auto& e : m.edges_) {
        e.boundary = e.elements[1] < 0;
        if (e.boundary)
            ++m.num_boundary_edges_;
    }
    return m;
}

std::size_t Mesh::num_interface_edges() const
{
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [](const MeshEdge& e) { return e.interface; }));
}

Vec2 Mesh::centroid(std::size_t t) const
{
    const auto& tri = triangles_[t];
    return (vertices_[tri[0]] + vertices_[tri[1]] + vertices_[tri[2]]) / 3.0;
}

double Mesh::normal_sign(std::size_t t, int local_edge) const
{
    const MeshEdge& e = edges_[element_edges_[t][local_edge]];
    return e.elements[0] == static_cast<int>(t) ? 1.0 : -1.0;
}

ElementGeometry Mesh::element_geometry(std::size_t t) const
{
    ElementGeometry g;
    g.index = static_cast<int>(t);
    const auto& tri = triangles_[t];
    for (int i = 0; i < 3; ++i)
        g.vertices[i] = vertices_[tri[i]];
    g.centroid = centroid(t);
    g.area = areas_[t];
    g.diameter = diameters_[t];
    g.region = regions_[t];
    for (int j = 0; j < 3; ++j) {
        const int eid = element_edges_[t][j];
        const MeshEdge& e = edges_[eid];
        ElementEdge& le = g.edges[j];
        le.edge = eid;
        le.start = vertices_[e.vertices[0]];
        le.end = vertices_[e.vertices[1]];
        le.length = e.length;
        le.sign = normal_sign(t, j);
        le.outward = le.sign * e.normal;
        le.boundary = e.boundary;
        le.interface = e.interface;
    }
    return g;
}

void Mesh::write(std::ostream& os) const
{
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << std::setprecision(17);
    os << "vertices " << vertices_.size() << '\n';
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        os << i << ' ' << vertices_[i].x() << ' ' << vertices_[i].y() << '\n';
    os << "triangles " << triangles_.size() << '\n';
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const auto& tri = triangles_[t];
        os << t << ' ' << tri[0] << ' ' << tri[1] << ' ' << tri[2] << ' '
           << static_cast<int>(regions_[t]) << '\n';
    }
    os << "edges " << edges_.size() << '\n';
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        os << i << ' ' << e.vertices[0] << ' ' << e.vertices[1] << ' ' << e.elements[0] << ' '
           << e.elements[1] << ' ' << e.normal.x() << ' ' << e.normal.y() << ' '
           << (e.boundary ? 1 : 0) << ' ' << (e.interface ? 1 : 0) << '\n';
    }
    os.flags(flags);
    os.precision(prec);
}

Mesh build_uniform(int n, const Rectangle& domain)
{
    if (n < 1)
        throw ConfigError("build_uniform: n must be positive, got " + std::to_string(n));
    if (!(domain.x1 > domain.x0) || !(domain.y1 > domain.y0))
        throw ConfigError("build_uniform: degenerate rectangle");

    std::vector<Vec2> vertices;
    vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
    const double dx = (domain.x1 - domain.x0) / n;
    const double dy = (domain.y1 - domain.y0) / n;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            // Pin the far side exactly so refinement keeps boundary coordinates.
            const double x = i == n ? domain.x1 : domain.x0 + i * dx;
            const double y = j == n ? domain.y1 : domain.y0 + j * dy;
            vertices.emplace_back(x, y);
        }

    auto id = [n](int i, int j) { return j * (n + 1) + i; };
    std::vector<std::array<int, 3>> triangles;
    triangles.reserve(static_cast<std::size_t>(2 * n * n));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int sw = id(i, j), se = id(i + 1, j), nw = id(i, j + 1), ne = id(i + 1, j + 1);
            triangles.push_back({sw, se, ne});
            triangles.push_back({sw, ne, nw});
        }
    return Mesh::from_triangles(std::move(vertices), std::move(triangles));
}

Mesh refine(const Mesh& mesh)
{
    const int nv = static_cast<int>(mesh.num_vertices());
    std::vector<Vec2> vertices = mesh.vertices();
    vertices.reserve(mesh.num_vertices() + mesh.num_edges());
    for (const auto& e : mesh.edges())
        vertices.push_back(0.5 * (mesh.vertices()[e.vertices[0]] + mesh.vertices()[e.vertices[1]]));

    std::vector<std::array<int, 3>> triangles;
    triangles.reserve(4 * mesh.num_elements());
    for (std::size_t t = 0; t < mesh.num_elements(); ++t) {
        const auto& v = mesh.triangle(t);
        const auto& le = mesh.element_edges(t);
        // midpoint opposite vertex j
        const int m0 = nv + le[0], m1 = nv + le[1], m2 = nv + le[2];
        triangles.push_back({v[0], m2, m1});
        triangles.push_back({m2, v[1], m0});
        triangles.push_back({m1, m0, v[2]});
        triangles.push_back({m0, m1, m2});
    }

    Mesh fine = Mesh::from_triangles(std::move(vertices), std::move(triangles));
    for (std::size_t t = 0; t < mesh.num_elements(); ++t)
        for (std::size_t c = 0; c < 4; ++c)
            fine.regions_[4 * t + c] = mesh.regions_[t];

    // A fine edge lies on a coarse edge iff it joins a coarse endpoint to that
    // edge's midpoint.
    for (auto& e : fine.edges_) {
        const int mid = e.vertices[1];
        if (mid < nv || e.vertices[0] >= nv)
            continue;
        const MeshEdge& parent = mesh.edge(static_cast<std::size_t>(mid - nv));
        if (parent.vertices[0] == e.vertices[0] || parent.vertices[1] == e.vertices[0])
            e.interface = parent.interface;
    }
    return fine;
}

Mesh tag_interface(const Mesh& mesh, const InterfaceGeometry& gamma)
{
    Mesh tagged = mesh;
    for (std::size_t i = 0; i < tagged.edges_.size(); ++i) {
        MeshEdge& e = tagged.edges_[i];
        const Vec2& a = tagged.vertices_[e.vertices[0]];
        const Vec2& b = tagged.vertices_[e.vertices[1]];
        switch (gamma.classify(a, b)) {
        case EdgeRelation::kCrossing:
            throw AlignmentError("edge " + std::to_string(i) +
                                 " crosses the interface; the mesh must resolve it");
        case EdgeRelation::kOnInterface:
            e.interface = true;
            break;
        case EdgeRelation::kDisjoint:
            e.interface = false;
            break;
        }
    }
    for (std::size_t t = 0; t < tagged.num_elements(); ++t)
        tagged.regions_[t] = gamma.inside(tagged.centroid(t)) ? Region::kInner : Region::kOuter;
    return tagged;
}

InterfaceGeometry box_interface(const Rectangle& box)
{
    const double tol = 1e-12 * std::max(1.0, std::max(box.x1 - box.x0, box.y1 - box.y0));

    // Relation of segment ab to the axis-aligned side {coord[axis] == level, other in [lo, hi]}.
    auto side_relation = [tol](const Vec2& a, const Vec2& b, int axis, double level, double lo,
                               double hi) {
        const int other = 1 - axis;
        const double da = a[axis] - level;
        const double db = b[axis] - level;
        if (std::abs(da) <= tol && std::abs(db) <= tol) {
            const double s0 = std::min(a[other], b[other]);
            const double s1 = std::max(a[other], b[other]);
            const double overlap = std::min(s1, hi) - std::max(s0, lo);
            if (overlap <= tol)
                return EdgeRelation::kDisjoint;
            return (s0 >= lo - tol && s1 <= hi + tol) ? EdgeRelation::kOnInterface
                                                      : EdgeRelation::kCrossing;
        }
        if ((da > tol && db < -tol) || (da < -tol && db > tol)) {
            const double s = da / (da - db);
            const double cut = a[other] + s * (b[other] - a[other]);
            if (cut >= lo - tol && cut <= hi + tol)
                return EdgeRelation::kCrossing;
        }
        return EdgeRelation::kDisjoint;
    };

    InterfaceGeometry g;
    g.classify = [box, side_relation](const Vec2& a, const Vec2& b) {
        const std::array<EdgeRelation, 4> rel = {
            side_relation(a, b, 0, box.x0, box.y0, box.y1),
            side_relation(a, b, 0, box.x1, box.y0, box.y1),
            side_relation(a, b, 1, box.y0, box.x0, box.x1),
            side_relation(a, b, 1, box.y1, box.x0, box.x1),
        };
        if (std::find(rel.begin(), rel.end(), EdgeRelation::kCrossing) != rel.end())
            return EdgeRelation::kCrossing;
        if (std::find(rel.begin(), rel.end(), EdgeRelation::kOnInterface) != rel.end())
            return EdgeRelation::kOnInterface;
        return EdgeRelation::kDisjoint;
    };
    g.inside = [box](const Vec2& p) {
        return p.x() > box.x0 && p.x() < box.x1 && p.y() > box.y0 && p.y() < box.y1;
    };
    return g;
}

} // namespace pdwg

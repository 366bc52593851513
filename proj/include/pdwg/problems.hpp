#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pdwg/mesh.hpp"
#include "pdwg/spaces.hpp"

namespace pdwg {

/// Interface flux jump psi(x, n), n the unit normal pointing out of the
/// inner region.
using InterfaceField = std::function<double(const Vec2&, const Vec2&)>;

/// Convection-diffusion problem
///   -div(alpha grad u) + div(beta u) = f  in each region,
///   u = g on the boundary,
///   [u] = 0, [(alpha grad u - beta u) . n] = psi on the interface.
struct ProblemSpec {
    std::string id;
    std::string description;
    VectorField beta;
    bool convective = false;         // beta not identically zero
    bool constant_beta = false;
    double alpha_inner = 1.0;
    double alpha_outer = 1.0;
    ScalarField f;
    ScalarField g;
    InterfaceField psi;              // empty without an interface
    std::optional<Rectangle> interface_box;
    ScalarField u_exact;
    VectorField grad_u_exact;
    Rectangle domain = kUnitSquare;
    int n_divisor = 1;               // mesh alignment: n must be a multiple

    double alpha(Region r) const { return r == Region::kInner ? alpha_inner : alpha_outer; }
    bool has_interface() const { return interface_box.has_value(); }

    /// Uniform n x n mesh with interface tags. Throws ConfigError when n
    /// violates the alignment constraint.
    Mesh build_mesh(int n) const;
    /// Tags interface edges and regions on an existing mesh.
    Mesh tag(const Mesh& mesh) const;
};

/// "ex1", "ex2" or "ex3". Throws ConfigError for unknown ids.
ProblemSpec get_problem(const std::string& id);
std::vector<std::string> problem_ids();

struct ConsistencyReport {
    double pde_residual = 0.0;        // max |-div(alpha grad u) + div(beta u) - f|
    double interface_residual = 0.0;  // max |[(alpha grad u - beta u) . n] - psi|
    bool ok = false;
};

/// Finite-difference check of the data against the exact solution at random
/// points in every region and on the interface.
ConsistencyReport check_consistency(const ProblemSpec& problem, int samples = 50,
                                    unsigned seed = 20240613u);

} // namespace pdwg

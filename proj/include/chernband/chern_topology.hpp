#pragma once

#include <array>
#include <functional>
#include <vector>

#include "chernband/hamiltonians.hpp"
#include "chernband/spin_algebra.hpp"

namespace chernband {

// Recursive midpoint subdivision of a regular octahedron, projected to the unit
// sphere; all faces are oriented consistently with the outward normal.
struct SphereTriangulation {
    std::vector<SpherePoint> vertices;
    std::vector<Eigen::Vector3d> units;  // unit vectors, same order as vertices
    std::vector<std::array<int, 3>> faces;
    int depth = 0;
};

SphereTriangulation triangulate_sphere(int depth);

SphereTriangulation reverse_orientation(SphereTriangulation tri);

double mean_edge_length(const SphereTriangulation& tri);

using MatrixField = std::function<Matrix(const SpherePoint&)>;

struct ChernResult {
    std::vector<int> indices;  // per band, energy ascending
    std::vector<double> raw;   // pre-rounding Berry-phase sums / 2 pi
    double max_face_phase = 0.0;
    int depth_used = 0;
};

// Single-shot Berry-phase sum from per-vertex eigenvector frames (columns =
// bands, energy ascending). Face phase is -arg of the oriented link product;
// with the outward mesh this makes the isotropic-coupling field n.S come out
// at C_g = -2g, which pins every other sign in the library.
ChernResult chern_from_states(const SphereTriangulation& tri, const std::vector<Matrix>& states);

// Per-band indices of a Hermitian matrix field over the sphere. Refines the
// mesh one level at a time while max_face_phase >= pi/2, up to max_depth
// (default: CHERNBAND_MAX_DEPTH env var, else 9).
ChernResult chern_indices(const MatrixField& field, const SphereTriangulation& tri,
                          int max_depth = -1);

// Sum over all bands must vanish for a field on a full matrix space.
bool sum_rule_check(const ChernResult& result);

struct Zero {
    SpherePoint where;
    int degree;      // winding of arg h12 along a small direct circle
    bool in_s_plus;  // h22 - h11 > 0 at the zero
};

struct WindingResult {
    std::vector<Zero> zeros;
    int c_plus = 0;  // sum of degrees over zeros in S+; C- = -C+
};

// Two-level index formula: locate the zeros of h12 on the mesh (local minima of
// |h12| below zero_tol, refined by bisection), attach their winding degrees,
// and sum those lying in S+. zero_tol <= 0 selects 1e-4 * max |h12|.
WindingResult degree_formula(const TwoLevelField& field, const SphereTriangulation& tri,
                             double zero_tol = 0.0);

// Winding of f along the direct circle of given angular radius around center
// (direct: tangent frame e1, e2 with e1 x e2 = outward normal).
int winding_number(const std::function<Complex(const SpherePoint&)>& f, const SpherePoint& center,
                   double radius, int samples);

// Charge swallowed by each band when a 3-parameter family sweeps through a
// degeneracy at `center`: Delta C_g equals minus the band index computed on the
// outward-oriented small sphere around it.
std::vector<int> topological_charge(const std::function<Matrix(const Eigen::Vector3d&)>& family,
                                    const Eigen::Vector3d& center, double radius, int depth);

// Husimi distribution |<coherent(s, p)|state>|^2 at each mesh vertex.
Eigen::VectorXd husimi_map(const Vector& state, HalfInt s, const SphereTriangulation& tri);

}  // namespace chernband

#include "chernband/chern_topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace chernband {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;

int refinement_cap(int max_depth) {
    if (max_depth >= 0) return max_depth;
    if (const char* env = std::getenv("CHERNBAND_MAX_DEPTH")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 0) return static_cast<int>(v);
    }
    return 9;
}

// Tangent frame with e1 x e2 = c, so circles cos(a) e1 + sin(a) e2 run direct
// (counterclockwise seen from outside the sphere).
void tangent_frame(const Eigen::Vector3d& c, Eigen::Vector3d& e1, Eigen::Vector3d& e2) {
    const Eigen::Vector3d seed =
        std::abs(c.x()) < 0.9 ? Eigen::Vector3d(1, 0, 0) : Eigen::Vector3d(0, 1, 0);
    e1 = seed.cross(c).normalized();
    e2 = c.cross(e1);
}

std::vector<Matrix> eigenvector_frames(const MatrixField& field, const SphereTriangulation& tri) {
    std::vector<Matrix> states;
    states.reserve(tri.vertices.size());
    for (const SpherePoint& p : tri.vertices) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(field(p));
        if (solver.info() != Eigen::Success)
            throw Error("chern_indices: eigensolver did not converge");
        const auto& w = solver.eigenvalues();
        for (int g = 0; g + 1 < w.size(); ++g) {
            if (w[g + 1] - w[g] <= 1e-8) {
                std::ostringstream msg;
                msg << "eigenvalue collision (gap " << w[g + 1] - w[g] << ") at theta=" << p.theta
                    << " phi=" << p.phi;
                throw DegeneracyError(msg.str(), p.theta, p.phi, w[g + 1] - w[g]);
            }
        }
        states.push_back(solver.eigenvectors());
    }
    return states;
}

}  // namespace

SphereTriangulation triangulate_sphere(int depth) {
    if (depth < 0) throw ConfigError("triangulate_sphere: depth >= 0 required");
    if (depth > 10) throw ConfigError("triangulate_sphere: depth > 10 not supported");

    std::vector<Eigen::Vector3d> units = {{1, 0, 0},  {0, 1, 0},  {0, 0, 1},
                                          {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
    // Regular octahedron, all faces wound counterclockwise seen from outside.
    std::vector<std::array<int, 3>> faces = {{0, 1, 2}, {1, 3, 2}, {3, 4, 2}, {4, 0, 2},
                                             {1, 0, 5}, {3, 1, 5}, {4, 3, 5}, {0, 4, 5}};

    for (int d = 0; d < depth; ++d) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const auto key = std::make_pair(std::min(a, b), std::max(a, b));
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            units.push_back((units[a] + units[b]).normalized());
            const int idx = static_cast<int>(units.size()) - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(4 * faces.size());
        for (const auto& [a, b, c] : faces) {
            const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
            next.push_back({a, ab, ca});
            next.push_back({b, bc, ab});
            next.push_back({c, ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }

    SphereTriangulation tri;
    tri.units = std::move(units);
    tri.faces = std::move(faces);
    tri.depth = depth;
    tri.vertices.reserve(tri.units.size());
    for (const auto& u : tri.units) tri.vertices.push_back(SpherePoint::from_unit(u));
    return tri;
}

SphereTriangulation reverse_orientation(SphereTriangulation tri) {
    for (auto& f : tri.faces) std::swap(f[1], f[2]);
    return tri;
}

double mean_edge_length(const SphereTriangulation& tri) {
    std::set<std::pair<int, int>> edges;
    for (const auto& f : tri.faces)
        for (int k = 0; k < 3; ++k) {
            const int a = f[k], b = f[(k + 1) % 3];
            edges.emplace(std::min(a, b), std::max(a, b));
        }
    double total = 0.0;
    for (const auto& [a, b] : edges)
        total += std::acos(std::clamp(tri.units[a].dot(tri.units[b]), -1.0, 1.0));
    return total / static_cast<double>(edges.size());
}

ChernResult chern_from_states(const SphereTriangulation& tri, const std::vector<Matrix>& states) {
    if (states.size() != tri.vertices.size())
        throw DimensionError("chern_from_states: one eigenvector frame per vertex required");
    const int bands = static_cast<int>(states.front().cols());

    std::vector<double> accum(bands, 0.0);
    double max_phase = 0.0;
    for (const auto& f : tri.faces) {
        const Matrix& u1 = states[f[0]];
        const Matrix& u2 = states[f[1]];
        const Matrix& u3 = states[f[2]];
        for (int g = 0; g < bands; ++g) {
            const Complex link = u1.col(g).dot(u2.col(g)) * u2.col(g).dot(u3.col(g)) *
                                 u3.col(g).dot(u1.col(g));
            if (link == Complex(0, 0))
                throw Error("chern_from_states: vanishing link product; mesh too coarse");
            const double phase = -std::arg(link);
            accum[g] += phase;
            max_phase = std::max(max_phase, std::abs(phase));
        }
    }

    ChernResult result;
    result.depth_used = tri.depth;
    result.max_face_phase = max_phase;
    result.raw.reserve(bands);
    result.indices.reserve(bands);
    for (int g = 0; g < bands; ++g) {
        result.raw.push_back(accum[g] / (2 * kPi));
        result.indices.push_back(static_cast<int>(std::lround(result.raw.back())));
    }
    return result;
}

ChernResult chern_indices(const MatrixField& field, const SphereTriangulation& tri,
                          int max_depth) {
    const int cap = refinement_cap(max_depth);
    SphereTriangulation current = tri;
    while (true) {
        const ChernResult result = chern_from_states(current, eigenvector_frames(field, current));
        if (result.max_face_phase < kPi / 2) return result;
        if (current.depth >= cap)
            throw RefinementCapError("chern_indices: admissibility (max face phase < pi/2) not "
                                     "reached at the refinement cap",
                                     result.max_face_phase, current.depth);
        current = triangulate_sphere(current.depth + 1);
    }
}

bool sum_rule_check(const ChernResult& result) {
    int total = 0;
    for (int c : result.indices) total += c;
    return total == 0;
}

WindingResult degree_formula(const TwoLevelField& field, const SphereTriangulation& tri,
                             double zero_tol) {
    const size_t nv = tri.vertices.size();
    std::vector<double> mag(nv);
    double max_mag = 0.0;
    for (size_t v = 0; v < nv; ++v) {
        mag[v] = std::abs(field.h12(tri.vertices[v]));
        max_mag = std::max(max_mag, mag[v]);
    }
    if (max_mag == 0.0)
        throw ConicalContactError("degree_formula: h12 vanishes identically on the mesh");
    const double tol = zero_tol > 0 ? zero_tol : 1e-4 * max_mag;

    std::vector<std::vector<int>> nbr(nv);
    for (const auto& f : tri.faces)
        for (int k = 0; k < 3; ++k) {
            nbr[f[k]].push_back(f[(k + 1) % 3]);
            nbr[f[k]].push_back(f[(k + 2) % 3]);
        }

    std::vector<int> candidates;
    for (size_t v = 0; v < nv; ++v) {
        if (mag[v] >= tol) continue;
        bool is_min = true;
        for (int u : nbr[v])
            if (mag[u] < mag[v]) {
                is_min = false;
                break;
            }
        if (is_min) candidates.push_back(static_cast<int>(v));
    }

    const double edge = mean_edge_length(tri);

    // Bisection descent: probe 8 directions at angular step h, halve h on failure.
    auto refine = [&](Eigen::Vector3d c) {
        double value = std::abs(field.h12(SpherePoint::from_unit(c)));
        double h = edge;
        while (h > 1e-9) {
            Eigen::Vector3d e1, e2;
            tangent_frame(c, e1, e2);
            Eigen::Vector3d best = c;
            double best_value = value;
            for (int k = 0; k < 8; ++k) {
                const double a = k * kPi / 4;
                const Eigen::Vector3d probe =
                    (std::cos(h) * c + std::sin(h) * (std::cos(a) * e1 + std::sin(a) * e2))
                        .normalized();
                const double pv = std::abs(field.h12(SpherePoint::from_unit(probe)));
                if (pv < best_value) {
                    best_value = pv;
                    best = probe;
                }
            }
            if (best_value < value) {
                c = best;
                value = best_value;
            } else {
                h /= 2;
            }
        }
        return std::make_pair(c, value);
    };

    std::vector<Eigen::Vector3d> zeros;
    for (int v : candidates) {
        const auto [point, value] = refine(tri.units[v]);
        if (value > 1e-8 * max_mag) continue;  // shallow dip, not a zero
        bool duplicate = false;
        for (const auto& z : zeros)
            if (std::acos(std::clamp(z.dot(point), -1.0, 1.0)) < 1e-5) {
                duplicate = true;
                break;
            }
        if (!duplicate) zeros.push_back(point);
    }

    const double radius = 3 * edge;
    for (size_t i = 0; i < zeros.size(); ++i)
        for (size_t k = i + 1; k < zeros.size(); ++k)
            if (std::acos(std::clamp(zeros[i].dot(zeros[k]), -1.0, 1.0)) < radius)
                throw CloseZerosError(
                    "degree_formula: two zeros of h12 inside one winding circle; use a deeper mesh");

    WindingResult result;
    for (const auto& z : zeros) {
        const SpherePoint zp = SpherePoint::from_unit(z);
        const double split = field.h22(zp) - field.h11(zp);
        if (std::abs(split) < 1e-8)
            throw ConicalContactError("degree_formula: zero of h12 lies on h22 == h11 (conical "
                                      "contact), degree undefined");
        const int degree = winding_number(field.h12, zp, radius, 256);
        const bool plus = split > 0;
        if (plus) result.c_plus += degree;
        result.zeros.push_back({zp, degree, plus});
    }
    return result;
}

int winding_number(const std::function<Complex(const SpherePoint&)>& f, const SpherePoint& center,
                   double radius, int samples) {
    if (samples < 64) throw ConfigError("winding_number: samples >= 64 required");
    if (!(radius > 0) || radius >= kPi)
        throw ConfigError("winding_number: radius must lie in (0, pi)");

    const Eigen::Vector3d c = center.unit();
    Eigen::Vector3d e1, e2;
    tangent_frame(c, e1, e2);

    std::vector<Complex> values(samples);
    for (int k = 0; k < samples; ++k) {
        const double a = 2 * kPi * k / samples;
        const Eigen::Vector3d u =
            std::cos(radius) * c + std::sin(radius) * (std::cos(a) * e1 + std::sin(a) * e2);
        values[k] = f(SpherePoint::from_unit(u));
        if (std::abs(values[k]) < 1e-12)
            throw ZeroOnCircleError("winding_number: circle passes through a zero of f");
    }

    double total = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double step = std::arg(values[(k + 1) % samples] / values[k]);
        if (std::abs(step) > kPi / 2)
            throw UndersamplingError("winding_number: phase step > pi/2, increase samples");
        total += step;
    }
    const double raw = total / (2 * kPi);
    const long rounded = std::lround(raw);
    if (std::abs(raw - static_cast<double>(rounded)) > 0.1)
        throw Error("winding_number: accumulated phase is not an integer multiple of 2 pi");
    return static_cast<int>(rounded);
}

std::vector<int> topological_charge(const std::function<Matrix(const Eigen::Vector3d&)>& family,
                                    const Eigen::Vector3d& center, double radius, int depth) {
    if (!(radius > 0)) throw ConfigError("topological_charge: radius > 0 required");
    const MatrixField field = [&family, &center, radius](const SpherePoint& p) {
        return family(center + radius * p.unit());
    };
    ChernResult sphere;
    try {
        sphere = chern_indices(field, triangulate_sphere(depth));
    } catch (const DegeneracyError& e) {
        throw DegeneracyError(std::string(e.what()) +
                                  " on the sampling sphere; try a different radius",
                              e.theta, e.phi, e.gap);
    }
    // Sweeping the third parameter upward through the contact crosses the little
    // sphere from inside to outside; the index change of band g is minus the
    // outward-sphere index.
    std::vector<int> charge;
    charge.reserve(sphere.indices.size());
    for (int c : sphere.indices) charge.push_back(-c);
    return charge;
}

Eigen::VectorXd husimi_map(const Vector& state, HalfInt s, const SphereTriangulation& tri) {
    if (state.size() != s.dimension())
        throw DimensionError("husimi_map: state length must be 2s+1");
    if (std::abs(state.norm() - 1.0) > 1e-10)
        throw ConfigError("husimi_map: state must be normalized");
    const AngularMomentumRep rep = make_rep(s);
    Eigen::VectorXd values(tri.vertices.size());
    for (size_t v = 0; v < tri.vertices.size(); ++v) {
        const CoherentState coh = coherent_state(rep, tri.vertices[v]);
        values[static_cast<Eigen::Index>(v)] = std::norm(coh.amplitudes.dot(state));
    }
    return values;
}

}  // namespace chernband

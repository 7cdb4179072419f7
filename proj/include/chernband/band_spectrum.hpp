#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "chernband/chern_topology.hpp"
#include "chernband/hamiltonians.hpp"

namespace chernband {

struct EigenSystem {
    Eigen::VectorXd values;  // ascending
    Matrix vectors;          // column k belongs to values[k]
};

// Dense Hermitian eigendecomposition; rejects inputs whose max asymmetry
// |A - A^dag| exceeds 1e-10 * max(1, |A|_max).
EigenSystem diagonalize(const Matrix& A);

struct BandDecomposition {
    int n_bands = 0;              // 2s+1
    std::vector<int> boundaries;  // indices i of the used gaps values[i+1]-values[i]
    std::vector<int> counts;      // N_g, g ascending from -s
    double gap_ratio = 0.0;       // smallest used gap / largest unused gap
};

// Split a sorted spectrum at its n_bands-1 largest gaps. Throws AmbiguityError
// when gap_ratio < ambiguity_threshold: near a band degeneracy there is no
// honest split, and failing loudly beats a silent wrong one.
BandDecomposition cluster_bands(const Eigen::VectorXd& values, int n_bands,
                                double ambiguity_threshold = 3.0);

struct ExchangeScan {
    std::vector<double> parameter_values;
    // Counts per grid value; empty vector = clustering was ambiguous there.
    std::vector<std::vector<int>> counts_per_value;
    // Intervals [a, b] between clustered grid points where any N_g changed;
    // ambiguous points are skipped, widening the interval accordingly.
    std::vector<std::pair<double, double>> change_points;
};

ExchangeScan scan_exchange(const std::function<HamiltonianSpec(double)>& model, HalfInt j,
                           HalfInt s, const std::vector<double>& t_grid,
                           double ambiguity_threshold = 3.0);

// Vertex of the depth-`grid_depth` triangulation minimizing the smallest
// adjacent-eigenvalue gap of the field, plus that gap.
std::pair<SpherePoint, double> find_degeneracy(const MatrixField& field, int grid_depth);

// Theorem hypothesis "j large enough", operationalized as j >= 4s + 3.
// Below this the N_g + C_g check is reported as data, not certified.
inline bool large_j_ok(HalfInt j, HalfInt s) { return j.twice >= 4 * s.twice + 6; }

}  // namespace chernband

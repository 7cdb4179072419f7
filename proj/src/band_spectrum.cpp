#include "chernband/band_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace chernband {

EigenSystem diagonalize(const Matrix& A) {
    if (A.rows() != A.cols()) throw DimensionError("diagonalize: square matrix required");
    if (A.size() == 0) return {Eigen::VectorXd(), Matrix()};
    const double scale = A.cwiseAbs().maxCoeff();
    Eigen::Index row = 0, col = 0;
    const double asym = (A - A.adjoint()).cwiseAbs().maxCoeff(&row, &col);
    if (asym > 1e-10 * std::max(1.0, scale)) {
        std::ostringstream msg;
        msg << "diagonalize: input not Hermitian, |A - A^dag| = " << asym << " at (" << row << ", "
            << col << ")";
        throw NonHermitianError(msg.str(), static_cast<int>(row), static_cast<int>(col), asym);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(A);
    if (solver.info() != Eigen::Success) throw Error("diagonalize: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

BandDecomposition cluster_bands(const Eigen::VectorXd& values, int n_bands,
                                double ambiguity_threshold) {
    const int n = static_cast<int>(values.size());
    if (n_bands < 1) throw ConfigError("cluster_bands: n_bands >= 1 required");
    if (n < n_bands) throw DimensionError("cluster_bands: fewer eigenvalues than bands");

    std::vector<double> gaps(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        gaps[i] = values[i + 1] - values[i];
        if (gaps[i] < 0) throw ConfigError("cluster_bands: values must be sorted ascending");
    }

    std::vector<int> order(gaps.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&gaps](int a, int b) { return gaps[a] > gaps[b]; });

    BandDecomposition bd;
    bd.n_bands = n_bands;
    bd.boundaries.assign(order.begin(), order.begin() + (n_bands - 1));
    std::sort(bd.boundaries.begin(), bd.boundaries.end());

    double used_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < n_bands; ++i) used_min = std::min(used_min, gaps[order[i]]);
    double unused_max = 0.0;
    for (size_t i = n_bands - 1; i < order.size(); ++i)
        unused_max = std::max(unused_max, gaps[order[i]]);

    bd.gap_ratio = unused_max > 0 ? used_min / unused_max
                                  : std::numeric_limits<double>::infinity();
    if (n_bands > 1 && bd.gap_ratio < ambiguity_threshold) {
        std::ostringstream msg;
        msg << "cluster_bands: ambiguous split, smallest used gap " << used_min
            << " vs largest unused gap " << unused_max << " (ratio " << bd.gap_ratio << " < "
            << ambiguity_threshold << ")";
        throw AmbiguityError(msg.str(), used_min, unused_max);
    }

    int prev = 0;
    for (int b : bd.boundaries) {
        bd.counts.push_back(b + 1 - prev);
        prev = b + 1;
    }
    bd.counts.push_back(n - prev);
    return bd;
}

ExchangeScan scan_exchange(const std::function<HamiltonianSpec(double)>& model, HalfInt j,
                           HalfInt s, const std::vector<double>& t_grid,
                           double ambiguity_threshold) {
    if (!std::is_sorted(t_grid.begin(), t_grid.end()))
        throw ConfigError("scan_exchange: parameter grid must be sorted ascending");

    ExchangeScan scan;
    scan.parameter_values = t_grid;
    const int n_bands = s.dimension();
    const int dim = j.dimension() * s.dimension();

    for (double t : t_grid) {
        const Matrix h = build_quantum(model(t), j, s);
        Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw Error("scan_exchange: eigensolver did not converge");
        try {
            BandDecomposition bd = cluster_bands(solver.eigenvalues(), n_bands, ambiguity_threshold);
            int total = 0;
            for (int c : bd.counts) total += c;
            if (total != dim) throw Error("scan_exchange: band counts lost states");
            scan.counts_per_value.push_back(std::move(bd.counts));
        } catch (const AmbiguityError&) {
            scan.counts_per_value.emplace_back();  // flagged, excluded from bracketing
        }
    }

    int last = -1;
    for (int k = 0; k < static_cast<int>(t_grid.size()); ++k) {
        if (scan.counts_per_value[k].empty()) continue;
        if (last >= 0 && scan.counts_per_value[k] != scan.counts_per_value[last])
            scan.change_points.emplace_back(t_grid[last], t_grid[k]);
        last = k;
    }
    return scan;
}

std::pair<SpherePoint, double> find_degeneracy(const MatrixField& field, int grid_depth) {
    if (grid_depth < 2) throw ConfigError("find_degeneracy: grid_depth >= 2 required");
    const SphereTriangulation tri = triangulate_sphere(grid_depth);
    SpherePoint best;
    double best_gap = std::numeric_limits<double>::infinity();
    for (size_t v = 0; v < tri.vertices.size(); ++v) {
        const Matrix m = field(tri.vertices[v]);
        if (m.rows() < 2) throw ConfigError("find_degeneracy: field must have at least 2 bands");
        Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
        const auto& w = solver.eigenvalues();
        for (int g = 0; g + 1 < w.size(); ++g) {
            if (w[g + 1] - w[g] < best_gap) {
                best_gap = w[g + 1] - w[g];
                best = tri.vertices[v];
            }
        }
    }
    return {best, best_gap};
}

}  // namespace chernband

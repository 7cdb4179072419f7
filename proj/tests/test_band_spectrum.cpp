#include <doctest.h>

#include <cmath>
#include <random>

#include "chernband/band_spectrum.hpp"
#include "chernband/hamiltonians.hpp"

using namespace chernband;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

Eigen::VectorXd eq1_values(double t, HalfInt j, HalfInt s) {
    return diagonalize(build_quantum(model_eq1(t), j, s)).values;
}

}  // namespace

TEST_SUITE("band_spectrum") {
    TEST_CASE("diagonalize basics") {
        Matrix d = Matrix::Zero(3, 3);
        d(0, 0) = 3;
        d(1, 1) = 1;
        d(2, 2) = 2;
        const EigenSystem es = diagonalize(d);
        CHECK(es.values[0] == doctest::Approx(1.0));
        CHECK(es.values[1] == doctest::Approx(2.0));
        CHECK(es.values[2] == doctest::Approx(3.0));

        SUBCASE("Pauli-x eigenpairs") {
            Matrix x(2, 2);
            x << 0, 1, 1, 0;
            const EigenSystem px = diagonalize(x);
            CHECK(px.values[0] == doctest::Approx(-1.0));
            CHECK(px.values[1] == doctest::Approx(1.0));
            // Columns are (1, -1)/sqrt(2) and (1, 1)/sqrt(2) up to phase.
            CHECK(std::abs(std::abs(px.vectors(0, 0)) - 1 / std::sqrt(2.0)) < 1e-12);
            CHECK(std::abs(px.vectors(0, 0) + px.vectors(1, 0)) < 1e-12);
            CHECK(std::abs(px.vectors(0, 1) - px.vectors(1, 1)) < 1e-12);
        }

        SUBCASE("empty input") { CHECK(diagonalize(Matrix()).values.size() == 0); }

        SUBCASE("non-Hermitian input identifies the worst entry") {
            Matrix bad = Matrix::Zero(3, 3);
            bad(0, 2) = Complex(0.0, 1.0);
            try {
                diagonalize(bad);
                FAIL("expected NonHermitianError");
            } catch (const NonHermitianError& e) {
                CHECK(e.asymmetry == doctest::Approx(1.0));
                CHECK(((e.row == 0 && e.col == 2) || (e.row == 2 && e.col == 0)));
            }
        }
    }

    TEST_CASE("eigen system invariants on a random Hermitian matrix") {
        std::mt19937 rng(5);
        std::normal_distribution<double> g(0.0, 1.0);
        const int n = 60;
        Matrix a(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) a(r, c) = Complex(g(rng), g(rng));
        a = ((a + a.adjoint()) / 2).eval();
        const EigenSystem es = diagonalize(a);
        const double scale = a.cwiseAbs().maxCoeff();
        for (int k = 0; k < n; ++k) {
            const double residual = (a * es.vectors.col(k) - es.values[k] * es.vectors.col(k))
                                        .cwiseAbs()
                                        .maxCoeff();
            CHECK(residual <= 1e-10 * scale * n);
            if (k > 0) CHECK(es.values[k] >= es.values[k - 1]);
        }
        CHECK((es.vectors.adjoint() * es.vectors - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <
              1e-10);
    }

    TEST_CASE("decoupled eq1 at j = 2 splits into +-1/2 blocks") {
        const Eigen::VectorXd values = eq1_values(0.0, HalfInt::integer(2), HalfInt(1));
        REQUIRE(values.size() == 10);
        for (int k = 0; k < 5; ++k) {
            CHECK(values[k] == doctest::Approx(-0.5));
            CHECK(values[5 + k] == doctest::Approx(0.5));
        }
    }

    TEST_CASE("cluster_bands") {
        SUBCASE("obvious gap") {
            Eigen::VectorXd v(4);
            v << 0.0, 0.1, 5.0, 5.1;
            const BandDecomposition bd = cluster_bands(v, 2);
            CHECK(bd.counts == std::vector<int>{2, 2});
            CHECK(bd.boundaries == std::vector<int>{1});
            CHECK(bd.gap_ratio == doctest::Approx(4.9 / 0.1));
        }

        SUBCASE("single band") {
            Eigen::VectorXd v(3);
            v << 0.0, 1.0, 2.0;
            const BandDecomposition bd = cluster_bands(v, 1);
            CHECK(bd.counts == std::vector<int>{3});
            CHECK(bd.boundaries.empty());
        }

        SUBCASE("eq1 oracle counts") {
            const HalfInt j = HalfInt::integer(10);
            CHECK(cluster_bands(eq1_values(0.75, j, HalfInt(1)), 2).counts ==
                  std::vector<int>{20, 22});
            CHECK(cluster_bands(eq1_values(0.25, j, HalfInt(2)), 3).counts ==
                  std::vector<int>{21, 21, 21});
        }

        SUBCASE("counts conserve the total dimension") {
            const BandDecomposition bd =
                cluster_bands(eq1_values(0.8, HalfInt::integer(10), HalfInt(3)), 4);
            int total = 0;
            for (int c : bd.counts) total += c;
            CHECK(total == 84);
        }

        SUBCASE("near the transition the split is ambiguous") {
            try {
                cluster_bands(eq1_values(0.5, HalfInt::integer(10), HalfInt(1)), 2);
                FAIL("expected AmbiguityError");
            } catch (const AmbiguityError& e) {
                CHECK(e.used_gap > 0.0);
                CHECK(e.unused_gap > 0.0);
                CHECK(e.used_gap / e.unused_gap < 3.0);
                CHECK(std::string(e.what()).find("gap") != std::string::npos);
            }
        }

        SUBCASE("unsorted input is rejected") {
            Eigen::VectorXd v(3);
            v << 1.0, 0.0, 2.0;
            CHECK_THROWS_AS(cluster_bands(v, 1), ConfigError);
        }

        SUBCASE("more bands than values is rejected") {
            Eigen::VectorXd v(2);
            v << 0.0, 1.0;
            CHECK_THROWS_AS(cluster_bands(v, 3), DimensionError);
            CHECK_THROWS_AS(cluster_bands(v, 0), ConfigError);
        }
    }

    TEST_CASE("scan_exchange") {
        const HalfInt j = HalfInt::integer(10);
        const std::vector<double> grid = {0.1, 0.3, 0.45, 0.55, 0.7, 0.9};
        auto eq1 = [](double t) { return model_eq1(t); };

        SUBCASE("default threshold flags the near-transition points") {
            const ExchangeScan scan = scan_exchange(eq1, j, HalfInt(1), grid);
            REQUIRE(scan.counts_per_value.size() == 6);
            CHECK(scan.counts_per_value[0] == std::vector<int>{21, 21});
            CHECK(scan.counts_per_value[2].empty());
            CHECK(scan.counts_per_value[3].empty());
            CHECK(scan.counts_per_value[4] == std::vector<int>{20, 22});
            REQUIRE(scan.change_points.size() == 1);
            CHECK(scan.change_points[0].first == doctest::Approx(0.3));
            CHECK(scan.change_points[0].second == doctest::Approx(0.7));
        }

        SUBCASE("s = 1 redistributes two states outward: dN_g = +2g") {
            const ExchangeScan scan = scan_exchange(eq1, j, HalfInt(2), grid);
            CHECK(scan.counts_per_value[1] == std::vector<int>{21, 21, 21});
            CHECK(scan.counts_per_value[4] == std::vector<int>{19, 21, 23});
            REQUIRE(scan.change_points.size() == 1);
            CHECK(scan.change_points[0].first == doctest::Approx(0.3));
            CHECK(scan.change_points[0].second == doctest::Approx(0.7));
        }

        SUBCASE("a permissive threshold brackets the transition tightly") {
            const ExchangeScan scan = scan_exchange(eq1, j, HalfInt(1), grid, 1.2);
            CHECK(scan.counts_per_value[2] == std::vector<int>{21, 21});
            CHECK(scan.counts_per_value[3] == std::vector<int>{20, 22});
            REQUIRE(scan.change_points.size() == 1);
            CHECK(scan.change_points[0].first == doctest::Approx(0.45));
            CHECK(scan.change_points[0].second == doctest::Approx(0.55));
        }

        SUBCASE("constant model yields no change points") {
            const ExchangeScan scan =
                scan_exchange([](double) { return model_eq1(0.2); }, j, HalfInt(1), grid);
            CHECK(scan.change_points.empty());
            for (const auto& counts : scan.counts_per_value)
                CHECK(counts == std::vector<int>{21, 21});
        }

        SUBCASE("unsorted grid is rejected") {
            CHECK_THROWS_AS(scan_exchange(eq1, j, HalfInt(1), {0.5, 0.1}), ConfigError);
        }
    }

    TEST_CASE("find_degeneracy") {
        const HalfInt j = HalfInt::integer(10);
        auto reduced = [j](double t) {
            const Matrix h = build_quantum(model_eq1(t), j, HalfInt(1));
            return [h, j](const SpherePoint& p) { return semiclassical_reduce(h, j, HalfInt(1), p); };
        };

        SUBCASE("t = 1/2 contact sits at the south pole") {
            const auto [where, gap] = find_degeneracy(reduced(0.5), 6);
            CHECK(angular_distance(where, {kPi, 0.0}) < 0.1);
            CHECK(gap < 1e-3);
        }

        SUBCASE("t = 0.2 bands stay separated") {
            const auto [where, gap] = find_degeneracy(reduced(0.2), 4);
            CHECK(gap >= 0.5);
        }

        SUBCASE("tetrahedral field is gapped everywhere") {
            const TwoLevelField field = tetrahedral_field(1.0, j);
            const auto [where, gap] =
                find_degeneracy([&field](const SpherePoint& p) { return field.matrix(p); }, 5);
            CHECK(gap > 0.3);
        }

        CHECK_THROWS_AS(find_degeneracy(reduced(0.5), 1), ConfigError);
    }

    TEST_CASE("large-j threshold j >= 4s + 3") {
        CHECK(large_j_ok(HalfInt::integer(10), HalfInt(1)));
        CHECK(large_j_ok(HalfInt::integer(10), HalfInt(3)));
        CHECK(large_j_ok(HalfInt::integer(5), HalfInt(1)));
        CHECK_FALSE(large_j_ok(HalfInt(9), HalfInt(1)));
        CHECK_FALSE(large_j_ok(HalfInt::integer(2), HalfInt(3)));
    }
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "chernband/spin_algebra.hpp"

using namespace chernband;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

SpherePoint random_point(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    // Uniform on the sphere: theta from cos distribution, phi flat.
    return {std::acos(1.0 - 2.0 * u(rng)), 2.0 * kPi * u(rng)};
}

Eigen::Vector3d spin_expectation(const AngularMomentumRep& rep, const Vector& v) {
    return {(v.adjoint() * rep.jx * v)(0).real(), (v.adjoint() * rep.jy * v)(0).real(),
            (v.adjoint() * rep.jz * v)(0).real()};
}

// exp(-i a H) for Hermitian H, via eigendecomposition.
Matrix hermitian_phase(const Matrix& h, double a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k)
        phases[k] = std::polar(1.0, -a * es.eigenvalues()[k]);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TEST_SUITE("spin_algebra") {
    TEST_CASE("half-integer parsing and printing") {
        CHECK(parse_half_int("10").twice == 20);
        CHECK(parse_half_int("21/2").twice == 21);
        CHECK(parse_half_int("0").twice == 0);
        CHECK(parse_half_int("-3/2").twice == -3);
        CHECK_THROWS_AS(parse_half_int(""), ConfigError);
        CHECK_THROWS_AS(parse_half_int("x"), ConfigError);
        CHECK_THROWS_AS(parse_half_int("3/4"), ConfigError);
        CHECK_THROWS_AS(parse_half_int("1.5"), ConfigError);
        CHECK(to_string(HalfInt(21)) == "21/2");
        CHECK(to_string(HalfInt(20)) == "10");
        CHECK(to_string(HalfInt(-1)) == "-1/2");
        CHECK(to_string(parse_half_int("21/2")) == "21/2");
        CHECK(HalfInt::integer(10).dimension() == 21);
        CHECK(HalfInt(3).value() == doctest::Approx(1.5));
        CHECK_FALSE(HalfInt(3).is_integer());
    }

    TEST_CASE("representation matrices for j = 1/2 and j = 1") {
        const AngularMomentumRep half = make_rep(HalfInt(1));
        REQUIRE(half.dim == 2);
        CHECK(half.jz(0, 0) == Complex(0.5, 0));
        CHECK(half.jz(1, 1) == Complex(-0.5, 0));
        CHECK(half.jplus(0, 1) == Complex(1.0, 0));
        CHECK(half.jplus(0, 0) == Complex(0, 0));
        CHECK(half.jplus(1, 0) == Complex(0, 0));
        CHECK(half.jplus(1, 1) == Complex(0, 0));

        const AngularMomentumRep one = make_rep(HalfInt::integer(1));
        REQUIRE(one.dim == 3);
        CHECK(one.jz(0, 0) == Complex(1, 0));
        CHECK(one.jz(1, 1) == Complex(0, 0));
        CHECK(one.jz(2, 2) == Complex(-1, 0));
        const Matrix casimir = one.jx * one.jx + one.jy * one.jy + one.jz * one.jz;
        CHECK(max_abs(casimir - 2.0 * Matrix::Identity(3, 3)) < 1e-12);
    }

    TEST_CASE("su(2) commutators and Casimir for all j <= 30") {
        for (int twice = 1; twice <= 60; ++twice) {
            const HalfInt j(twice);
            const AngularMomentumRep rep = make_rep(j);
            const Complex i(0, 1);
            CHECK(max_abs(rep.jx * rep.jy - rep.jy * rep.jx - i * rep.jz) < 1e-12);
            CHECK(max_abs(rep.jy * rep.jz - rep.jz * rep.jy - i * rep.jx) < 1e-12);
            CHECK(max_abs(rep.jz * rep.jx - rep.jx * rep.jz - i * rep.jy) < 1e-12);
            const Matrix casimir = rep.jx * rep.jx + rep.jy * rep.jy + rep.jz * rep.jz;
            const double jj = j.value() * (j.value() + 1.0);
            CHECK(max_abs(casimir - jj * Matrix::Identity(rep.dim, rep.dim)) < 1e-12 * jj);
            CHECK(max_abs(rep.jplus - (rep.jx + i * rep.jy)) < 1e-12);
            CHECK(max_abs(rep.jminus - rep.jplus.adjoint()) < 1e-15);
        }
    }

    TEST_CASE("coherent states at the poles") {
        const AngularMomentumRep rep = make_rep(HalfInt::integer(3));
        const CoherentState north = coherent_state(rep, {0.0, 0.0});
        CHECK(std::abs(north.amplitudes[0] - 1.0) < 1e-14);
        CHECK(north.amplitudes.tail(6).norm() < 1e-14);

        const CoherentState south = coherent_state(make_rep(HalfInt(1)), {kPi, 0.0});
        CHECK(std::abs(std::abs(south.amplitudes[1]) - 1.0) < 1e-12);
        CHECK(std::abs(south.amplitudes[0]) < 1e-12);
    }

    TEST_CASE("coherent expectation <J> = j n") {
        const AngularMomentumRep rep4 = make_rep(HalfInt::integer(4));
        const SpherePoint p{1.1, 2.3};
        const Eigen::Vector3d got = spin_expectation(rep4, coherent_state(rep4, p).amplitudes);
        CHECK((got - 4.0 * p.unit()).norm() < 1e-10);

        std::mt19937 rng(20240811);
        for (int twice : {1, 2, 7, 20}) {
            const AngularMomentumRep rep = make_rep(HalfInt(twice));
            for (int k = 0; k < 100; ++k) {
                const SpherePoint q = random_point(rng);
                const CoherentState coh = coherent_state(rep, q);
                CHECK(std::abs(coh.amplitudes.norm() - 1.0) < 1e-12);
                CHECK((spin_expectation(rep, coh.amplitudes) - rep.spin.value() * q.unit()).norm()
                      < 1e-10);
            }
        }
    }

    TEST_CASE("coherent state equals the rotated highest-weight state") {
        const AngularMomentumRep rep = make_rep(HalfInt(5));
        Vector top = Vector::Zero(rep.dim);
        top[0] = 1.0;
        for (const SpherePoint p : {SpherePoint{0.7, 1.9}, SpherePoint{2.6, 5.1}}) {
            const Vector rotated =
                hermitian_phase(rep.jz, p.phi) * hermitian_phase(rep.jy, p.theta) * top;
            CHECK((coherent_state(rep, p).amplitudes - rotated).norm() < 1e-12);
        }
    }

    TEST_CASE("overlaps") {
        const AngularMomentumRep rep3 = make_rep(HalfInt::integer(3));
        const SpherePoint p{0.9, 0.4};
        const CoherentState a = coherent_state(rep3, p);
        CHECK(std::abs(overlap(a, a) - Complex(1, 0)) < 1e-12);

        SUBCASE("antipodal points are orthogonal") {
            for (int twice : {1, 2, 3, 20}) {
                const AngularMomentumRep rep = make_rep(HalfInt(twice));
                const CoherentState u = coherent_state(rep, {0.4, 1.0});
                const CoherentState v =
                    coherent_state(rep, {kPi - 0.4, 1.0 + kPi});
                CHECK(std::abs(overlap(u, v)) < 1e-12);
            }
        }

        SUBCASE("right angle at j = 3 gives |overlap|^2 = 2^-6") {
            const CoherentState north = coherent_state(rep3, {0.0, 0.0});
            const CoherentState equator = coherent_state(rep3, {kPi / 2, 0.0});
            CHECK(std::abs(std::norm(overlap(north, equator)) - std::pow(2.0, -6)) < 1e-10);
        }

        SUBCASE("modulus formula ((1 + cos Theta)/2)^(2j) for random pairs") {
            std::mt19937 rng(7);
            for (int twice = 1; twice <= 40; ++twice) {
                const AngularMomentumRep rep = make_rep(HalfInt(twice));
                for (int k = 0; k < 5; ++k) {
                    const SpherePoint u = random_point(rng);
                    const SpherePoint v = random_point(rng);
                    const double cos_angle = u.unit().dot(v.unit());
                    const double expect = std::pow(0.5 * (1.0 + cos_angle), twice);
                    const double got =
                        std::norm(overlap(coherent_state(rep, u), coherent_state(rep, v)));
                    CHECK(std::abs(got - expect) < 1e-10);
                }
            }
        }

        SUBCASE("spin mismatch throws") {
            const CoherentState b = coherent_state(make_rep(HalfInt(1)), p);
            CHECK_THROWS_AS(overlap(a, b), DimensionError);
        }
    }

    TEST_CASE("tensor embedding") {
        const AngularMomentumRep rj = make_rep(HalfInt(1));
        const AngularMomentumRep rs = make_rep(HalfInt(1));
        const Matrix m = embed(Matrix::Identity(2, 2), rs.jz);
        REQUIRE(m.rows() == 4);
        CHECK(m(0, 0) == Complex(0.5, 0));
        CHECK(m(1, 1) == Complex(-0.5, 0));
        CHECK(m(2, 2) == Complex(0.5, 0));
        CHECK(m(3, 3) == Complex(-0.5, 0));
        CHECK(max_abs(m - m.cwiseProduct(Matrix::Identity(4, 4))) == 0.0);

        SUBCASE("dimension product") {
            const Matrix big = embed(Matrix::Identity(21, 21), Matrix::Identity(3, 3));
            CHECK(big.rows() == 63);
            CHECK(big.cols() == 63);
            CHECK(max_abs(big - Matrix::Identity(63, 63)) == 0.0);
        }

        SUBCASE("operators on distinct factors commute") {
            const Matrix a = embed(rj.jz, Matrix::Identity(2, 2));
            const Matrix b = embed(Matrix::Identity(2, 2), rs.jx);
            CHECK(max_abs(a * b - b * a) < 1e-13);
            CHECK(max_abs(a * b - embed(rj.jz, rs.jx)) < 1e-13);
        }

        SUBCASE("non-square input throws") {
            CHECK_THROWS_AS(embed(Matrix::Zero(2, 3), Matrix::Identity(2, 2)), DimensionError);
        }
    }

    TEST_CASE("sphere points") {
        const SpherePoint p{1.2, 4.0};
        const SpherePoint q = SpherePoint::from_unit(p.unit());
        CHECK(q.theta == doctest::Approx(p.theta).epsilon(1e-12));
        CHECK(q.phi == doctest::Approx(p.phi).epsilon(1e-12));
        CHECK(angular_distance({0.0, 0.0}, {kPi, 2.0}) == doctest::Approx(kPi));
        CHECK(angular_distance(p, p) < 1e-7);
        const Eigen::Vector3d n = SpherePoint{kPi / 2, 0.0}.unit();
        CHECK((n - Eigen::Vector3d(1, 0, 0)).norm() < 1e-15);
    }
}

#include "chernband/spin_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace chernband {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double log_binom(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}
}  // namespace

Eigen::Vector3d SpherePoint::unit() const {
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

SpherePoint SpherePoint::from_unit(const Eigen::Vector3d& n) {
    const Eigen::Vector3d u = n.normalized();
    SpherePoint p;
    p.theta = std::acos(std::clamp(u.z(), -1.0, 1.0));
    p.phi = std::atan2(u.y(), u.x());
    if (p.phi < 0) p.phi += kTwoPi;
    if (p.phi >= kTwoPi) p.phi = 0;
    return p;
}

double angular_distance(const SpherePoint& a, const SpherePoint& b) {
    return std::acos(std::clamp(a.unit().dot(b.unit()), -1.0, 1.0));
}

AngularMomentumRep make_rep(HalfInt j) {
    if (j.twice < 0) throw ConfigError("make_rep: spin label must be non-negative");
    const int dim = j.dimension();
    const double jv = j.value();
    Matrix jz = Matrix::Zero(dim, dim);
    Matrix jplus = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        const double m = jv - k;  // basis order m = j ... -j
        jz(k, k) = m;
        if (k > 0) jplus(k - 1, k) = std::sqrt(jv * (jv + 1) - m * (m + 1));  // <m+1|J+|m>
    }
    Matrix jminus = jplus.adjoint();
    Matrix jx = (jplus + jminus) / 2.0;
    Matrix jy = (jplus - jminus) / Complex(0.0, 2.0);
    return {j, dim, std::move(jx), std::move(jy), std::move(jz), std::move(jplus),
            std::move(jminus)};
}

CoherentState coherent_state(const AngularMomentumRep& rep, const SpherePoint& p) {
    // exp(-i phi Jz) exp(-i theta Jy) |j,j>; with this convention the rotated
    // highest-weight amplitudes are
    //   v_m = e^{-i m phi} sqrt(C(2j, j+m)) cos(theta/2)^(j+m) sin(theta/2)^(j-m).
    const double jv = rep.spin.value();
    const double c = std::cos(p.theta / 2);
    const double s = std::sin(p.theta / 2);
    Vector amp(rep.dim);
    for (int k = 0; k < rep.dim; ++k) {
        const double m = jv - k;
        const int up = rep.spin.twice - k;  // j+m
        const double mag = std::exp(0.5 * log_binom(rep.spin.twice, up)) * std::pow(c, up) *
                           std::pow(s, k);
        amp(k) = std::polar(mag, -m * p.phi);
    }
    return {rep.spin, p, std::move(amp)};
}

Complex overlap(const CoherentState& a, const CoherentState& b) {
    if (a.spin != b.spin)
        throw DimensionError("overlap: coherent states carry different spins (" + to_string(a.spin) +
                             " vs " + to_string(b.spin) + ")");
    return a.amplitudes.dot(b.amplitudes);
}

}  // namespace chernband

#pragma once

#include <complex>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "chernband/errors.hpp"
#include "chernband/half_int.hpp"

namespace chernband {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct SpherePoint {
    double theta = 0.0;  // polar angle in [0, pi]
    double phi = 0.0;    // azimuth in [0, 2*pi)

    Eigen::Vector3d unit() const;
    static SpherePoint from_unit(const Eigen::Vector3d& n);
};

double angular_distance(const SpherePoint& a, const SpherePoint& b);

// Dense matrices of Jx, Jy, Jz and the ladder operators in the |j, m> basis,
// ordered m = j, j-1, ..., -j (hbar = 1).
struct AngularMomentumRep {
    HalfInt spin;
    int dim = 0;  // 2j+1
    Matrix jx, jy, jz, jplus, jminus;
};

AngularMomentumRep make_rep(HalfInt j);

// SU(2) coherent state exp(-i phi Jz) exp(-i theta Jy) |j, j>, concentrated at
// the sphere point p with <J> = j * n(p).
struct CoherentState {
    HalfInt spin;
    SpherePoint point;
    Vector amplitudes;  // length 2j+1, basis m = j ... -j
};

CoherentState coherent_state(const AngularMomentumRep& rep, const SpherePoint& p);

// <a|b>; its modulus satisfies |<a|b>|^2 = ((1 + na.nb)/2)^(2j).
Complex overlap(const CoherentState& a, const CoherentState& b);

// Kronecker embedding of square operators onto H_j (x) H_s, j-index major.
template <typename DerivedA, typename DerivedB>
Matrix embed(const Eigen::MatrixBase<DerivedA>& op_j, const Eigen::MatrixBase<DerivedB>& op_s) {
    if (op_j.rows() != op_j.cols() || op_s.rows() != op_s.cols())
        throw DimensionError("embed: both operators must be square");
    const Matrix a = op_j.template cast<Complex>();
    const Matrix b = op_s.template cast<Complex>();
    return Eigen::kroneckerProduct(a, b);
}

}  // namespace chernband

#include "chernband/hamiltonians.hpp"

#include <cmath>

namespace chernband {

namespace {

const Matrix& axis_op(const AngularMomentumRep& rep, int axis) {
    switch (axis) {
        case 0: return rep.jx;
        case 1: return rep.jy;
        default: return rep.jz;
    }
}

Matrix word_matrix(const AngularMomentumRep& rep, const std::vector<int>& axes) {
    Matrix w = Matrix::Identity(rep.dim, rep.dim);
    for (int a : axes) w = w * axis_op(rep, a);
    return w;
}

std::vector<int> axes_of(const std::vector<JOp>& word) {
    std::vector<int> axes;
    axes.reserve(word.size());
    for (JOp op : word) axes.push_back(static_cast<int>(op));
    return axes;
}

std::vector<int> axes_of(const std::vector<SOp>& word) {
    std::vector<int> axes;
    axes.reserve(word.size());
    for (SOp op : word) axes.push_back(static_cast<int>(op));
    return axes;
}

}  // namespace

HamiltonianSpec model_eq1(double t) {
    HamiltonianSpec spec;
    if (t != 1.0) spec.terms.push_back({1.0 - t, {}, {SOp::Sz}});
    if (t != 0.0) {
        spec.terms.push_back({t, {JOp::Jx}, {SOp::Sx}});
        spec.terms.push_back({t, {JOp::Jy}, {SOp::Sy}});
        spec.terms.push_back({t, {JOp::Jz}, {SOp::Sz}});
    }
    return spec;
}

HamiltonianSpec model_tetrahedral(double X, HalfInt j) {
    if (j.twice < 2) throw ConfigError("model_tetrahedral: needs j >= 1");
    const double jv = j.value();
    HamiltonianSpec spec;
    // -Delta(J) Sz with Delta = (3Jz^2 - j(j+1))/j^2
    spec.terms.push_back({-3.0, {JOp::Jz, JOp::Jz}, {SOp::Sz}});
    spec.terms.push_back({(jv + 1.0) / jv, {}, {SOp::Sz}});
    // 2 Re h12 Sx with Re h12 = (Jx^2 - Jy^2)/j^2
    spec.terms.push_back({2.0, {JOp::Jx, JOp::Jx}, {SOp::Sx}});
    spec.terms.push_back({-2.0, {JOp::Jy, JOp::Jy}, {SOp::Sx}});
    // -2 Im h12 Sy with Im h12 = X JxJyJz/j^3 (hermitized by build_quantum)
    if (X != 0.0) spec.terms.push_back({-2.0 * X, {JOp::Jx, JOp::Jy, JOp::Jz}, {SOp::Sy}});
    return spec;
}

Matrix build_quantum(const HamiltonianSpec& spec, HalfInt j, HalfInt s) {
    const AngularMomentumRep rj = make_rep(j);
    const AngularMomentumRep rs = make_rep(s);
    const int dim = rj.dim * rs.dim;
    Matrix h = Matrix::Zero(dim, dim);
    for (const Term& term : spec.terms) {
        if (!term.j_word.empty() && j.twice == 0)
            throw ConfigError("build_quantum: J-dependent term needs j > 0");
        const Matrix w =
            embed(word_matrix(rj, axes_of(term.j_word)), word_matrix(rs, axes_of(term.s_word)));
        const double scale = std::pow(j.value(), static_cast<double>(term.j_word.size()));
        h += (term.coeff / scale) * 0.5 * (w + w.adjoint());
    }
    return h;
}

Matrix semiclassical_reduce(const Matrix& H, HalfInt j, HalfInt s, const SpherePoint& p) {
    const int dj = j.dimension();
    const int ds = s.dimension();
    if (H.rows() != dj * ds || H.cols() != dj * ds)
        throw DimensionError("semiclassical_reduce: H must be (2j+1)(2s+1) square");
    const CoherentState coh = coherent_state(make_rep(j), p);
    const Matrix k = Eigen::kroneckerProduct(coh.amplitudes, Matrix::Identity(ds, ds));
    return k.adjoint() * H * k;
}

Matrix TwoLevelField::matrix(const SpherePoint& p) const {
    Matrix m(2, 2);
    const Complex off = h12(p);
    m << Complex(h11(p)), off, std::conj(off), Complex(h22(p));
    return m;
}

TwoLevelField tetrahedral_field(double X, HalfInt j) {
    if (j.twice < 2) throw ConfigError("tetrahedral_field: needs j >= 1");
    const double jv = j.value();
    auto delta = [jv](const SpherePoint& p) {  // h22 - h11 at J = j n
        const double nz = std::cos(p.theta);
        return 3.0 * nz * nz - (jv + 1.0) / jv;
    };
    TwoLevelField f;
    f.h11 = [delta](const SpherePoint& p) { return -0.5 * delta(p); };
    f.h22 = [delta](const SpherePoint& p) { return +0.5 * delta(p); };
    f.h12 = [X](const SpherePoint& p) {
        const Eigen::Vector3d n = p.unit();
        return Complex(n.x() * n.x() - n.y() * n.y(), X * n.x() * n.y() * n.z());
    };
    return f;
}

std::vector<LabeledEnergy> local_model_spectrum(const LocalModelParams& params) {
    if (params.truncation_n < 2) throw ConfigError("local model: truncation_n >= 2 required");
    std::vector<LabeledEnergy> spectrum;
    spectrum.reserve(1 + 2 * params.truncation_n);
    spectrum.push_back({"0", params.t_tilde});
    for (int n = 1; n <= params.truncation_n; ++n) {
        const double e = std::sqrt(n + params.t_tilde * params.t_tilde);
        spectrum.push_back({std::to_string(n) + "-", -e});
        spectrum.push_back({std::to_string(n) + "+", +e});
    }
    return spectrum;
}

Matrix local_model_matrix(const LocalModelParams& params) {
    if (params.truncation_n < 2) throw ConfigError("local model: truncation_n >= 2 required");
    const int levels = params.truncation_n + 1;
    Matrix h = Matrix::Zero(2 * levels, 2 * levels);
    // basis index 2n for |n,+>, 2n+1 for |n,->; blocks ((-t, a), (a^dag, t))
    for (int n = 0; n < levels; ++n) {
        h(2 * n, 2 * n) = -params.t_tilde;
        h(2 * n + 1, 2 * n + 1) = params.t_tilde;
    }
    for (int n = 0; n + 1 < levels; ++n) {
        const double amp = std::sqrt(n + 1.0);  // <n| a |n+1>
        h(2 * n, 2 * (n + 1) + 1) = amp;
        h(2 * (n + 1) + 1, 2 * n) = amp;
    }
    return h;
}

}  // namespace chernband

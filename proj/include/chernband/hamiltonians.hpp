#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chernband/spin_algebra.hpp"

namespace chernband {

enum class JOp { Jx, Jy, Jz };
enum class SOp { Sx, Sy, Sz };

// One monomial coeff * (J-word) * (S-word). Each J factor carries an implicit
// 1/j so the slow operators enter as J/j, keeping the classical limit finite.
struct Term {
    double coeff = 0.0;
    std::vector<JOp> j_word;
    std::vector<SOp> s_word;
};

// Declarative H(S, J/j). Every word is hermitized as (W + W^dag)/2, so any
// coefficient list yields a Hermitian operator.
struct HamiltonianSpec {
    std::vector<Term> terms;
};

// (1-t) Sz + (t/j) J.S: decoupled spin at t=0, isotropic coupling at t=1.
// Terms with vanishing coefficient are dropped.
HamiltonianSpec model_eq1(double t);

// Spin-1/2 quantization of the tetrahedral two-level field (see
// tetrahedral_field): -Delta(J) Sz + 2 ReH12(J) Sx - 2X ImH12(J) Sy with
// Delta = (3Jz^2 - j(j+1))/j^2, ReH12 = (Jx^2 - Jy^2)/j^2, ImH12 = JxJyJz/j^3.
// Its coherent-state reduction reproduces the field up to O(1/j).
HamiltonianSpec model_tetrahedral(double X, HalfInt j);

Matrix build_quantum(const HamiltonianSpec& spec, HalfInt j, HalfInt s);

// Partial coherent-state expectation M_ab = <coh(p) (x) a| H |coh(p) (x) b>
// over the s-basis: the (2s+1) x (2s+1) semiclassical field at J_cl = j n(p).
Matrix semiclassical_reduce(const Matrix& H, HalfInt j, HalfInt s, const SpherePoint& p);

// Two-level field ((h11, h12), (conj h12, h22)) over the sphere.
struct TwoLevelField {
    std::function<double(const SpherePoint&)> h11, h22;
    std::function<Complex(const SpherePoint&)> h12;

    Matrix matrix(const SpherePoint& p) const;
};

// Rotational field of a doubly degenerate tetrahedral vibrational level, in the
// traceless gauge h11 = -h22: h12 = (Jx^2 - Jy^2)/j^2 + i X JxJyJz/j^3 and
// h22 - h11 = (3Jz^2 - j(j+1))/j^2, evaluated at J = j n.
TwoLevelField tetrahedral_field(double X, HalfInt j);

// Local model near the south-pole band contact, in units of E_tilde = E sqrt(2j):
// H_tilde = ((-t_tilde, a), (a^dag, t_tilde)) with t_tilde = (2t-1) sqrt(2j).
struct LocalModelParams {
    double t_tilde = 0.0;
    int truncation_n = 40;  // oscillator basis cutoff, >= 2
};

struct LabeledEnergy {
    std::string label;
    double energy;
};

// Analytic spectrum: E0 = t_tilde for the lone |0,-> state and
// En^{+-} = +-sqrt(n + t_tilde^2) for n = 1 ... truncation_n.
std::vector<LabeledEnergy> local_model_spectrum(const LocalModelParams& params);

// Truncated matrix in the basis {|n> (x) |+->, n <= truncation_n}; apart from
// one spurious edge eigenvalue -t_tilde from the cut |N,+> state, its spectrum
// is exactly the analytic one.
Matrix local_model_matrix(const LocalModelParams& params);

}  // namespace chernband

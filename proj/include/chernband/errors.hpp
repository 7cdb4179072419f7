#pragma once

#include <stdexcept>
#include <string>

namespace chernband {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input: unparseable flags, malformed spec files, missing parameters.
struct ConfigError : Error {
    using Error::Error;
};

// Operands with incompatible or invalid shapes (non-square operator, spin mismatch).
struct DimensionError : Error {
    using Error::Error;
};

struct NonHermitianError : Error {
    int row, col;
    double asymmetry;
    NonHermitianError(const std::string& msg, int row_, int col_, double asymmetry_)
        : Error(msg), row(row_), col(col_), asymmetry(asymmetry_) {}
};

// Band clustering cannot decide between two competing spectral gaps.
struct AmbiguityError : Error {
    double used_gap, unused_gap;
    AmbiguityError(const std::string& msg, double used, double unused)
        : Error(msg), used_gap(used), unused_gap(unused) {}
};

// Eigenvalue collision of the matrix field at a sphere point; indices are
// undefined there, so this is always a hard error, never perturbed around.
struct DegeneracyError : Error {
    double theta, phi, gap;
    DegeneracyError(const std::string& msg, double theta_, double phi_, double gap_)
        : Error(msg), theta(theta_), phi(phi_), gap(gap_) {}
};

// A zero of h12 sitting on the h22 == h11 surface: its degree is undefined.
struct ConicalContactError : Error {
    using Error::Error;
};

// Two distinct zeros of h12 inside one winding circle; a deeper mesh separates them.
struct CloseZerosError : Error {
    using Error::Error;
};

struct UndersamplingError : Error {
    using Error::Error;
};

struct ZeroOnCircleError : Error {
    using Error::Error;
};

// Admissibility (max face phase < pi/2) not reached within the depth cap.
struct RefinementCapError : Error {
    double max_face_phase;
    int depth;
    RefinementCapError(const std::string& msg, double phase, int depth_)
        : Error(msg), max_face_phase(phase), depth(depth_) {}
};

}  // namespace chernband

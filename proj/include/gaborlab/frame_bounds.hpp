#pragma once

namespace gaborlab {

// Global default tolerance for frame/Bessel/Riesz verdicts on normalized
// problems.  "There exist constants A, B" becomes a numerical rank decision.
constexpr double kDefaultTolerance = 1e-9;

// Relative rank cutoff for frame-for-subspace (basic frame) verdicts: spectral
// values below cutoff * largest are treated as zero.
constexpr double kRankCutoff = 1e-12;

struct FrameBounds {
    double A_opt = 0.0;
    double B_opt = 0.0;
    bool is_frame = false;
    bool is_bessel_only = false;
    bool is_parseval = false;
};

inline FrameBounds make_frame_bounds(double a, double b, double tol = kDefaultTolerance) {
    FrameBounds fb;
    fb.A_opt = a < 0.0 && a > -tol ? 0.0 : a; // clamp eigensolver noise below zero
    fb.B_opt = b;
    fb.is_frame = fb.A_opt > tol;
    fb.is_bessel_only = !fb.is_frame;
    fb.is_parseval = fb.is_frame && fb.A_opt > 1.0 - tol && fb.A_opt < 1.0 + tol &&
                     fb.B_opt > 1.0 - tol && fb.B_opt < 1.0 + tol;
    return fb;
}

} // namespace gaborlab

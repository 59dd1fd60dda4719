// ball.hpp
// Quadrature over balls B_r(x): cell-average times the fraction of the cell
// inside the ball. Interior cells weigh 1, exterior 0, and cells cut by the
// sphere are resolved by a fixed 4^n-point subsample, so the result is
// deterministic and monotone in r for nonnegative integrands.

#ifndef PFLAB_BALL_HPP
#define PFLAB_BALL_HPP

#include "pflab/field.hpp"

namespace pflab {

// Requires B_r(center) inside Omega; the error names the violated margin.
double ball_integral(const ScalarField& f, std::array<double, 3> center, double r);

// True if the closed ball fits inside the domain box.
bool ball_inside(const GridSpec& g, std::array<double, 3> center, double r);

} // namespace pflab

#endif

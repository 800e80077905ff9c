#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace vmlimit::interp {

// 4-point Lagrange cubic weights for fractional offset s in [0,1).
// Nodes sit at -1, 0, 1, 2 relative to the base index; the interpolated
// point is at offset s from node 0.  s == 0 gives exactly {0, 1, 0, 0},
// so integer shifts reproduce grid values bit for bit.
std::array<double, 4> cubic_weights(double s);

// Interpolate a line of samples at (index0 + s) per output node, where the
// whole line shares one real-valued shift: out[i] = line(i - shift).
// Values requested outside [0, n) use the constant extension values
// left_value / right_value.  No clamping; pure Lagrange.  A constant
// per-line shift conserves the line sum exactly when both extensions
// equal the plateau value at the matching end.
void shift_line(const double* in, int n, double shift,
                double left_value, double right_value, double* out);

// Clamp each out[i] produced by shift_line to the hull of its 4-point
// stencil (extensions included when the stencil leaves the array).
void shift_line_clamped(const double* in, int n, double shift,
                        double left_value, double right_value, double* out,
                        double* stencil_lo, double* stencil_hi);

// 8-point Lagrange septic weights for fractional offset s in [0,1), nodes
// at -3..4 relative to the base index.  s == 0 gives exactly
// {0, 0, 0, 1, 0, 0, 0, 0}, like the cubic.
std::array<double, 8> septic_weights(double s);

// Septic line shift: seventh-order where the data is smooth, with constant
// stretches passing through bit for bit.  No limiter: a stencil-hull clamp
// erodes smooth extrema by O(dx^2) every step, and that erosion is what
// sets the floor of the Ampere cross-check.  The caller enforces
// positivity and conservation on top.
void shift_line_septic(const double* in, int n, double shift,
                       double left_value, double right_value, double* out);

// Restore sum(vals) to target_sum without leaving [lo, hi] bounds.
// delta = sum(vals) - target_sum.  Excess mass is removed with headroom
// weights (vals - lo), deficit added with (hi - vals); the correction
// factor is capped at 1 so no value crosses its bound.  Returns the
// residual sum mismatch still left after the pass (0 when fully fixed).
double restore_sum(double* vals, const double* lo, const double* hi,
                   std::int64_t n, double target_sum);

// Sample a scalar field given on nx cell centers at arbitrary x, cubic in
// the interior, constant extension outside.  x0 is the center of cell 0.
double sample_cell_field(const std::vector<double>& field, double x0,
                         double dx, double x);

}  // namespace vmlimit::interp

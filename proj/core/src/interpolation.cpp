#include "vmlimit/interpolation.hpp"

#include <algorithm>
#include <cmath>

namespace vmlimit::interp {

std::array<double, 4> cubic_weights(double s) {
  // Lagrange basis on nodes -1, 0, 1, 2 evaluated at s.  Every factor is
  // kept in product form so s == 0 yields {0, 1, 0, 0} with no rounding.
  double sm1 = s - 1.0, sm2 = s - 2.0, sp1 = s + 1.0;
  return {-s * sm1 * sm2 / 6.0, sp1 * sm1 * sm2 / 2.0,
          -sp1 * s * sm2 / 2.0, sp1 * s * sm1 / 6.0};
}

namespace {

struct LineShift {
  int base0;
  double frac;
};

LineShift split_shift(double shift) {
  double t0 = -shift;
  double b0f = std::floor(t0);
  double s = t0 - b0f;
  if (s >= 1.0) {  // floor rounding at exact integers
    s -= 1.0;
    b0f += 1.0;
  }
  return {static_cast<int>(b0f), s};
}

inline double fetch(const double* in, int n, int k, double lv, double rv) {
  if (k < 0) return lv;
  if (k >= n) return rv;
  return in[k];
}

}  // namespace

void shift_line(const double* in, int n, double shift,
                double left_value, double right_value, double* out) {
  LineShift ls = split_shift(shift);
  std::array<double, 4> w = cubic_weights(ls.frac);
  for (int i = 0; i < n; ++i) {
    int k = i + ls.base0;
    double a = fetch(in, n, k - 1, left_value, right_value);
    double b = fetch(in, n, k, left_value, right_value);
    double c = fetch(in, n, k + 1, left_value, right_value);
    double d = fetch(in, n, k + 2, left_value, right_value);
    // Constant stretches pass through untouched; the weights sum to 1 only
    // up to rounding.
    if (a == b && b == c && c == d) {
      out[i] = b;
    } else {
      out[i] = w[0] * a + w[1] * b + w[2] * c + w[3] * d;
    }
  }
}

void shift_line_clamped(const double* in, int n, double shift,
                        double left_value, double right_value, double* out,
                        double* stencil_lo, double* stencil_hi) {
  LineShift ls = split_shift(shift);
  std::array<double, 4> w = cubic_weights(ls.frac);
  for (int i = 0; i < n; ++i) {
    int k = i + ls.base0;
    double a = fetch(in, n, k - 1, left_value, right_value);
    double b = fetch(in, n, k, left_value, right_value);
    double c = fetch(in, n, k + 1, left_value, right_value);
    double d = fetch(in, n, k + 2, left_value, right_value);
    double lo = std::min(std::min(a, b), std::min(c, d));
    double hi = std::max(std::max(a, b), std::max(c, d));
    double v = w[0] * a + w[1] * b + w[2] * c + w[3] * d;
    out[i] = std::clamp(v, lo, hi);
    stencil_lo[i] = lo;
    stencil_hi[i] = hi;
  }
}

std::array<double, 8> septic_weights(double s) {
  // Lagrange basis on nodes -3..4 at s, in product form: every off-center
  // weight carries a bare factor s, so s == 0 is exact.
  double sp3 = s + 3.0, sp2 = s + 2.0, sp1 = s + 1.0;
  double sm1 = s - 1.0, sm2 = s - 2.0, sm3 = s - 3.0, sm4 = s - 4.0;
  return {-sp2 * sp1 * s * sm1 * sm2 * sm3 * sm4 / 5040.0,
          sp3 * sp1 * s * sm1 * sm2 * sm3 * sm4 / 720.0,
          -sp3 * sp2 * s * sm1 * sm2 * sm3 * sm4 / 240.0,
          sp3 * sp2 * sp1 * sm1 * sm2 * sm3 * sm4 / 144.0,
          -sp3 * sp2 * sp1 * s * sm2 * sm3 * sm4 / 144.0,
          sp3 * sp2 * sp1 * s * sm1 * sm3 * sm4 / 240.0,
          -sp3 * sp2 * sp1 * s * sm1 * sm2 * sm4 / 720.0,
          sp3 * sp2 * sp1 * s * sm1 * sm2 * sm3 / 5040.0};
}

void shift_line_septic(const double* in, int n, double shift,
                       double left_value, double right_value, double* out) {
  LineShift ls = split_shift(shift);
  std::array<double, 8> w = septic_weights(ls.frac);
  for (int i = 0; i < n; ++i) {
    int k = i + ls.base0;
    double st[8];
    for (int j = 0; j < 8; ++j)
      st[j] = fetch(in, n, k - 3 + j, left_value, right_value);
    bool flat = true;
    for (int j = 1; j < 8; ++j) flat = flat && st[j] == st[0];
    // Constant stretches pass through bit-exactly; no limiter otherwise,
    // the caller owns positivity and conservation.
    if (flat) {
      out[i] = st[0];
    } else {
      out[i] = w[0] * st[0] + w[1] * st[1] + w[2] * st[2] + w[3] * st[3] +
               w[4] * st[4] + w[5] * st[5] + w[6] * st[6] + w[7] * st[7];
    }
  }
}

double restore_sum(double* vals, const double* lo, const double* hi,
                   std::int64_t n, double target_sum) {
  long double sum = 0.0L;
  for (std::int64_t i = 0; i < n; ++i) sum += vals[i];
  double delta = static_cast<double>(sum - static_cast<long double>(target_sum));
  if (delta == 0.0) return 0.0;

  if (delta > 0.0) {
    long double wsum = 0.0L;
    for (std::int64_t i = 0; i < n; ++i) wsum += vals[i] - lo[i];
    double weight_total = static_cast<double>(wsum);
    if (!(weight_total > 0.0)) return delta;
    double lambda = std::min(1.0, delta / weight_total);
    for (std::int64_t i = 0; i < n; ++i) vals[i] -= lambda * (vals[i] - lo[i]);
    return delta - lambda * weight_total;
  }

  long double wsum = 0.0L;
  for (std::int64_t i = 0; i < n; ++i) wsum += hi[i] - vals[i];
  double weight_total = static_cast<double>(wsum);
  if (!(weight_total > 0.0)) return delta;
  double lambda = std::min(1.0, -delta / weight_total);
  for (std::int64_t i = 0; i < n; ++i) vals[i] += lambda * (hi[i] - vals[i]);
  return delta + lambda * weight_total;
}

double sample_cell_field(const std::vector<double>& field, double x0,
                         double dx, double x) {
  int n = static_cast<int>(field.size());
  if (n == 1) return field[0];
  double t = (x - x0) / dx;
  double bf = std::floor(t);
  double s = t - bf;
  if (s >= 1.0) {
    s -= 1.0;
    bf += 1.0;
  }
  int k = static_cast<int>(bf);
  auto w = cubic_weights(s);
  double lv = field.front(), rv = field.back();
  double a = fetch(field.data(), n, k - 1, lv, rv);
  double b = fetch(field.data(), n, k, lv, rv);
  double c = fetch(field.data(), n, k + 1, lv, rv);
  double d = fetch(field.data(), n, k + 2, lv, rv);
  if (a == b && b == c && c == d) return b;
  return w[0] * a + w[1] * b + w[2] * c + w[3] * d;
}

}  // namespace vmlimit::interp

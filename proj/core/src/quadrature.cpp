#include "tunebands/quadrature.hpp"

#include <cmath>

#include "tunebands/errors.hpp"

namespace tunebands {

namespace {

// Kronrod-15 abscissae on [-1, 1] (nonnegative half) and weights; the odd
// Kronrod points interleave the Gauss-7 points.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
  double kronrod;
  double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  double gauss = fc * kWg[3];
  double kronrod = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::fabs(kronrod - gauss)};
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                double tol, double scale, int depth) {
  if (depth > 60) {
    throw NumericError("integrate: exceeded subdivision depth");
  }
  const PanelResult panel = gk15(f, a, b);
  if (panel.error <= tol * std::max(scale, std::fabs(panel.kronrod)) ||
      panel.error <= 1e-300) {
    return panel.kronrod;
  }
  const double mid = 0.5 * (a + b);
  return adaptive(f, a, mid, tol, scale, depth + 1) +
         adaptive(f, mid, b, tol, scale, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  if (a == b) return 0.0;
  if (!(a < b)) return -integrate(f, b, a, rel_tol);
  const PanelResult whole = gk15(f, a, b);
  const double scale = std::max(std::fabs(whole.kronrod), 1e-12);
  return adaptive(f, a, b, rel_tol, scale, 0);
}

}  // namespace tunebands

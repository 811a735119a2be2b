#ifndef TUNEBANDS_QUADRATURE_HPP
#define TUNEBANDS_QUADRATURE_HPP

#include <functional>

namespace tunebands {

// Adaptive Gauss-Kronrod (G7, K15) integration on [a, b].  Subdivides until
// the per-interval error estimate meets the relative tolerance (with a small
// absolute floor).  Throws NumericError past the recursion limit.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-8);

}  // namespace tunebands

#endif  // TUNEBANDS_QUADRATURE_HPP

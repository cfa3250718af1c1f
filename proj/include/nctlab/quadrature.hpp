#pragma once

// Trapezoid rules for smooth periodic integrands, where the rule converges
// spectrally. Node counts double until two successive estimates agree.

#include <functional>
#include <vector>

#include "nctlab/weyl.hpp"

namespace nct {

struct QuadratureOptions {
  double tol = 1e-10;        // agreement that ends the doubling
  double fail_tol = 1e-8;    // disagreement at max_nodes that raises AccuracyError
  int min_nodes = 16;
  int max_nodes = 4096;
};

/// Integral over one period [0, period) of a period-periodic function.
cplx periodic_trapezoid(const std::function<cplx(double)>& f, double period = 1.0,
                        const QuadratureOptions& opts = {});

/// Fourier coefficients c_n = (1/period) integral_0^period e^{-2 pi i n t/period} f(t) dt
/// for n = -nmax..nmax, returned in order of n. All coefficients must agree
/// between successive doublings.
std::vector<cplx> periodic_fourier(const std::function<cplx(double)>& f, double period, int nmax,
                                   const QuadratureOptions& opts = {});

}  // namespace nct

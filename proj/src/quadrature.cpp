#include "nctlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nctlab/errors.hpp"

namespace nct {

cplx periodic_trapezoid(const std::function<cplx(double)>& f, double period,
                        const QuadratureOptions& opts) {
  int nodes = opts.min_nodes;
  cplx sum = 0.0;
  for (int j = 0; j < nodes; ++j) sum += f(period * j / nodes);
  cplx prev = sum * (period / nodes);
  while (nodes < opts.max_nodes) {
    // Refinement only needs the new midpoints.
    for (int j = 0; j < nodes; ++j) sum += f(period * (j + 0.5) / nodes);
    nodes *= 2;
    const cplx cur = sum * (period / nodes);
    const double diff = std::abs(cur - prev);
    if (diff <= opts.tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
    if (nodes >= opts.max_nodes) {
      if (diff > opts.fail_tol * std::max(1.0, std::abs(cur)))
        throw AccuracyError("periodic trapezoid did not converge: successive difference " +
                            std::to_string(diff));
      return cur;
    }
  }
  return prev;
}

std::vector<cplx> periodic_fourier(const std::function<cplx(double)>& f, double period, int nmax,
                                   const QuadratureOptions& opts) {
  int nodes = opts.min_nodes;
  while (nodes <= 2 * nmax + 1) nodes *= 2;
  std::vector<cplx> samples;
  auto coefficients = [&](int m) {
    std::vector<cplx> c(static_cast<std::size_t>(2 * nmax + 1));
    for (int n = -nmax; n <= nmax; ++n) {
      cplx acc = 0.0;
      for (int j = 0; j < m; ++j) acc += samples[j] * unit_phase(-2.0 * kPi * double(n) * j / m);
      c[n + nmax] = acc / double(m);
    }
    return c;
  };
  samples.resize(nodes);
  for (int j = 0; j < nodes; ++j) samples[j] = f(period * j / nodes);
  auto prev = coefficients(nodes);
  while (true) {
    std::vector<cplx> finer(2 * static_cast<std::size_t>(nodes));
    for (int j = 0; j < nodes; ++j) {
      finer[2 * j] = samples[j];
      finer[2 * j + 1] = f(period * (j + 0.5) / nodes);
    }
    samples = std::move(finer);
    nodes *= 2;
    auto cur = coefficients(nodes);
    double diff = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      diff = std::max(diff, std::abs(cur[i] - prev[i]));
      scale = std::max(scale, std::abs(cur[i]));
    }
    if (diff <= opts.tol * scale) return cur;
    if (nodes >= opts.max_nodes) {
      if (diff > opts.fail_tol * scale)
        throw AccuracyError("periodic Fourier extraction did not converge: successive difference " +
                            std::to_string(diff));
      return cur;
    }
    prev = std::move(cur);
  }
}

}  // namespace nct

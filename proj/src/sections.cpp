#include "nctlab/sections.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nctlab/errors.hpp"
#include "nctlab/quadrature.hpp"
#include "nctlab/random.hpp"

namespace nct {

namespace {

// |psi(t)| <= sum |amp| |t|^deg e^{-pi (t - c)^2 / w}
double packet_envelope(const GaussPacket& psi, double t) {
  double sum = 0.0;
  for (const auto& term : psi.terms()) {
    const double u = t - term.center;
    sum += std::abs(term.amp) * std::pow(std::abs(t), term.deg) * std::exp(-kPi * u * u / term.width);
  }
  return sum;
}

bool near_integer(double v) { return std::abs(v - std::round(v)) <= kIntegralityTol; }

}  // namespace

ConstraintResult constraint_check(cplx tau, double theta, int p) {
  if (!(tau.imag() > 0.0)) throw std::invalid_argument("Im(tau) must be positive");
  const double shifted = tau.imag() - 0.5 * p * theta;
  if (!near_integer(tau.real()) || !near_integer(shifted)) return {};
  return {true, static_cast<int>(std::lround(tau.real())), static_cast<int>(std::lround(shifted))};
}

ModuliParams::ModuliParams(double theta, cplx tau, int p) : theta_(theta), tau_(tau), p_(p) {
  if (!(theta >= 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in [0,1)");
  if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
    throw std::invalid_argument("tau must be finite with Im(tau) > 0");
  if (p == 0) throw std::invalid_argument("degree p must be nonzero");
  constraint_ = constraint_check(tau, theta, p);
}

// ---------------------------------------------------------------------------

cplx automorphy_factor(FactorKind kind, int p, LatticePoint lambda, cplx z, cplx tau) {
  if (!(tau.imag() > 0.0)) throw std::invalid_argument("Im(tau) must be positive");
  const double n = lambda.n;
  if (kind == FactorKind::alpha)
    return std::exp(-kI * kPi * tau * double(p) * n * n - 2.0 * kI * kPi * double(p) * n * z);
  return unit_phase(-kPi * p * tau.real() * n * n - 2.0 * kPi * p * n * z.real());
}

double cocycle_defect(const FactorFn& factor, cplx tau, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const LatticePoint l1{rng.integer(-2, 2), rng.integer(-2, 2)};
    const LatticePoint l2{rng.integer(-2, 2), rng.integer(-2, 2)};
    const cplx z = rng.uniform() + rng.uniform() * tau;
    const cplx shift = double(l2.m) + double(l2.n) * tau;
    const cplx lhs = factor({l1.m + l2.m, l1.n + l2.n}, z);
    const cplx rhs = factor(l1, z + shift) * factor(l2, z);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  return worst;
}

double cocycle_defect(FactorKind kind, int p, cplx tau, int samples, std::uint64_t seed) {
  return cocycle_defect(
      [=](LatticePoint l, cplx z) { return automorphy_factor(kind, p, l, z, tau); }, tau, samples,
      seed);
}

double factor_defect(const ComplexFn& f, const FactorFn& factor, cplx tau, int grid) {
  if (grid < 2) throw std::invalid_argument("grid must be at least 2");
  double worst = 0.0, scale = 0.0;
  for (int a = 0; a < grid; ++a) {
    for (int b = 0; b < grid; ++b) {
      const cplx z = double(a) / grid + (double(b) / grid) * tau;
      const cplx fz = f(z);
      const cplx f1 = f(z + 1.0);
      const cplx ft = f(z + tau);
      scale = std::max({scale, std::abs(fz), std::abs(f1), std::abs(ft)});
      worst = std::max(worst, std::abs(f1 - factor({1, 0}, z) * fz));
      worst = std::max(worst, std::abs(ft - factor({0, 1}, z) * fz));
    }
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

double quasiperiodicity_defect(const ComplexFn& f, cplx tau, int p, int grid) {
  return factor_defect(
      f, [=](LatticePoint l, cplx z) { return automorphy_factor(FactorKind::beta, p, l, z, tau); },
      tau, grid);
}

double quasiperiodicity_defect(const ComplexFn& f, const ModuliParams& params, int grid) {
  return quasiperiodicity_defect(f, params.tau(), params.p(), grid);
}

// ---------------------------------------------------------------------------

QuasiSection::QuasiSection(ModuliParams params, FiberVector fibers, int series_N)
    : params_(params), fibers_(std::move(fibers)), series_N_(series_N), packet_center_(0.0) {
  if (params_.p() < 1) throw std::invalid_argument("sections need degree p >= 1");
  if (fibers_.p() != params_.p())
    throw std::invalid_argument("fiber count " + std::to_string(fibers_.p()) +
                                " does not match degree " + std::to_string(params_.p()));
  if (series_N < 1) throw std::invalid_argument("series truncation must be >= 1");
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (const auto& c : fibers_.components()) {
    for (const auto& t : c.terms()) {
      lo = any ? std::min(lo, t.center) : t.center;
      hi = any ? std::max(hi, t.center) : t.center;
      any = true;
    }
  }
  packet_center_ = 0.5 * (lo + hi);
}

long QuasiSection::window_center(double y) const {
  return std::lround((packet_center_ - y) * params_.p() / params_.omega_y());
}

cplx QuasiSection::operator()(cplx z) const {
  const double x = z.real(), y = z.imag();
  const int p = params_.p();
  const double step = params_.omega_y() / p;
  const double wx = params_.omega_x() / p;
  const long n0 = window_center(y);
  cplx sum = 0.0;
  for (long n = n0 - series_N_; n <= n0 + series_N_; ++n) {
    const GaussPacket& fib = fibers_.fiber(n);
    if (fib.empty()) continue;
    const double dn = double(n);
    sum += unit_phase(2.0 * kPi * dn * x + kPi * dn * dn * wx) * packet_eval(fib, y + dn * step);
  }
  return sum;
}

double QuasiSection::truncation_bound(cplx z) const {
  const double y = z.imag();
  const double step = params_.omega_y() / params_.p();
  const long n0 = window_center(y);
  double bound = 0.0;
  for (long k = series_N_ + 1; k <= 3 * series_N_; ++k) {
    for (long n : {n0 - k, n0 + k}) bound += packet_envelope(fibers_.fiber(n), y + double(n) * step);
  }
  return bound;
}

ComplexFn QuasiSection::evaluator() const {
  return [sec = *this](cplx z) { return sec(z); };
}

cplx wbz_forward_eval(const QuasiSection& sec, cplx z) { return sec(z); }

std::vector<cplx> wbz_inverse(const ComplexFn& f, const ModuliParams& params, int n,
                              std::span<const double> y_grid) {
  const int p = params.p();
  if (p < 1) throw std::invalid_argument("fiber recovery needs degree p >= 1");
  const double dn = n;
  const cplx shift = (dn / p) * params.tau();
  const double phase0 = kPi * dn * dn * params.omega_x() / p;
  std::vector<cplx> out;
  out.reserve(y_grid.size());
  for (double y : y_grid) {
    auto integrand = [&](double x) {
      return unit_phase(-2.0 * kPi * dn * x + phase0) * f(cplx(x, y) - shift);
    };
    out.push_back(periodic_trapezoid(integrand));
  }
  return out;
}

QuasiSection nabla_fiber(int direction, const QuasiSection& sec) {
  const auto& params = sec.params();
  std::vector<GaussPacket> out;
  out.reserve(static_cast<std::size_t>(params.p()));
  for (const auto& c : sec.fibers().components()) {
    if (direction == 1)
      out.push_back(cplx(0.0, 2.0 * kPi * params.p() / params.omega_y()) * packet_mul_t(c));
    else if (direction == 2)
      out.push_back(packet_derivative(c));
    else
      throw std::invalid_argument("covariant derivative direction must be 1 or 2");
  }
  return QuasiSection(params, FiberVector(std::move(out)), sec.series_N());
}

ComplexFn alpha_gauge(const ComplexFn& f_beta, double omega_y, int p) {
  return [=](cplx z) {
    const double y = z.imag();
    return std::exp(kPi * p * y * y / omega_y) * f_beta(z);
  };
}

// ---------------------------------------------------------------------------

TruncatedSum jacobi_theta(cplx z, cplx tau, int N) {
  if (!(tau.imag() > 0.0)) throw std::invalid_argument("Im(tau) must be positive");
  if (N < 1) throw std::invalid_argument("theta truncation must be >= 1");
  auto term = [&](int n) {
    const double dn = n;
    return std::exp(kI * kPi * tau * dn * dn + 2.0 * kI * kPi * dn * z);
  };
  TruncatedSum out{term(0), 0.0};
  for (int n = 1; n <= N; ++n) out.value += term(n) + term(-n);
  for (int n = N + 1; n <= 3 * N; ++n) out.tail_bound += std::abs(term(n)) + std::abs(term(-n));
  return out;
}

ComplexFn holo_basis(int p, cplx tau, int n_class, int N) {
  if (p <= 0) throw std::invalid_argument("holomorphic sections exist only for p > 0");
  if (n_class < 0 || n_class >= p) throw std::invalid_argument("residue class must lie in [0,p)");
  if (!(tau.imag() > 0.0)) throw std::invalid_argument("Im(tau) must be positive");
  const int limit = N * p;
  return [=](cplx z) {
    cplx sum = 0.0;
    // n = n_class + k p with |n| <= limit
    const int kmin = -((limit + n_class) / p);
    for (int k = kmin;; ++k) {
      const int n = n_class + k * p;
      if (n > limit) break;
      const double dn = n;
      sum += std::exp(kI * kPi * tau * dn * dn / double(p) + 2.0 * kI * kPi * dn * z);
    }
    return sum;
  };
}

double dbar_defect(const ComplexFn& f, int grid, double h, cplx tau) {
  if (grid < 2 || !(h > 0.0)) throw std::invalid_argument("need grid >= 2 and h > 0");
  auto d = [&](cplx z, cplx dir) {
    return (-f(z + 2.0 * h * dir) + 8.0 * f(z + h * dir) - 8.0 * f(z - h * dir) +
            f(z - 2.0 * h * dir)) /
           (12.0 * h);
  };
  double worst = 0.0, scale = 0.0;
  for (int a = 0; a < grid; ++a) {
    for (int b = 0; b < grid; ++b) {
      const cplx z = double(a) / grid + (double(b) / grid) * tau;
      scale = std::max(scale, std::abs(f(z)));
      worst = std::max(worst, std::abs(0.5 * (d(z, 1.0) + kI * d(z, kI))));
    }
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

namespace {

Eigen::MatrixXcd weighted_gram(const std::vector<ComplexFn>& fs, int p, cplx tau, int grid) {
  const auto k = static_cast<Eigen::Index>(fs.size());
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(k, k);
  std::vector<cplx> vals(fs.size());
  for (int a = 0; a < grid; ++a) {
    for (int b = 0; b < grid; ++b) {
      const cplx z = double(a) / grid + (double(b) / grid) * tau;
      const double y = z.imag();
      const double w = std::exp(-2.0 * kPi * p * y * y / tau.imag());
      for (std::size_t i = 0; i < fs.size(); ++i) vals[i] = fs[i](z);
      for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) g(i, j) += std::conj(vals[i]) * vals[j] * w;
    }
  }
  // Parallelogram area omega_y, grid^2 trapezoid nodes.
  return g * (tau.imag() / (double(grid) * grid));
}

double min_normalized_eigenvalue(const Eigen::MatrixXcd& g) {
  Eigen::VectorXd d = g.diagonal().real().cwiseSqrt();
  Eigen::MatrixXcd n = g;
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) n(i, j) /= d(i) * d(j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(n, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

Eigen::MatrixXcd holo_gram(int p, cplx tau, int grid) {
  std::vector<ComplexFn> fs;
  for (int c = 0; c < p; ++c) fs.push_back(holo_basis(p, tau, c));
  return weighted_gram(fs, p, tau, grid);
}

HoloDimension holomorphic_dimension(int p, cplx tau) {
  if (p == 0) throw std::invalid_argument("degree p must be nonzero");
  HoloDimension out;
  // Kernel of (2 pi p y / omega_y + d/dy): c e^{-pi p y^2 / omega_y}, a Gaussian
  // of width omega_y / p. Only a positive width gives a Schwartz fiber.
  const double width = tau.imag() / p;
  if (!(width > 0.0)) return out;

  const ModuliParams params(0.0, tau, p);
  std::vector<ComplexFn> basis;
  for (int c = 0; c < p; ++c) {
    auto fibers = FiberVector::zero(p);
    fibers[c] = GaussPacket::gaussian(0.0, width);
    basis.push_back(alpha_gauge(QuasiSection(params, std::move(fibers)).evaluator(), tau.imag(), p));
  }
  std::vector<ComplexFn> holomorphic;
  for (const auto& f : basis) {
    const double d = dbar_defect(f, 16, 1e-3, tau);
    out.max_dbar = std::max(out.max_dbar, d);
    if (d <= 1e-8) holomorphic.push_back(f);
  }
  if (holomorphic.empty()) return out;
  const Eigen::MatrixXcd g = weighted_gram(holomorphic, p, tau, 32);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 1e-8 * top) ++out.dimension;
  out.min_gram_eigenvalue = min_normalized_eigenvalue(g);
  return out;
}

}  // namespace nct

#pragma once

// Line bundles over the elliptic curve E_tau = C / (Z + tau Z).
//
// Sections of the degree-p bundle with unitary factor of automorphy beta^p
// are the smooth f with
//
//   f(z + 1) = f(z),   f(z + tau) = exp(-i pi p (omega_x + 2x)) f(z),
//
// tau = omega_x + i omega_y. Every such f is a lattice-shifted Fourier
// series over p Schwartz fibers (the Weil-Brezin-Zak transform):
//
//   f(z) = sum_n e^{2 pi i n x} e^{i pi n^2 omega_x / p} f_[n](y + n omega_y / p).

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nctlab/fiber.hpp"
#include "nctlab/weyl.hpp"

namespace nct {

using ComplexFn = std::function<cplx(cplx)>;

inline constexpr double kIntegralityTol = 1e-9;

struct ConstraintResult {
  bool satisfied = false;
  int r = 0;  // round(omega_x), meaningful when satisfied
  int s = 0;  // round(omega_y - p theta / 2), meaningful when satisfied
};

/// Whether tau - (p theta / 2) i lies in Z + iZ, to kIntegralityTol.
ConstraintResult constraint_check(cplx tau, double theta, int p);

class ModuliParams {
 public:
  ModuliParams(double theta, cplx tau, int p);

  double theta() const { return theta_; }
  cplx tau() const { return tau_; }
  int p() const { return p_; }
  double omega_x() const { return tau_.real(); }
  double omega_y() const { return tau_.imag(); }
  /// Nome q = e^{i pi tau}.
  cplx q() const { return std::exp(kI * kPi * tau_); }

  bool constraint_satisfied() const { return constraint_.satisfied; }
  int r() const { return constraint_.r; }
  int s() const { return constraint_.s; }

 private:
  double theta_;
  cplx tau_;
  int p_;
  ConstraintResult constraint_;
};

// ---------------------------------------------------------------------------
// Factors of automorphy

struct LatticePoint {
  int m = 0;  // lambda = m + n tau
  int n = 0;
};

enum class FactorKind { alpha, beta };

/// alpha^p(lambda, z) = q^{-p n^2} e^{-2 pi i p n z}
/// beta^p(lambda, z)  = e^{-i pi p omega_x n^2} e^{-2 pi i p n x}
cplx automorphy_factor(FactorKind kind, int p, LatticePoint lambda, cplx z, cplx tau);

using FactorFn = std::function<cplx(LatticePoint, cplx)>;

/// Relative residual of alpha(l + l', z) = alpha(l, z + l') alpha(l', z),
/// maximized over random lattice pairs (|m|,|n| <= 2) and base points.
double cocycle_defect(const FactorFn& factor, cplx tau, int samples, std::uint64_t seed = 1);
double cocycle_defect(FactorKind kind, int p, cplx tau, int samples, std::uint64_t seed = 1);

/// Residual of f(z + 1) = factor(1, z) f(z) and f(z + tau) = factor(tau, z) f(z)
/// on a grid x grid sample of the fundamental parallelogram, relative to the
/// largest sampled |f|.
double factor_defect(const ComplexFn& f, const FactorFn& factor, cplx tau, int grid);

/// factor_defect for beta^p; p = 0 tests plain double periodicity.
double quasiperiodicity_defect(const ComplexFn& f, cplx tau, int p, int grid);

// ---------------------------------------------------------------------------
// Quasi-periodic sections

class QuasiSection {
 public:
  static constexpr int kDefaultSeriesN = 12;

  QuasiSection(ModuliParams params, FiberVector fibers, int series_N = kDefaultSeriesN);

  const ModuliParams& params() const { return params_; }
  const FiberVector& fibers() const { return fibers_; }
  int series_N() const { return series_N_; }

  /// Truncated series at z; the 2 series_N + 1 retained terms are those whose
  /// fiber argument lies closest to the packets' centers.
  cplx operator()(cplx z) const;

  /// Envelope bound on the discarded terms next to the window, at z.
  double truncation_bound(cplx z) const;

  ComplexFn evaluator() const;

 private:
  long window_center(double y) const;

  ModuliParams params_;
  FiberVector fibers_;
  int series_N_;
  double packet_center_;
};

cplx wbz_forward_eval(const QuasiSection& sec, cplx z);

/// Samples of the class-[n] fiber,
/// f_[n](y) = integral_0^1 e^{-2 pi i n x} e^{i pi n^2 omega_x/p} f(z - n tau / p) dx,
/// by a doubling periodic trapezoid rule. Throws AccuracyError on
/// non-convergence.
std::vector<cplx> wbz_inverse(const ComplexFn& f, const ModuliParams& params, int n,
                              std::span<const double> y_grid);

double quasiperiodicity_defect(const ComplexFn& f, const ModuliParams& params, int grid);

/// Covariant derivatives at fiber level:
/// direction 1: f_[n](t) -> (2 pi i p / omega_y) t f_[n](t)   (d/dx + 2 pi i p y / omega_y)
/// direction 2: f_[n] -> f_[n]'                               (d/dy)
QuasiSection nabla_fiber(int direction, const QuasiSection& sec);

/// z -> e^{pi p y^2 / omega_y} f(z): beta^p-sections to alpha^p-sections.
ComplexFn alpha_gauge(const ComplexFn& f_beta, double omega_y, int p);

// ---------------------------------------------------------------------------
// Theta functions

struct TruncatedSum {
  cplx value;
  double tail_bound = 0.0;
};

/// theta(z; q) = sum_{|n| <= N} q^{n^2} e^{2 pi i n z}, q = e^{i pi tau}.
TruncatedSum jacobi_theta(cplx z, cplx tau, int N);

/// f(z) = sum_{n = n_class mod p} q^{n^2/p} e^{2 pi i n z}, |n| <= N p.
ComplexFn holo_basis(int p, cplx tau, int n_class, int N = 12);

/// max |1/2 (d_x + i d_y) f| / max |f| over a grid of the parallelogram
/// spanned by 1 and tau, fourth-order central differences with step h.
double dbar_defect(const ComplexFn& f, int grid, double h, cplx tau = kI);

/// Gram matrix of the holomorphic basis in the L^2 pairing weighted by
/// e^{-2 pi p y^2 / omega_y} over the fundamental parallelogram.
Eigen::MatrixXcd holo_gram(int p, cplx tau, int grid = 32);

struct HoloDimension {
  int dimension = 0;
  double max_dbar = 0.0;
  double min_gram_eigenvalue = 0.0;  // after unit-diagonal normalization
};

/// Dimension of the holomorphic sections of the degree-p bundle, by solving
/// the fiber equation (2 pi p y / omega_y + d/dy) f = 0 and keeping the
/// normalizable solutions.
HoloDimension holomorphic_dimension(int p, cplx tau);

}  // namespace nct

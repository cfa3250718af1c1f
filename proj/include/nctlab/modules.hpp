#pragma once

// Heisenberg modules S(R) (x) C^p over the noncommutative torus.
//
// Every generator acts as phase * W(a,b) (x) M, with W a Weyl operator on each
// component and M a p x p matrix mixing the components. Right actions
// compose contravariantly: psi <| (ab) = A_b A_a psi.

#include <functional>

#include <Eigen/Dense>

#include "nctlab/fiber.hpp"
#include "nctlab/nctorus.hpp"
#include "nctlab/sections.hpp"

namespace nct {

struct ClockShift {
  int p = 1;
  Eigen::MatrixXcd C;  // diag(e^{2 pi i k / p})
  Eigen::MatrixXcd S;  // (S w)_k = w_{k-1 mod p}
};

ClockShift clock_shift(int p);

enum class Generator { U, V };
enum class ClassicalGenerator { u, v };

/// phase * W(a,b) (x) M.
struct FiberOp {
  cplx phase = 1.0;
  double a = 0.0;
  double b = 0.0;
  Eigen::MatrixXcd M;

  static FiberOp identity(int p);

  FiberVector apply(const FiberVector& psi) const;
  FiberOp inverse() const;
};

/// outer o inner.
FiberOp compose(const FiberOp& outer, const FiberOp& inner);
/// op^k for any integer k.
FiberOp power(const FiberOp& op, int k);

/// psi <| U = {W(s/p + theta, 0) (x) (S*)^s} psi,  psi <| V = {W(0,1) (x) C} psi.
FiberOp heis_op(Generator gen, int p, int s, double theta);
/// f <| u_tau = {W(omega_y/p, -omega_x/omega_y) (x) S} f,  f <| v_tau = {W(0, 1/omega_y) (x) C*} f.
FiberOp classical_op(ClassicalGenerator gen, const ModuliParams& params);
/// f <| U = e^{i pi r/p} {W(s/p + theta, 0) (x) (C*)^r S} f,  f <| V = {W(0,1) (x) (C*)^s} f.
/// Throws std::invalid_argument when tau - (p theta/2) i is not in Z + iZ.
FiberOp deformed_op(Generator gen, const ModuliParams& params);

FiberVector heis_act(Generator gen, const FiberVector& psi, int s, double theta);
FiberVector classical_act(ClassicalGenerator gen, const FiberVector& psi, const ModuliParams& params);
FiberVector deformed_act(Generator gen, const FiberVector& psi, const ModuliParams& params);

/// (T w)_n = w_{-s^{-1} n mod p}; intertwines the deformed action (r = 0)
/// with heis_act at the same s. Requires gcd(s, p) = 1.
FiberVector iso_T(const FiberVector& w, int s);

// ---------------------------------------------------------------------------
// Function-side actions on sections

enum class Side { left, right };

/// (U |> f)(x,y) = e^{2 pi i x} f(x, y + theta/2)   (f <| U)(x,y) = e^{2 pi i x} f(x, y - theta/2)
/// (V |> f)(x,y) = e^{2 pi i y} f(x - theta/2, y)   (f <| V)(x,y) = e^{2 pi i y} f(x + theta/2, y)
ComplexFn bimod_act(Side side, Generator gen, ComplexFn f, double theta);

/// (J f)(x,y) = conj(f(-x,-y)).
ComplexFn jmap(ComplexFn f);

/// Quasi-periodicity defect of f <| U and f <| V for a fixed test section of
/// degree p, measured against the tau-relations of that same degree.
double constraint_defect_witness(cplx tau, double theta, int p, int grid);

// ---------------------------------------------------------------------------
// Hermitian structures

/// (psi | phi)_t = sum_r conj(psi_r(t)) phi_r(t).
struct FiberPairing {
  FiberVector psi;
  FiberVector phi;

  cplx operator()(double t) const;
  /// Exact integral over R.
  cplx integral() const;
};

FiberPairing herm_fiber(const FiberVector& psi, const FiberVector& phi);

struct HermitianResult {
  TorusElement value;
  double tail = 0.0;  // max |coefficient| on the shell max(|m|,|n|) = N
};

/// <psi, phi> = sum_{|m|,|n| <= N} U^m V^n integral (psi <| U^m V^n | phi)_t dt.
HermitianResult herm_heis(const FiberVector& psi, const FiberVector& phi, int s, double theta,
                          int N = 8);

/// Coefficients of conj(f) g in u_tau^m v_tau^n, with
/// u_tau = e^{2 pi i (x - omega_x y / omega_y)}, v_tau = e^{2 pi i y / omega_y}:
/// (1/omega_y) integral (f | g <| u^{-m} v^{-n})_t dt.
HermitianResult herm_classical(const FiberVector& f, const FiberVector& g, const ModuliParams& params,
                               int N = 8);

/// sum c_{m,n} u_tau^m v_tau^n at z.
cplx eval_on_curve(const TorusElement& c, cplx z, cplx tau);

/// Coefficients in u^k v^n (u = e^{2 pi i x}, v = e^{2 pi i y}) of the star
/// product conj(f) * g of two sections, from the fiber series
///   sum_{m,k} u^k conj(f_[m](y + m/p - k theta/2)) g_[m+k](y + (m+k)/p + k theta/2)
/// Fourier-analysed in y. Requires r = 0 and s = 1; for other s the product
/// is not periodic on the unit torus.
HermitianResult star_section(const QuasiSection& f, const QuasiSection& g, int N = 8);

/// Normal-ordered coefficients of sum V^n U^m integral (f <| V^n U^m | g)_t dt.
HermitianResult herm_deformed_rhs(const QuasiSection& f, const QuasiSection& g, int N = 8);

/// max coefficient difference between quantize_T(star_section(f,g)) and
/// herm_deformed_rhs(f,g).
double herm_deformed_identity_residual(const QuasiSection& f, const QuasiSection& g, int N = 8);

}  // namespace nct

#pragma once

// Truncated Fourier model of the smooth noncommutative torus.
//
// A TorusElement stores finitely many coefficients a_{m,n}. Read as an
// algebra element it is sum a_{m,n} U^m V^n in the normal order U^m V^n with
// UV = e^{2 pi i theta} VU; read as a function it is sum a_{m,n} u^m v^n with
// u = e^{2 pi i x}, v = e^{2 pi i y}. The reading is metadata only: each
// operation fixes its own arithmetic.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "nctlab/weyl.hpp"

namespace nct {

enum class Interpretation { algebra, function };

class TorusElement {
 public:
  using Index = std::pair<int, int>;
  using Coeffs = std::map<Index, cplx>;

  static constexpr int kDefaultTruncation = 16;
  static constexpr int kDefaultHardCap = 64;

  explicit TorusElement(double theta, Interpretation interp = Interpretation::algebra,
                        int hard_cap = kDefaultHardCap);

  static TorusElement unit(double theta, Interpretation interp = Interpretation::algebra);
  static TorusElement monomial(double theta, int m, int n, cplx coeff = 1.0,
                               Interpretation interp = Interpretation::algebra);

  double theta() const { return theta_; }
  Interpretation interpretation() const { return interp_; }
  int hard_cap() const { return hard_cap_; }
  const Coeffs& coeffs() const { return coeffs_; }

  cplx coeff(int m, int n) const;
  /// Throws CapacityError when (m,n) lies outside the hard cap.
  void set(int m, int n, cplx value);
  void add(int m, int n, cplx value);

  /// max(|m|,|n|) over the stored support (0 when empty).
  int support_radius() const;

  TorusElement with_interpretation(Interpretation interp) const;

 private:
  void check_index(int m, int n) const;

  double theta_;
  Interpretation interp_;
  int hard_cap_;
  Coeffs coeffs_;
};

/// Max |a_{m,n} - b_{m,n}| over the union of supports.
double max_coeff_diff(const TorusElement& x, const TorusElement& y);

/// Product in A_theta, normal ordered via V^k U^m = e^{-2 pi i theta k m} U^m V^k.
TorusElement torus_mul(const TorusElement& x, const TorusElement& y);
TorusElement torus_add(const TorusElement& x, const TorusElement& y);
TorusElement torus_scale(cplx c, const TorusElement& x);

/// Algebra involution, (U^m V^n)^* = V^{-n} U^{-m}.
TorusElement torus_adjoint(const TorusElement& x);

/// Pointwise complex conjugation of a trigonometric polynomial (the
/// undeformed involution of the star product).
TorusElement function_conjugate(const TorusElement& f);

/// sup_{m,n} (1 + m^2 + n^2)^{k/2} |a_{m,n}|  (square root of the sup in p_k^2).
double seminorm_pk(const TorusElement& x, int k);

/// sigma((j,k),(m,n)) = e^{i pi theta (j n - k m)}
cplx cocycle_sigma(double theta, int j, int k, int m, int n);

/// Twisted convolution (u^j v^k) * (u^m v^n) = sigma u^{j+m} v^{k+n}.
TorusElement star_trig(const TorusElement& f, const TorusElement& g);

/// T(f) = sum a_{m,n} e^{-i pi m n theta} U^m V^n.
TorusElement quantize_T(const TorusElement& f);
TorusElement dequantize_T(const TorusElement& x);

/// pi(U) = W(1,0), pi(V) = W(0,-theta).
WeylSum rep_pi(const TorusElement& x);

/// Canonical-form distance between z*x and x*z.
double commutation_defect(const WeylSum& z, const WeylSum& x);

/// For theta = p/q, the larger commutation defect of the central candidates
/// W(q,0) and W(0,p) against x_gen.
double center_defect_rational(long p, long q, const WeylSum& x_gen);

/// Text format: "theta <value>" header, then "m n re im" lines sorted by
/// (m,n), then an optional "tail <value>" trailer.
std::string to_text(const TorusElement& x, std::optional<double> tail = std::nullopt);

struct ParsedTorus {
  TorusElement element;
  std::optional<double> tail;
};
ParsedTorus parse_torus_text(std::string_view text,
                             Interpretation interp = Interpretation::algebra);

}  // namespace nct

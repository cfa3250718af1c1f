#pragma once

// Weyl operators W(a,b) on L^2(R) and the wave-packet function family they
// act on.
//
//   {W(a,b) psi}(t) = exp(-i pi a b) exp(2 pi i b t) psi(t - a)
//   W(a,b) W(c,d)   = exp(-i pi (a d - b c)) W(a+c, b+d)
//
// Packets are finite sums of amp * t^deg * exp(2 pi i freq t) *
// exp(-pi (t - center)^2 / width). The family is closed under Weyl operators,
// d/dt and multiplication by t, so every operator identity in this library is
// checked on exact objects rather than on sampled grids.

#include <complex>
#include <numbers>
#include <vector>

namespace nct {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// exp(i * phi) for real phi.
inline cplx unit_phase(double phi) { return {std::cos(phi), std::sin(phi)}; }

// ---------------------------------------------------------------------------
// Weyl symbols

struct WeylTerm {
  cplx coeff;
  double a = 0.0;  // translation
  double b = 0.0;  // modulation frequency
};

struct WeylProduct {
  cplx phase;
  double a = 0.0;
  double b = 0.0;
};

/// W(a,b) W(c,d) = phase * W(a', b').
WeylProduct mul_weyl(double a, double b, double c, double d);

/// Finite linear combination of Weyl operators in canonical form: sorted by
/// (a,b), keys closer than kMergeTol merged, coefficients below kDropTol
/// removed.
class WeylSum {
 public:
  static constexpr double kMergeTol = 1e-12;
  static constexpr double kDropTol = 1e-15;

  WeylSum() = default;
  explicit WeylSum(std::vector<WeylTerm> terms);

  static WeylSum identity();
  static WeylSum single(double a, double b, cplx coeff = 1.0);

  const std::vector<WeylTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of W(a,b) (zero when absent), matching keys to kMergeTol.
  cplx coefficient(double a, double b) const;

  WeylSum& operator+=(const WeylSum& other);
  WeylSum& operator*=(cplx scalar);

 private:
  std::vector<WeylTerm> terms_;
};

WeylSum operator+(WeylSum x, const WeylSum& y);
WeylSum operator-(WeylSum x, const WeylSum& y);
WeylSum operator*(cplx scalar, WeylSum x);

WeylSum weylsum_mul(const WeylSum& x, const WeylSum& y);
inline WeylSum operator*(const WeylSum& x, const WeylSum& y) { return weylsum_mul(x, y); }

/// W(a,b)^* = W(-a,-b), extended antilinearly.
WeylSum weylsum_adjoint(const WeylSum& x);

/// Largest coefficient difference between two canonical sums.
double weylsum_distance(const WeylSum& x, const WeylSum& y);

// ---------------------------------------------------------------------------
// Wave packets

struct GaussTerm {
  cplx amp;
  int deg = 0;
  double freq = 0.0;
  double center = 0.0;
  double width = 1.0;  // > 0
};

class GaussPacket {
 public:
  static constexpr int kDefaultMaxDegree = 32;

  GaussPacket() = default;
  explicit GaussPacket(std::vector<GaussTerm> terms, int max_degree = kDefaultMaxDegree);

  /// amp * exp(2 pi i freq t) * exp(-pi (t - center)^2 / width)
  static GaussPacket gaussian(double center = 0.0, double width = 1.0, double freq = 0.0,
                              cplx amp = 1.0);

  const std::vector<GaussTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int max_degree() const { return max_degree_; }
  /// Highest power of t present (0 for the empty packet).
  int degree() const;

  GaussPacket& operator+=(const GaussPacket& other);
  GaussPacket& operator*=(cplx scalar);

 private:
  void canonicalize();

  std::vector<GaussTerm> terms_;
  int max_degree_ = kDefaultMaxDegree;
};

GaussPacket operator+(GaussPacket x, const GaussPacket& y);
GaussPacket operator*(cplx scalar, GaussPacket x);

cplx packet_eval(const GaussPacket& psi, double t);

/// L^2 pairing, antilinear in the first slot: integral of conj(psi) * phi.
cplx packet_inner(const GaussPacket& psi, const GaussPacket& phi);

inline double packet_norm(const GaussPacket& psi) { return std::sqrt(packet_inner(psi, psi).real()); }

/// Normalized Gaussian moments m_k = M_k / M_0 of
/// M_k = integral t^k exp(-alpha t^2 + beta t) dt, Re(alpha) > 0, via
/// M_k = ((k-1) M_{k-2} + beta M_{k-1}) / (2 alpha).
std::vector<cplx> gaussian_moments(cplx alpha, cplx beta, int kmax);

GaussPacket apply_weyl(double a, double b, const GaussPacket& psi);
GaussPacket apply_weylsum(const WeylSum& x, const GaussPacket& psi);

/// d/dt, term by term. Throws CapacityError past the packet's degree cap.
GaussPacket packet_derivative(const GaussPacket& psi);

/// t * psi(t). Throws CapacityError past the packet's degree cap.
GaussPacket packet_mul_t(const GaussPacket& psi);

}  // namespace nct

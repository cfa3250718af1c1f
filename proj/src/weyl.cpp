#include "nctlab/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nctlab/errors.hpp"

namespace nct {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string("non-finite ") + what);
}

// Binomial coefficients for the (t - a)^d expansion.
double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

WeylProduct mul_weyl(double a, double b, double c, double d) {
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(c, "c");
  require_finite(d, "d");
  return {unit_phase(-kPi * (a * d - b * c)), a + c, b + d};
}

// ---------------------------------------------------------------------------
// WeylSum

WeylSum::WeylSum(std::vector<WeylTerm> terms) {
  for (const auto& t : terms) {
    if (!finite(t.coeff)) throw std::invalid_argument("non-finite Weyl coefficient");
    require_finite(t.a, "Weyl translation");
    require_finite(t.b, "Weyl modulation");
  }
  std::sort(terms.begin(), terms.end(), [](const WeylTerm& x, const WeylTerm& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  std::vector<WeylTerm> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    bool absorbed = false;
    for (auto it = merged.rbegin(); it != merged.rend() && it->a > t.a - kMergeTol; ++it) {
      if (std::abs(it->b - t.b) < kMergeTol) {
        it->coeff += t.coeff;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(t);
  }
  std::erase_if(merged, [](const WeylTerm& t) { return std::abs(t.coeff) < kDropTol; });
  terms_ = std::move(merged);
}

WeylSum WeylSum::identity() { return single(0.0, 0.0); }

WeylSum WeylSum::single(double a, double b, cplx coeff) { return WeylSum({{coeff, a, b}}); }

cplx WeylSum::coefficient(double a, double b) const {
  for (const auto& t : terms_) {
    if (std::abs(t.a - a) < kMergeTol && std::abs(t.b - b) < kMergeTol) return t.coeff;
  }
  return 0.0;
}

WeylSum& WeylSum::operator+=(const WeylSum& other) {
  auto all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  *this = WeylSum(std::move(all));
  return *this;
}

WeylSum& WeylSum::operator*=(cplx scalar) {
  auto all = terms_;
  for (auto& t : all) t.coeff *= scalar;
  *this = WeylSum(std::move(all));
  return *this;
}

WeylSum operator+(WeylSum x, const WeylSum& y) { return x += y; }
WeylSum operator-(WeylSum x, const WeylSum& y) { return x += (-1.0) * y; }
WeylSum operator*(cplx scalar, WeylSum x) { return x *= scalar; }

WeylSum weylsum_mul(const WeylSum& x, const WeylSum& y) {
  std::vector<WeylTerm> out;
  out.reserve(x.size() * y.size());
  for (const auto& s : x.terms()) {
    for (const auto& t : y.terms()) {
      const auto prod = mul_weyl(s.a, s.b, t.a, t.b);
      out.push_back({s.coeff * t.coeff * prod.phase, prod.a, prod.b});
    }
  }
  return WeylSum(std::move(out));
}

WeylSum weylsum_adjoint(const WeylSum& x) {
  std::vector<WeylTerm> out;
  out.reserve(x.size());
  for (const auto& t : x.terms()) out.push_back({std::conj(t.coeff), -t.a, -t.b});
  return WeylSum(std::move(out));
}

double weylsum_distance(const WeylSum& x, const WeylSum& y) {
  const WeylSum diff = x - y;
  double d = 0.0;
  for (const auto& t : diff.terms()) d = std::max(d, std::abs(t.coeff));
  return d;
}

// ---------------------------------------------------------------------------
// GaussPacket

GaussPacket::GaussPacket(std::vector<GaussTerm> terms, int max_degree)
    : terms_(std::move(terms)), max_degree_(max_degree) {
  if (max_degree_ < 0) throw std::invalid_argument("negative degree cap");
  for (const auto& t : terms_) {
    if (!finite(t.amp)) throw std::invalid_argument("non-finite packet amplitude");
    require_finite(t.freq, "packet frequency");
    require_finite(t.center, "packet center");
    if (!(t.width > 0.0) || !std::isfinite(t.width))
      throw std::invalid_argument("packet width must be positive and finite");
    if (t.deg < 0) throw std::invalid_argument("negative packet degree");
    if (t.deg > max_degree_)
      throw CapacityError("packet degree " + std::to_string(t.deg) + " exceeds cap " +
                          std::to_string(max_degree_));
  }
  canonicalize();
}

GaussPacket GaussPacket::gaussian(double center, double width, double freq, cplx amp) {
  return GaussPacket({{amp, 0, freq, center, width}});
}

int GaussPacket::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.deg);
  return d;
}

void GaussPacket::canonicalize() {
  constexpr double tol = 1e-12;
  std::sort(terms_.begin(), terms_.end(), [](const GaussTerm& x, const GaussTerm& y) {
    if (x.center != y.center) return x.center < y.center;
    if (x.width != y.width) return x.width < y.width;
    if (x.freq != y.freq) return x.freq < y.freq;
    return x.deg < y.deg;
  });
  std::vector<GaussTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    bool absorbed = false;
    for (auto it = merged.rbegin(); it != merged.rend() && it->center > t.center - tol; ++it) {
      if (it->deg == t.deg && std::abs(it->width - t.width) < tol &&
          std::abs(it->freq - t.freq) < tol) {
        it->amp += t.amp;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(t);
  }
  std::erase_if(merged, [](const GaussTerm& t) { return t.amp == 0.0; });
  terms_ = std::move(merged);
}

GaussPacket& GaussPacket::operator+=(const GaussPacket& other) {
  auto all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  *this = GaussPacket(std::move(all), std::max(max_degree_, other.max_degree_));
  return *this;
}

GaussPacket& GaussPacket::operator*=(cplx scalar) {
  for (auto& t : terms_) t.amp *= scalar;
  std::erase_if(terms_, [](const GaussTerm& t) { return t.amp == 0.0; });
  return *this;
}

GaussPacket operator+(GaussPacket x, const GaussPacket& y) { return x += y; }
GaussPacket operator*(cplx scalar, GaussPacket x) { return x *= scalar; }

cplx packet_eval(const GaussPacket& psi, double t) {
  cplx sum = 0.0;
  for (const auto& term : psi.terms()) {
    const double u = t - term.center;
    const cplx e = std::exp(cplx(-kPi * u * u / term.width, 2.0 * kPi * term.freq * t));
    sum += term.amp * std::pow(t, term.deg) * e;
  }
  return sum;
}

std::vector<cplx> gaussian_moments(cplx alpha, cplx beta, int kmax) {
  if (!(alpha.real() > 0.0)) throw std::invalid_argument("Gaussian moment needs Re(alpha) > 0");
  std::vector<cplx> m(static_cast<std::size_t>(std::max(kmax, 0)) + 1);
  m[0] = 1.0;
  if (kmax >= 1) m[1] = beta / (2.0 * alpha);
  for (int k = 2; k <= kmax; ++k) m[k] = (double(k - 1) * m[k - 2] + beta * m[k - 1]) / (2.0 * alpha);
  return m;
}

cplx packet_inner(const GaussPacket& psi, const GaussPacket& phi) {
  cplx sum = 0.0;
  for (const auto& s : psi.terms()) {
    for (const auto& t : phi.terms()) {
      const double inv1 = 1.0 / s.width;
      const double inv2 = 1.0 / t.width;
      const double alpha = kPi * (inv1 + inv2);
      const double mu = (s.center * inv1 + t.center * inv2) / (inv1 + inv2);
      const double df = t.freq - s.freq;
      const double dc = s.center - t.center;
      // Completed square: exponent after integrating the Gaussian envelope.
      const cplx log_m0 = cplx(-kPi * dc * dc / (s.width + t.width) - kPi * kPi * df * df / alpha,
                               2.0 * kPi * df * mu);
      const cplx m0 = std::sqrt(kPi / alpha) * std::exp(log_m0);
      const int k = s.deg + t.deg;
      cplx moment = 1.0;
      if (k > 0) moment = gaussian_moments(alpha, cplx(2.0 * alpha * mu, 2.0 * kPi * df), k)[k];
      sum += std::conj(s.amp) * t.amp * m0 * moment;
    }
  }
  return sum;
}

GaussPacket apply_weyl(double a, double b, const GaussPacket& psi) {
  require_finite(a, "a");
  require_finite(b, "b");
  std::vector<GaussTerm> out;
  out.reserve(psi.terms().size());
  const cplx common = unit_phase(-kPi * a * b);
  for (const auto& t : psi.terms()) {
    const cplx amp = t.amp * common * unit_phase(-2.0 * kPi * t.freq * a);
    // (t - a)^deg = sum_j C(deg, j) (-a)^(deg - j) t^j
    for (int j = 0; j <= t.deg; ++j) {
      const double c = binomial(t.deg, j) * std::pow(-a, t.deg - j);
      if (c == 0.0) continue;
      out.push_back({amp * c, j, t.freq + b, t.center + a, t.width});
    }
  }
  return GaussPacket(std::move(out), psi.max_degree());
}

GaussPacket apply_weylsum(const WeylSum& x, const GaussPacket& psi) {
  GaussPacket out({}, psi.max_degree());
  for (const auto& t : x.terms()) out += t.coeff * apply_weyl(t.a, t.b, psi);
  return out;
}

GaussPacket packet_derivative(const GaussPacket& psi) {
  std::vector<GaussTerm> out;
  out.reserve(3 * psi.terms().size());
  for (const auto& t : psi.terms()) {
    if (t.deg > 0) out.push_back({t.amp * double(t.deg), t.deg - 1, t.freq, t.center, t.width});
    out.push_back({t.amp * cplx(2.0 * kPi * t.center / t.width, 2.0 * kPi * t.freq), t.deg, t.freq,
                   t.center, t.width});
    out.push_back({t.amp * (-2.0 * kPi / t.width), t.deg + 1, t.freq, t.center, t.width});
  }
  return GaussPacket(std::move(out), psi.max_degree());
}

GaussPacket packet_mul_t(const GaussPacket& psi) {
  auto terms = psi.terms();
  for (auto& t : terms) ++t.deg;
  return GaussPacket(std::move(terms), psi.max_degree());
}

}  // namespace nct

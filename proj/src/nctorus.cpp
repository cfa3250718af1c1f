#include "nctlab/nctorus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "nctlab/errors.hpp"

namespace nct {

namespace {

void require_same_theta(const TorusElement& x, const TorusElement& y) {
  if (std::abs(x.theta() - y.theta()) > 1e-15)
    throw std::invalid_argument("theta mismatch between torus elements");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TorusElement::TorusElement(double theta, Interpretation interp, int hard_cap)
    : theta_(theta), interp_(interp), hard_cap_(hard_cap) {
  if (!(theta >= 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in [0,1)");
  if (hard_cap < 0) throw std::invalid_argument("negative support cap");
}

TorusElement TorusElement::unit(double theta, Interpretation interp) {
  return monomial(theta, 0, 0, 1.0, interp);
}

TorusElement TorusElement::monomial(double theta, int m, int n, cplx coeff, Interpretation interp) {
  TorusElement x(theta, interp);
  x.set(m, n, coeff);
  return x;
}

void TorusElement::check_index(int m, int n) const {
  if (std::abs(m) > hard_cap_ || std::abs(n) > hard_cap_)
    throw CapacityError("torus coefficient index (" + std::to_string(m) + "," +
                        std::to_string(n) + ") exceeds cap " + std::to_string(hard_cap_));
}

cplx TorusElement::coeff(int m, int n) const {
  auto it = coeffs_.find({m, n});
  return it == coeffs_.end() ? cplx{} : it->second;
}

void TorusElement::set(int m, int n, cplx value) {
  check_index(m, n);
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw std::invalid_argument("non-finite torus coefficient");
  coeffs_[{m, n}] = value;
}

void TorusElement::add(int m, int n, cplx value) { set(m, n, coeff(m, n) + value); }

int TorusElement::support_radius() const {
  int r = 0;
  for (const auto& [k, v] : coeffs_) r = std::max({r, std::abs(k.first), std::abs(k.second)});
  return r;
}

TorusElement TorusElement::with_interpretation(Interpretation interp) const {
  TorusElement out = *this;
  out.interp_ = interp;
  return out;
}

double max_coeff_diff(const TorusElement& x, const TorusElement& y) {
  double d = 0.0;
  for (const auto& [k, v] : x.coeffs()) d = std::max(d, std::abs(v - y.coeff(k.first, k.second)));
  for (const auto& [k, v] : y.coeffs()) d = std::max(d, std::abs(v - x.coeff(k.first, k.second)));
  return d;
}

TorusElement torus_mul(const TorusElement& x, const TorusElement& y) {
  require_same_theta(x, y);
  TorusElement out(x.theta(), Interpretation::algebra, std::max(x.hard_cap(), y.hard_cap()));
  const double theta = x.theta();
  for (const auto& [jk, a] : x.coeffs()) {
    for (const auto& [mn, b] : y.coeffs()) {
      const auto [j, k] = jk;
      const auto [m, n] = mn;
      // U^j V^k U^m V^n = e^{-2 pi i theta k m} U^{j+m} V^{k+n}
      const cplx phase = unit_phase(-2.0 * kPi * theta * double(k) * double(m));
      out.add(j + m, k + n, a * b * phase);
    }
  }
  return out;
}

TorusElement torus_add(const TorusElement& x, const TorusElement& y) {
  require_same_theta(x, y);
  TorusElement out = x;
  for (const auto& [k, v] : y.coeffs()) out.add(k.first, k.second, v);
  return out;
}

TorusElement torus_scale(cplx c, const TorusElement& x) {
  TorusElement out = x;
  for (const auto& [k, v] : x.coeffs()) out.set(k.first, k.second, c * v);
  return out;
}

TorusElement torus_adjoint(const TorusElement& x) {
  TorusElement out(x.theta(), x.interpretation(), x.hard_cap());
  for (const auto& [k, a] : x.coeffs()) {
    const auto [m, n] = k;
    // (U^m V^n)^* = V^{-n} U^{-m} = e^{-2 pi i theta m n} U^{-m} V^{-n}
    out.set(-m, -n, std::conj(a) * unit_phase(-2.0 * kPi * x.theta() * double(m) * double(n)));
  }
  return out;
}

TorusElement function_conjugate(const TorusElement& f) {
  TorusElement out(f.theta(), f.interpretation(), f.hard_cap());
  for (const auto& [k, a] : f.coeffs()) out.set(-k.first, -k.second, std::conj(a));
  return out;
}

double seminorm_pk(const TorusElement& x, int k) {
  if (k < 0) throw std::invalid_argument("seminorm order must be nonnegative");
  double best = 0.0;
  for (const auto& [idx, a] : x.coeffs()) {
    const double w = 1.0 + double(idx.first) * idx.first + double(idx.second) * idx.second;
    best = std::max(best, std::pow(w, 0.5 * k) * std::abs(a));
  }
  return best;
}

cplx cocycle_sigma(double theta, int j, int k, int m, int n) {
  return unit_phase(kPi * theta * (double(j) * n - double(k) * m));
}

TorusElement star_trig(const TorusElement& f, const TorusElement& g) {
  require_same_theta(f, g);
  TorusElement out(f.theta(), Interpretation::function, std::max(f.hard_cap(), g.hard_cap()));
  for (const auto& [jk, a] : f.coeffs()) {
    for (const auto& [mn, b] : g.coeffs()) {
      const auto [j, k] = jk;
      const auto [m, n] = mn;
      out.add(j + m, k + n, a * b * cocycle_sigma(f.theta(), j, k, m, n));
    }
  }
  return out;
}

TorusElement quantize_T(const TorusElement& f) {
  TorusElement out(f.theta(), Interpretation::algebra, f.hard_cap());
  for (const auto& [k, a] : f.coeffs())
    out.set(k.first, k.second, a * unit_phase(-kPi * double(k.first) * k.second * f.theta()));
  return out;
}

TorusElement dequantize_T(const TorusElement& x) {
  TorusElement out(x.theta(), Interpretation::function, x.hard_cap());
  for (const auto& [k, a] : x.coeffs())
    out.set(k.first, k.second, a * unit_phase(kPi * double(k.first) * k.second * x.theta()));
  return out;
}

WeylSum rep_pi(const TorusElement& x) {
  std::vector<WeylTerm> terms;
  terms.reserve(x.coeffs().size());
  for (const auto& [k, a] : x.coeffs()) {
    const auto [m, n] = k;
    // W(m,0) W(0,-n theta) = e^{i pi m n theta} W(m, -n theta)
    const double b = -double(n) * x.theta();
    terms.push_back({a * unit_phase(kPi * double(m) * n * x.theta()), double(m), b});
  }
  return WeylSum(std::move(terms));
}

double commutation_defect(const WeylSum& z, const WeylSum& x) {
  return weylsum_distance(z * x, x * z);
}

double center_defect_rational(long p, long q, const WeylSum& x_gen) {
  if (q < 1 || std::gcd(p, q) != 1) throw std::invalid_argument("need q >= 1 and gcd(p,q) = 1");
  const WeylSum zq = WeylSum::single(double(q), 0.0);
  const WeylSum zp = WeylSum::single(0.0, double(p));
  return std::max(commutation_defect(zq, x_gen), commutation_defect(zp, x_gen));
}

std::string to_text(const TorusElement& x, std::optional<double> tail) {
  std::ostringstream os;
  os << "theta " << format_double(x.theta()) << '\n';
  for (const auto& [k, a] : x.coeffs())
    os << k.first << ' ' << k.second << ' ' << format_double(a.real()) << ' '
       << format_double(a.imag()) << '\n';
  if (tail) os << "tail " << format_double(*tail) << '\n';
  return os.str();
}

ParsedTorus parse_torus_text(std::string_view text, Interpretation interp) {
  std::istringstream is{std::string(text)};
  std::string word;
  double theta = 0.0;
  if (!(is >> word >> theta) || word != "theta")
    throw std::invalid_argument("torus text must start with 'theta <value>'");
  ParsedTorus out{TorusElement(theta, interp), std::nullopt};
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line.rfind("tail", 0) == 0) {
      double t = 0.0;
      ls >> word >> t;
      if (!ls) throw std::invalid_argument("malformed tail line: " + line);
      out.tail = t;
      continue;
    }
    int m = 0, n = 0;
    double re = 0.0, im = 0.0;
    if (!(ls >> m >> n >> re >> im)) throw std::invalid_argument("malformed coefficient line: " + line);
    out.element.set(m, n, {re, im});
  }
  return out;
}

}  // namespace nct

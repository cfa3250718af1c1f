#include "nctlab/modules.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "nctlab/quadrature.hpp"

namespace nct {

namespace {

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& m, int k) {
  const Eigen::MatrixXcd base = k >= 0 ? m : Eigen::MatrixXcd(m.inverse());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  for (int i = 0; i < std::abs(k); ++i) out = out * base;
  return out;
}

void require_same_p(const FiberVector& x, const FiberVector& y) {
  if (x.p() != y.p())
    throw std::invalid_argument("fiber vectors have different p (" + std::to_string(x.p()) + " vs " +
                                std::to_string(y.p()) + ")");
}

void require_same_params(const ModuliParams& a, const ModuliParams& b) {
  if (a.p() != b.p() || std::abs(a.theta() - b.theta()) > 1e-15 || std::abs(a.tau() - b.tau()) > 1e-15)
    throw std::invalid_argument("sections carry different moduli parameters");
}

cplx fiber_inner(const FiberVector& x, const FiberVector& y) {
  cplx sum = 0.0;
  for (int k = 0; k < x.p(); ++k) sum += packet_inner(x[k], y[k]);
  return sum;
}

double shell_max(const TorusElement& x, int N) {
  double t = 0.0;
  for (const auto& [k, v] : x.coeffs())
    if (std::max(std::abs(k.first), std::abs(k.second)) == N) t = std::max(t, std::abs(v));
  return t;
}

double mean_center(const FiberVector& f) {
  double sum = 0.0;
  int count = 0;
  for (const auto& c : f.components())
    for (const auto& t : c.terms()) {
      sum += t.center;
      ++count;
    }
  return count ? sum / count : 0.0;
}

}  // namespace

ClockShift clock_shift(int p) {
  if (p < 1) throw std::invalid_argument("clock and shift need p >= 1");
  ClockShift cs{p, Eigen::MatrixXcd::Zero(p, p), Eigen::MatrixXcd::Zero(p, p)};
  for (int k = 0; k < p; ++k) {
    cs.C(k, k) = unit_phase(2.0 * kPi * k / p);
    cs.S(k, (k + p - 1) % p) = 1.0;
  }
  return cs;
}

// ---------------------------------------------------------------------------

FiberOp FiberOp::identity(int p) {
  if (p < 1) throw std::invalid_argument("fiber operator needs p >= 1");
  return {1.0, 0.0, 0.0, Eigen::MatrixXcd::Identity(p, p)};
}

FiberVector FiberOp::apply(const FiberVector& psi) const {
  const int p = psi.p();
  if (M.rows() != p || M.cols() != p)
    throw std::invalid_argument("matrix size does not match fiber count");
  std::vector<GaussPacket> moved;
  moved.reserve(static_cast<std::size_t>(p));
  for (const auto& c : psi.components()) moved.push_back(apply_weyl(a, b, c));
  std::vector<GaussPacket> out;
  out.reserve(static_cast<std::size_t>(p));
  for (int k = 0; k < p; ++k) {
    GaussPacket acc({}, moved[static_cast<std::size_t>(k)].max_degree());
    for (int j = 0; j < p; ++j) {
      const cplx m = M(k, j);
      if (m != 0.0) acc += (phase * m) * moved[static_cast<std::size_t>(j)];
    }
    out.push_back(std::move(acc));
  }
  return FiberVector(std::move(out));
}

FiberOp FiberOp::inverse() const {
  // W(a,b)^{-1} = W(-a,-b)
  return {1.0 / phase, -a, -b, M.inverse()};
}

FiberOp compose(const FiberOp& outer, const FiberOp& inner) {
  const auto w = mul_weyl(outer.a, outer.b, inner.a, inner.b);
  return {outer.phase * inner.phase * w.phase, w.a, w.b, outer.M * inner.M};
}

FiberOp power(const FiberOp& op, int k) {
  const FiberOp base = k >= 0 ? op : op.inverse();
  FiberOp out = FiberOp::identity(static_cast<int>(op.M.rows()));
  for (int i = 0; i < std::abs(k); ++i) out = compose(base, out);
  return out;
}

FiberOp heis_op(Generator gen, int p, int s, double theta) {
  const auto cs = clock_shift(p);
  if (gen == Generator::U) return {1.0, double(s) / p + theta, 0.0, matrix_power(cs.S, -s)};
  return {1.0, 0.0, 1.0, cs.C};
}

FiberOp classical_op(ClassicalGenerator gen, const ModuliParams& params) {
  const auto cs = clock_shift(params.p());
  const double wx = params.omega_x(), wy = params.omega_y();
  if (gen == ClassicalGenerator::u) return {1.0, wy / params.p(), -wx / wy, cs.S};
  return {1.0, 0.0, 1.0 / wy, cs.C.adjoint()};
}

FiberOp deformed_op(Generator gen, const ModuliParams& params) {
  if (!params.constraint_satisfied())
    throw std::invalid_argument("tau - (p theta / 2) i is not a Gaussian integer; no deformed action");
  const int p = params.p(), r = params.r(), s = params.s();
  const auto cs = clock_shift(p);
  const Eigen::MatrixXcd cstar = cs.C.adjoint();
  if (gen == Generator::U)
    return {unit_phase(kPi * r / p), double(s) / p + params.theta(), 0.0,
            matrix_power(cstar, r) * cs.S};
  return {1.0, 0.0, 1.0, matrix_power(cstar, s)};
}

FiberVector heis_act(Generator gen, const FiberVector& psi, int s, double theta) {
  return heis_op(gen, psi.p(), s, theta).apply(psi);
}

FiberVector classical_act(ClassicalGenerator gen, const FiberVector& psi, const ModuliParams& params) {
  require_same_p(psi, FiberVector::zero(params.p()));
  return classical_op(gen, params).apply(psi);
}

FiberVector deformed_act(Generator gen, const FiberVector& psi, const ModuliParams& params) {
  require_same_p(psi, FiberVector::zero(params.p()));
  return deformed_op(gen, params).apply(psi);
}

FiberVector iso_T(const FiberVector& w, int s) {
  const int p = w.p();
  const int sm = ((s % p) + p) % p;
  if (std::gcd(sm, p) != 1)
    throw std::invalid_argument("iso_T needs gcd(s, p) = 1");
  int inv = 0;
  for (int k = 0; k < p; ++k)
    if ((sm * k) % p == 1 % p) {
      inv = k;
      break;
    }
  std::vector<GaussPacket> out;
  out.reserve(static_cast<std::size_t>(p));
  for (long n = 0; n < p; ++n) out.push_back(w.fiber(-long(inv) * n));
  return FiberVector(std::move(out));
}

// ---------------------------------------------------------------------------

ComplexFn bimod_act(Side side, Generator gen, ComplexFn f, double theta) {
  const double h = 0.5 * theta;
  if (side == Side::right) {
    if (gen == Generator::U)
      return [f, h](cplx z) { return unit_phase(2.0 * kPi * z.real()) * f(z - cplx(0.0, h)); };
    return [f, h](cplx z) { return unit_phase(2.0 * kPi * z.imag()) * f(z + h); };
  }
  if (gen == Generator::U)
    return [f, h](cplx z) { return unit_phase(2.0 * kPi * z.real()) * f(z + cplx(0.0, h)); };
  return [f, h](cplx z) { return unit_phase(2.0 * kPi * z.imag()) * f(z - h); };
}

ComplexFn jmap(ComplexFn f) {
  return [f](cplx z) { return std::conj(f(-z)); };
}

double constraint_defect_witness(cplx tau, double theta, int p, int grid) {
  const ModuliParams params(theta, tau, p);
  std::vector<GaussPacket> fibers;
  for (int k = 0; k < p; ++k)
    fibers.push_back(GaussPacket::gaussian(0.15 * k - 0.1, 0.6, 0.1 * k + 0.05, 1.0));
  const ComplexFn f = QuasiSection(params, FiberVector(std::move(fibers))).evaluator();
  return std::max(quasiperiodicity_defect(bimod_act(Side::right, Generator::U, f, theta), tau, p, grid),
                  quasiperiodicity_defect(bimod_act(Side::right, Generator::V, f, theta), tau, p, grid));
}

// ---------------------------------------------------------------------------

cplx FiberPairing::operator()(double t) const {
  cplx sum = 0.0;
  for (int k = 0; k < psi.p(); ++k) sum += std::conj(packet_eval(psi[k], t)) * packet_eval(phi[k], t);
  return sum;
}

cplx FiberPairing::integral() const { return fiber_inner(psi, phi); }

FiberPairing herm_fiber(const FiberVector& psi, const FiberVector& phi) {
  require_same_p(psi, phi);
  return {psi, phi};
}

HermitianResult herm_heis(const FiberVector& psi, const FiberVector& phi, int s, double theta, int N) {
  require_same_p(psi, phi);
  if (N < 1) throw std::invalid_argument("truncation N must be >= 1");
  const int p = psi.p();
  const FiberOp au = heis_op(Generator::U, p, s, theta);
  const FiberOp av = heis_op(Generator::V, p, s, theta);
  HermitianResult out{TorusElement(theta, Interpretation::algebra), 0.0};
  for (int m = -N; m <= N; ++m) {
    const FiberOp um = power(au, m);
    for (int n = -N; n <= N; ++n) {
      // psi <| U^m V^n = A_V^n A_U^m psi
      out.value.set(m, n, fiber_inner(compose(power(av, n), um).apply(psi), phi));
    }
  }
  out.tail = shell_max(out.value, N);
  return out;
}

HermitianResult herm_classical(const FiberVector& f, const FiberVector& g, const ModuliParams& params,
                               int N) {
  require_same_p(f, g);
  require_same_p(f, FiberVector::zero(params.p()));
  if (N < 1) throw std::invalid_argument("truncation N must be >= 1");
  const FiberOp au = classical_op(ClassicalGenerator::u, params);
  const FiberOp av = classical_op(ClassicalGenerator::v, params);
  HermitianResult out{TorusElement(params.theta(), Interpretation::function), 0.0};
  for (int m = -N; m <= N; ++m) {
    const FiberOp um = power(au, -m);
    for (int n = -N; n <= N; ++n) {
      const FiberVector moved = compose(power(av, -n), um).apply(g);
      out.value.set(m, n, fiber_inner(f, moved) / params.omega_y());
    }
  }
  out.tail = shell_max(out.value, N);
  return out;
}

cplx eval_on_curve(const TorusElement& c, cplx z, cplx tau) {
  const double x = z.real(), y = z.imag();
  const double ux = x - tau.real() * y / tau.imag();
  const double vy = y / tau.imag();
  cplx sum = 0.0;
  for (const auto& [k, a] : c.coeffs()) sum += a * unit_phase(2.0 * kPi * (k.first * ux + k.second * vy));
  return sum;
}

HermitianResult star_section(const QuasiSection& f, const QuasiSection& g, int N) {
  const auto& params = f.params();
  require_same_params(params, g.params());
  if (N < 1) throw std::invalid_argument("truncation N must be >= 1");
  if (!params.constraint_satisfied() || params.s() != 1 || params.r() != 0)
    throw std::invalid_argument("star_section needs r = 0 and s = 1");
  const int p = params.p();
  const double theta = params.theta();
  const double center = mean_center(f.fibers());
  const long half = 10L * p;

  HermitianResult out{TorusElement(theta, Interpretation::function), 0.0};
  for (int k = -N; k <= N; ++k) {
    const double shift = 0.5 * k * theta;
    auto h = [&](double y) {
      const long m0 = std::lround((center - y) * p);
      cplx sum = 0.0;
      for (long m = m0 - half; m <= m0 + half; ++m) {
        const GaussPacket& fm = f.fibers().fiber(m);
        const GaussPacket& gm = g.fibers().fiber(m + k);
        if (fm.empty() || gm.empty()) continue;
        sum += std::conj(packet_eval(fm, y + double(m) / p - shift)) *
               packet_eval(gm, y + double(m + k) / p + shift);
      }
      return sum;
    };
    const auto coeffs = periodic_fourier(h, 1.0, N);
    for (int n = -N; n <= N; ++n) out.value.set(k, n, coeffs[static_cast<std::size_t>(n + N)]);
  }
  out.tail = shell_max(out.value, N);
  return out;
}

HermitianResult herm_deformed_rhs(const QuasiSection& f, const QuasiSection& g, int N) {
  const auto& params = f.params();
  require_same_params(params, g.params());
  if (N < 1) throw std::invalid_argument("truncation N must be >= 1");
  const double theta = params.theta();
  const FiberOp du = deformed_op(Generator::U, params);
  const FiberOp dv = deformed_op(Generator::V, params);
  HermitianResult out{TorusElement(theta, Interpretation::algebra), 0.0};
  for (int n = -N; n <= N; ++n) {
    const FiberOp vn = power(dv, n);
    for (int m = -N; m <= N; ++m) {
      // f <| V^n U^m = D_U^m D_V^n f;  V^n U^m = e^{-2 pi i theta m n} U^m V^n
      const cplx value = fiber_inner(compose(power(du, m), vn).apply(f.fibers()), g.fibers());
      out.value.set(m, n, unit_phase(-2.0 * kPi * theta * double(m) * n) * value);
    }
  }
  out.tail = shell_max(out.value, N);
  return out;
}

double herm_deformed_identity_residual(const QuasiSection& f, const QuasiSection& g, int N) {
  return max_coeff_diff(quantize_T(star_section(f, g, N).value), herm_deformed_rhs(f, g, N).value);
}

}  // namespace nct

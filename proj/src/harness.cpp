#include "nctlab/harness.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>

#include "nctlab/fiber.hpp"
#include "nctlab/geometry.hpp"
#include "nctlab/modules.hpp"
#include "nctlab/nctorus.hpp"
#include "nctlab/random.hpp"
#include "nctlab/sections.hpp"

namespace nct {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Configuration

SuiteConfig SuiteConfig::defaults() {
  SuiteConfig c;
  c.tolerances = {
      {"weyl-law", 1e-10},
      {"commutation", 1e-10},
      {"quantization-iso", 1e-12},
      {"rational-center", 1e-12},
      {"rational-center.irrational", 0.1},
      {"wbz-roundtrip", 1e-8},
      {"quasi-periodicity", 1e-9},
      {"quasi-periodicity.nabla", 1e-8},
      {"constraint-dichotomy", 1e-8},
      {"constraint-dichotomy.gap", 0.05},
      {"classical-hermitian", 1e-8},
      {"deformed-hermitian", 1e-8},
      {"deformed-hermitian.tail", 1e-10},
      {"module-action-oracle", 1e-9},
      {"theta-functional", 1e-10},
      {"holomorphic-dimension", 1e-8},
      {"holomorphic-dimension.gram", 1e-6},
      {"holomorphic-dimension.count", 0.5},
      {"chern-homogeneous", 1e-12},
      {"chern-grassmann", 1e-6},
      {"chern-grassmann.order", 0.1},
      {"projection-validity", 1e-10},
      {"determinism", 0.5},
  };
  return c;
}

double SuiteConfig::tol(const std::string& key) const {
  auto it = tolerances.find(key);
  if (it == tolerances.end()) throw UsageError("no tolerance configured for " + key);
  return it->second;
}

void SuiteConfig::validate() const {
  for (const auto& [k, v] : tolerances)
    if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("tolerance tol." + k + " must be positive");
  if (p.empty() || theta.empty() || commutation_theta.empty() || tau.empty() || N.empty() || grid.empty())
    throw UsageError("sweep lists must be nonempty");
  for (int v : p)
    if (v < 1) throw UsageError("sweep degrees p must be >= 1");
  for (double t : theta)
    if (!(t >= 0.0 && t < 1.0)) throw UsageError("theta values must lie in [0,1)");
  for (double t : commutation_theta)
    if (!(t >= 0.0 && t < 1.0)) throw UsageError("commutation_theta values must lie in [0,1)");
  for (cplx t : tau)
    if (!(t.imag() > 0.0)) throw UsageError("tau values need Im(tau) > 0");
  for (int n : N)
    if (n < 1 || n > 64) throw UsageError("N values must lie in [1,64]");
  for (int g : grid)
    if (g < 2) throw UsageError("grid values must be >= 2");
  if (chern_grid < 64 || chern_grid % 8 != 0) throw UsageError("chern_grid must be >= 64 and divisible by 8");
  if (projection_grid < 8) throw UsageError("projection_grid must be >= 8");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is{std::string(s)};
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad number '" + s + "' for " + key);
  }
}

long long to_integer(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad integer '" + s + "' for " + key);
  }
}

template <class T, class F>
std::vector<T> parse_list(const std::string& value, const std::string& key, F convert) {
  std::vector<T> out;
  for (const auto& item : split_list(value)) out.push_back(convert(item, key));
  return out;
}

}  // namespace

cplx parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw UsageError("empty complex number");
  if (const auto comma = s.find(','); comma != std::string::npos)
    return {to_double(s.substr(0, comma), "complex"), to_double(s.substr(comma + 1), "complex")};
  if (s.back() != 'i') return {to_double(s, "complex"), 0.0};
  s.pop_back();
  // Split at the last sign that is not an exponent sign or the leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return to_double(t, "complex");
  };
  if (split == std::string::npos) return {0.0, imag_part(s)};
  return {to_double(s.substr(0, split), "complex"), imag_part(s.substr(split))};
}

SuiteConfig parse_config(std::string_view text, SuiteConfig base) {
  SuiteConfig c = std::move(base);
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "seed") {
      const long long s = to_integer(value, key);
      if (s < 0) throw UsageError("seed must be nonnegative");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key.rfind("tol.", 0) == 0) {
      const std::string name = key.substr(4);
      if (!c.tolerances.count(name)) throw UsageError("unknown tolerance key " + key);
      c.tolerances[name] = to_double(value, key);
    } else if (key == "p") {
      c.p = parse_list<int>(value, key, [](const std::string& s, const std::string& k) {
        return static_cast<int>(to_integer(s, k));
      });
    } else if (key == "theta") {
      c.theta = parse_list<double>(value, key, to_double);
    } else if (key == "commutation_theta") {
      c.commutation_theta = parse_list<double>(value, key, to_double);
    } else if (key == "tau") {
      c.tau = parse_list<cplx>(value, key, [](const std::string& s, const std::string&) {
        return parse_complex(s);
      });
    } else if (key == "N") {
      c.N = parse_list<int>(value, key, [](const std::string& s, const std::string& k) {
        return static_cast<int>(to_integer(s, k));
      });
    } else if (key == "grid") {
      c.grid = parse_list<int>(value, key, [](const std::string& s, const std::string& k) {
        return static_cast<int>(to_integer(s, k));
      });
    } else if (key == "chern_grid") {
      c.chern_grid = static_cast<int>(to_integer(value, key));
    } else if (key == "projection_grid") {
      c.projection_grid = static_cast<int>(to_integer(value, key));
    } else if (key == "output_dir") {
      c.output_dir = value;
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

SuiteConfig load_config(const std::string& path, SuiteConfig base) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

// ---------------------------------------------------------------------------
// Checks

namespace {

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

class Recorder {
 public:
  Recorder(const SuiteConfig& config, std::string name) : config_(config), name_(std::move(name)) {}

  Rng rng() const {
    const auto h = stable_hash(static_cast<std::uint64_t>(index_),
                               stable_hash(name_, stable_hash(config_.seed, 1469598103934665603ULL)));
    return Rng(h);
  }

  /// Times `metric` and records one sweep point.
  void point(json params, const std::string& tol_key, Comparison cmp, const std::function<double()>& metric) {
    CheckResult r;
    r.name = name_;
    r.index = index_;
    r.params = std::move(params);
    r.tolerance = config_.tol(tol_key);
    r.comparison = cmp;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.metric = metric();
      r.pass = std::isfinite(r.metric) &&
               (cmp == Comparison::at_most ? r.metric <= r.tolerance : r.metric >= r.tolerance);
    } catch (const std::exception& e) {
      r.params["error"] = e.what();
      r.metric = std::numeric_limits<double>::infinity();
      r.pass = false;
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    results_.push_back(std::move(r));
    ++index_;
  }

  const SuiteConfig& config() const { return config_; }
  int index() const { return index_; }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  const SuiteConfig& config_;
  std::string name_;
  int index_ = 0;
  std::vector<CheckResult> results_;
};

GaussPacket random_packet(Rng& rng, int terms, double wlo, double whi, double spread = 0.2) {
  std::vector<GaussTerm> out;
  for (int i = 0; i < terms; ++i) {
    const cplx amp = rng.uniform(0.5, 1.5) * unit_phase(rng.uniform(0.0, 2.0 * kPi));
    const double freq = rng.uniform(-spread, spread);
    const double center = rng.uniform(-spread, spread);
    out.push_back({amp, 0, freq, center, rng.uniform(wlo, whi)});
  }
  return GaussPacket(std::move(out));
}

FiberVector random_fibers(Rng& rng, int p, int terms, double wlo, double whi) {
  std::vector<GaussPacket> comps;
  for (int k = 0; k < p; ++k) comps.push_back(random_packet(rng, terms, wlo, whi));
  return FiberVector(std::move(comps));
}

std::vector<cplx> parallelogram(cplx tau, int grid) {
  std::vector<cplx> zs;
  for (int a = 0; a < grid; ++a)
    for (int b = 0; b < grid; ++b) zs.push_back(double(a) / grid + (double(b) / grid) * tau);
  return zs;
}

// Reference Weyl action by the defining formula, independent of apply_weyl.
std::function<cplx(double)> weyl_direct(double a, double b, std::function<cplx(double)> f) {
  return [=](double t) { return unit_phase(-kPi * a * b + 2.0 * kPi * b * t) * f(t - a); };
}

void check_weyl_law(Recorder& rec) {
  rec.point({{"draws", 200}, {"grid", 101}}, "weyl-law", Comparison::at_most, [&] {
    Rng rng = rec.rng();
    const GaussPacket psi = random_packet(rng, 2, 0.5, 1.5, 0.5);
    const auto psi_fn = [psi](double t) { return packet_eval(psi, t); };
    double worst = 0.0;
    for (int draw = 0; draw < 200; ++draw) {
      const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3), c = rng.uniform(-3, 3),
                   d = rng.uniform(-3, 3);
      const auto lhs = weyl_direct(a, b, weyl_direct(c, d, psi_fn));
      const auto prod = mul_weyl(a, b, c, d);
      const GaussPacket rhs = apply_weyl(prod.a, prod.b, psi);
      for (int k = 0; k <= 100; ++k) {
        const double t = -8.0 + 16.0 * k / 100.0;
        worst = std::max(worst, std::abs(lhs(t) - prod.phase * packet_eval(rhs, t)));
      }
    }
    return worst;
  });
}

void check_commutation(Recorder& rec) {
  for (double theta : rec.config().commutation_theta) {
    rec.point({{"theta", theta}}, "commutation", Comparison::at_most, [&] {
      Rng rng = rec.rng();
      const WeylSum pu = rep_pi(TorusElement::monomial(theta, 1, 0));
      const WeylSum pv = rep_pi(TorusElement::monomial(theta, 0, 1));
      const cplx q = unit_phase(2.0 * kPi * theta);
      double worst = weylsum_distance(pu * pv, q * (pv * pu));
      for (int i = 0; i < 5; ++i) {
        const GaussPacket psi = random_packet(rng, 2, 0.5, 1.5, 0.5);
        const GaussPacket uv = apply_weylsum(pu, apply_weylsum(pv, psi));
        const GaussPacket vu = apply_weylsum(pv, apply_weylsum(pu, psi));
        for (int k = 0; k <= 100; ++k) {
          const double t = -5.0 + 10.0 * k / 100.0;
          worst = std::max(worst, std::abs(packet_eval(uv, t) - q * packet_eval(vu, t)));
        }
      }
      return worst;
    });
  }
}

TorusElement random_trig(Rng& rng, double theta, int radius) {
  TorusElement f(theta, Interpretation::function);
  for (int m = -radius; m <= radius; ++m)
    for (int n = -radius; n <= radius; ++n) f.set(m, n, {rng.uniform(-1, 1), rng.uniform(-1, 1)});
  return f;
}

void check_quantization_iso(Recorder& rec) {
  for (double theta : {0.3, 0.5}) {
    rec.point({{"theta", theta}, {"pairs", 50}, {"support", "5x5"}}, "quantization-iso",
              Comparison::at_most, [&] {
                Rng rng = rec.rng();
                double worst = 0.0;
                for (int i = 0; i < 50; ++i) {
                  const TorusElement f = random_trig(rng, theta, 2);
                  const TorusElement g = random_trig(rng, theta, 2);
                  worst = std::max(worst, max_coeff_diff(quantize_T(star_trig(f, g)),
                                                         torus_mul(quantize_T(f), quantize_T(g))));
                }
                return worst;
              });
  }
}

void check_rational_center(Recorder& rec) {
  for (auto [p, q] : {std::pair<long, long>{1, 2}, {1, 3}, {2, 5}}) {
    const double theta = double(p) / double(q);
    rec.point({{"theta", std::to_string(p) + "/" + std::to_string(q)}}, "rational-center",
              Comparison::at_most, [&] {
                const WeylSum pu = rep_pi(TorusElement::monomial(theta, 1, 0));
                const WeylSum pv = rep_pi(TorusElement::monomial(theta, 0, 1));
                return std::max(center_defect_rational(p, q, pu), center_defect_rational(p, q, pv));
              });
  }
  rec.point({{"theta", 0.3}, {"candidates", "W(q,0), q=1..5"}}, "rational-center.irrational",
            Comparison::at_least, [&] {
              const WeylSum pv = rep_pi(TorusElement::monomial(0.3, 0, 1));
              double best = std::numeric_limits<double>::infinity();
              for (int q = 1; q <= 5; ++q)
                best = std::min(best, commutation_defect(WeylSum::single(q, 0.0), pv));
              return best;
            });
}

void check_wbz_roundtrip(Recorder& rec) {
  const double theta = 0.3;
  for (int p : rec.config().p) {
    for (cplx tau : {cplx(0.0, 1.0), cplx(0.0, 1.0 + 0.5 * p * theta)}) {
      rec.point({{"p", p}, {"theta", theta}, {"tau", complex_json(tau)}, {"series_N", 12}}, "wbz-roundtrip",
                Comparison::at_most, [&] {
                  Rng rng = rec.rng();
                  const ModuliParams params(theta, tau, p);
                  const FiberVector fibers = random_fibers(rng, p, 2, 0.5, 1.0);
                  const QuasiSection sec(params, fibers, 12);
                  std::vector<double> ys;
                  for (int k = 0; k <= 8; ++k) ys.push_back(-1.0 + 0.25 * k);
                  double worst = 0.0;
                  for (int n = 0; n < p; ++n) {
                    const auto got = wbz_inverse(sec.evaluator(), params, n, ys);
                    for (std::size_t k = 0; k < ys.size(); ++k)
                      worst = std::max(worst, std::abs(got[k] - packet_eval(fibers[n], ys[k])));
                  }
                  return worst;
                });
    }
  }
}

void check_quasi_periodicity(Recorder& rec) {
  const int grid = rec.config().grid.front();
  for (int p : rec.config().p) {
    for (cplx tau : rec.config().tau) {
      Rng rng = rec.rng();
      const ModuliParams params(0.0, tau, p);
      const QuasiSection sec(params, random_fibers(rng, p, 2, 0.5, 1.0));
      const json base{{"p", p}, {"tau", complex_json(tau)}, {"grid", grid}};
      json j = base;
      j["section"] = "f";
      rec.point(j, "quasi-periodicity", Comparison::at_most,
                [&] { return quasiperiodicity_defect(sec.evaluator(), params, grid); });
      for (int dir : {1, 2}) {
        j = base;
        j["section"] = dir == 1 ? "nabla1 f" : "nabla2 f";
        rec.point(j, "quasi-periodicity.nabla", Comparison::at_most, [&] {
          return quasiperiodicity_defect(nabla_fiber(dir, sec).evaluator(), params, grid);
        });
      }
    }
  }
}

void check_constraint_dichotomy(Recorder& rec) {
  const int grid = rec.config().grid.front();
  for (int p : rec.config().p) {
    for (double theta : rec.config().theta) {
      const int r = rec.index() % 2;
      const cplx tau(r, 1.0 + 0.5 * p * theta);
      rec.point({{"p", p}, {"theta", theta}, {"tau", complex_json(tau)}, {"constraint", true}},
                "constraint-dichotomy", Comparison::at_most,
                [&] { return constraint_defect_witness(tau, theta, p, grid); });
    }
  }
  for (int sample = 0; sample < 5; ++sample) {
    Rng rng = rec.rng();
    int p = 2;
    double theta = 0.3;
    cplx tau(0.0, 1.0);
    if (sample > 0) {
      p = rng.integer(1, 3);
      theta = rng.uniform(0.0, 0.9);
      const double delta = rng.uniform(0.15, 0.85);
      tau = sample % 2 ? cplx(0.0, 1.0 + 0.5 * p * theta + delta) : cplx(delta, 1.0 + 0.5 * p * theta);
    }
    const double gap = std::max(std::abs(1.0 - unit_phase(2.0 * kPi * tau.real())),
                                std::abs(1.0 - unit_phase(2.0 * kPi * (tau.imag() - 0.5 * p * theta))));
    rec.point({{"p", p}, {"theta", theta}, {"tau", complex_json(tau)}, {"constraint", false}, {"phase_gap", gap}},
              "constraint-dichotomy.gap", Comparison::at_least,
              [&] { return constraint_defect_witness(tau, theta, p, grid); });
  }
}

void check_classical_hermitian(Recorder& rec) {
  const int grid = rec.config().grid.front();
  const int N = rec.config().N.front();
  for (int p : {1, 2}) {
    const cplx tau(0.0, 1.0);
    rec.point({{"p", p}, {"tau", complex_json(tau)}, {"N", N}, {"grid", grid}}, "classical-hermitian",
              Comparison::at_most, [&] {
                Rng rng = rec.rng();
                const ModuliParams params(0.0, tau, p);
                const FiberVector f = random_fibers(rng, p, 1, 0.33, 0.37);
                const FiberVector g = random_fibers(rng, p, 1, 0.33, 0.37);
                const auto h = herm_classical(f, g, params, N);
                const QuasiSection fs(params, f), gs(params, g);
                double worst = 0.0;
                for (cplx z : parallelogram(tau, grid))
                  worst = std::max(worst, std::abs(eval_on_curve(h.value, z, tau) - std::conj(fs(z)) * gs(z)));
                return worst;
              });
  }
}

void write_text(const std::string& dir, const std::string& file, const std::string& text) {
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / file);
  if (!out) throw std::runtime_error("cannot write " + file + " in " + dir);
  out << text;
}

void check_deformed_hermitian(Recorder& rec) {
  const int N = rec.config().N.front();
  for (int p : rec.config().p) {
    for (double theta : rec.config().theta) {
      const cplx tau(0.0, 1.0 + 0.5 * p * theta);
      const json base{{"p", p}, {"theta", theta}, {"tau", complex_json(tau)}, {"N", N}};
      Rng rng = rec.rng();
      const ModuliParams params(theta, tau, p);
      const QuasiSection f(params, random_fibers(rng, p, 1, 0.33, 0.37));
      const QuasiSection g(params, random_fibers(rng, p, 1, 0.33, 0.37));
      std::optional<HermitianResult> lhs, rhs;
      json j = base;
      j["quantity"] = "residual";
      rec.point(j, "deformed-hermitian", Comparison::at_most, [&] {
        lhs = star_section(f, g, N);
        rhs = herm_deformed_rhs(f, g, N);
        return max_coeff_diff(quantize_T(lhs->value), rhs->value);
      });
      j = base;
      j["quantity"] = "tail";
      rec.point(j, "deformed-hermitian.tail", Comparison::at_most, [&] {
        if (!lhs || !rhs) throw std::runtime_error("hermitian structures unavailable");
        const double tail = std::max(lhs->tail, rhs->tail);
        if (!rec.config().output_dir.empty()) {
          char name[96];
          std::snprintf(name, sizeof name, "hermitian-p%d-theta%.2f.txt", p, theta);
          write_text(rec.config().output_dir, name, to_text(rhs->value, tail));
        }
        return tail;
      });
    }
  }
}

void check_module_action_oracle(Recorder& rec) {
  const int grid = rec.config().grid.front();
  for (int p : rec.config().p) {
    for (double theta : rec.config().theta) {
      const cplx tau(0.0, 1.0 + 0.5 * p * theta);
      rec.point({{"p", p}, {"theta", theta}, {"tau", complex_json(tau)}, {"grid", grid}},
                "module-action-oracle", Comparison::at_most, [&] {
                  Rng rng = rec.rng();
                  const ModuliParams params(theta, tau, p);
                  const FiberVector fib = random_fibers(rng, p, 2, 0.5, 1.0);
                  const QuasiSection f(params, fib);
                  double worst = 0.0, scale = 0.0;
                  for (Generator gen : {Generator::U, Generator::V}) {
                    const QuasiSection weyl_side(params, deformed_act(gen, fib, params));
                    const ComplexFn fn_side = bimod_act(Side::right, gen, f.evaluator(), theta);
                    for (cplx z : parallelogram(tau, grid)) {
                      scale = std::max(scale, std::abs(f(z)));
                      worst = std::max(worst, std::abs(weyl_side(z) - fn_side(z)));
                    }
                  }
                  return worst / scale;
                });
    }
  }
}

void check_theta_functional(Recorder& rec) {
  for (cplx tau : rec.config().tau) {
    rec.point({{"tau", complex_json(tau)}, {"shifts", "|m|,|n| <= 2"}, {"N", 12}}, "theta-functional",
              Comparison::at_most, [&] {
                const cplx q = std::exp(kI * kPi * tau);
                double worst = 0.0, scale = 0.0;
                for (cplx z : parallelogram(tau, 8)) {
                  const cplx base = jacobi_theta(z, tau, 12).value;
                  for (int m = -2; m <= 2; ++m) {
                    for (int n = -2; n <= 2; ++n) {
                      const cplx lhs = jacobi_theta(z + double(m) + double(n) * tau, tau, 12).value;
                      const cplx rhs = std::pow(q, -double(n) * n) * std::exp(-2.0 * kI * kPi * double(n) * z) * base;
                      scale = std::max(scale, std::abs(lhs));
                      worst = std::max(worst, std::abs(lhs - rhs));
                    }
                  }
                }
                return worst / scale;
              });
  }
}

void check_holomorphic_dimension(Recorder& rec) {
  const cplx tau(0.0, 1.0);
  for (int p : {1, 2, 3}) {
    std::optional<HoloDimension> hd;
    auto get = [&] {
      if (!hd) hd = holomorphic_dimension(p, tau);
      return *hd;
    };
    rec.point({{"p", p}, {"quantity", "max dbar"}}, "holomorphic-dimension", Comparison::at_most,
              [&] { return get().max_dbar; });
    rec.point({{"p", p}, {"quantity", "min normalized Gram eigenvalue"}}, "holomorphic-dimension.gram",
              Comparison::at_least, [&] { return get().min_gram_eigenvalue; });
    rec.point({{"p", p}, {"quantity", "|dimension - p|"}}, "holomorphic-dimension.count", Comparison::at_most,
              [&] { return std::abs(get().dimension - p); });
  }
  rec.point({{"p", -1}, {"quantity", "|dimension - 0|"}}, "holomorphic-dimension.count", Comparison::at_most,
            [&] { return std::abs(holomorphic_dimension(-1, tau).dimension); });
}

void check_chern_homogeneous(Recorder& rec) {
  for (int p = -2; p <= 3; ++p) {
    for (cplx tau : {cplx(0.0, 1.0), cplx(0.5, 2.0), cplx(0.3, 1.1)}) {
      rec.point({{"p", p}, {"tau", complex_json(tau)}}, "chern-homogeneous", Comparison::at_most,
                [&] { return std::abs(chern_homogeneous(p, tau) - p); });
    }
  }
}

void check_chern_grassmann(Recorder& rec) {
  const int n = rec.config().chern_grid;
  for (int p : rec.config().p) {
    json params{{"p", p}, {"grid", n}, {"quantity", "|value - p|"}};
    rec.point(params, "chern-grassmann", Comparison::at_most, [&] {
      const auto est = chern_grassmann(p, {n, n});
      return std::abs(est.value - p);
    });
    rec.point({{"p", p}, {"grids", json::array({n / 2, n})}, {"quantity", "|error ratio - 4|"}},
              "chern-grassmann.order", Comparison::at_most, [&] {
                const double coarse = std::abs(chern_grassmann(p, {n / 2, n / 2}).trapezoid - p);
                const double fine = std::abs(chern_grassmann(p, {n, n}).trapezoid - p);
                if (fine < 1e-10) return 0.0;
                return std::abs(coarse / fine - 4.0);
              });
  }
}

void check_projection_validity(Recorder& rec) {
  const int n = rec.config().projection_grid;
  for (int p : rec.config().p) {
    rec.point({{"p", p}, {"grid", n}}, "projection-validity", Comparison::at_most,
              [&] { return projection_P({n, n}, p).max_defect(); });
  }
}

using CheckFn = void (*)(Recorder&);

struct Entry {
  CheckInfo info;
  CheckFn fn;
};

const std::vector<Entry>& entries();
std::vector<CheckResult> run_selected(const SuiteConfig& config, const std::vector<const Entry*>& selected);

void check_determinism(Recorder& rec) {
  rec.point({{"runs", 2}}, "determinism", Comparison::at_most, [&] {
    SuiteConfig c = rec.config();
    c.output_dir.clear();
    std::vector<const Entry*> others;
    for (const auto& e : entries())
      if (e.fn != check_determinism) others.push_back(&e);
    const std::string a = report_json(run_selected(c, others));
    const std::string b = report_json(run_selected(c, others));
    return a == b ? 0.0 : 1.0;
  });
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {{"weyl-law", 1, "Weyl product law against operator composition"}, check_weyl_law},
      {{"commutation", 2, "pi(U) pi(V) = e^{2 pi i theta} pi(V) pi(U)"}, check_commutation},
      {{"quantization-iso", 3, "T(f * g) = T(f) T(g)"}, check_quantization_iso},
      {{"rational-center", 4, "center generators at rational theta"}, check_rational_center},
      {{"wbz-roundtrip", 5, "fiber recovery from sections"}, check_wbz_roundtrip},
      {{"quasi-periodicity", 6, "sections and covariant derivatives are quasi-periodic"}, check_quasi_periodicity},
      {{"constraint-dichotomy", 7, "deformed action closes iff tau - p theta i/2 in Z + iZ"},
       check_constraint_dichotomy},
      {{"classical-hermitian", 8, "classical Hermitian structure equals conj(f) g"}, check_classical_hermitian},
      {{"deformed-hermitian", 9, "deformed Hermitian identity"}, check_deformed_hermitian},
      {{"module-action-oracle", 10, "deformed action against the function-side action"},
       check_module_action_oracle},
      {{"theta-functional", 11, "theta functional equation"}, check_theta_functional},
      {{"holomorphic-dimension", 12, "holomorphic sections of degree p"}, check_holomorphic_dimension},
      {{"chern-homogeneous", 13, "Chern number of the homogeneous connection"}, check_chern_homogeneous},
      {{"chern-grassmann", 13, "Chern number of the Grassmannian connection"}, check_chern_grassmann},
      {{"projection-validity", 14, "projection P = Psi Psi^dagger"}, check_projection_validity},
      {{"determinism", 15, "identical seeds give identical reports"}, check_determinism},
  };
  return table;
}

const char* comparison_text(Comparison c) { return c == Comparison::at_most ? "<=" : ">="; }

std::vector<CheckResult> run_selected(const SuiteConfig& config, const std::vector<const Entry*>& selected) {
  std::vector<std::future<std::vector<CheckResult>>> jobs;
  for (const Entry* e : selected) {
    jobs.push_back(std::async(std::launch::async, [&config, e] {
      Recorder rec(config, e->info.name);
      e->fn(rec);
      return rec.take();
    }));
  }
  std::vector<CheckResult> results;
  for (auto& j : jobs) {
    auto part = j.get();
    results.insert(results.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::sort(results.begin(), results.end(), [](const CheckResult& a, const CheckResult& b) {
    return a.name != b.name ? a.name < b.name : a.index < b.index;
  });
  return results;
}

}  // namespace

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

std::vector<CheckResult> run_suite(const SuiteConfig& config, const std::optional<std::string>& filter) {
  config.validate();
  std::vector<const Entry*> selected;
  for (const auto& e : entries())
    if (!filter || fnmatch(filter->c_str(), e.info.name.c_str(), 0) == 0) selected.push_back(&e);
  if (selected.empty()) throw UsageError("filter '" + filter.value_or("") + "' matches no check");
  return run_selected(config, selected);
}

bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

std::string report_json(const std::vector<CheckResult>& results) {
  json arr = json::array();
  for (const auto& r : results) {
    arr.push_back({{"name", r.name},
                   {"index", r.index},
                   {"params", r.params},
                   {"metric", r.metric},
                   {"comparison", comparison_text(r.comparison)},
                   {"tolerance", r.tolerance},
                   {"pass", r.pass}});
  }
  return arr.dump(2) + "\n";
}

std::string report_text(const std::vector<CheckResult>& results) {
  std::size_t width = 5;
  for (const auto& r : results) width = std::max(width, r.name.size());
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-*s %5s %12s %2s %9s %6s %10s\n", int(width), "check", "index", "metric", "",
                "tolerance", "status", "ms");
  os << line;
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-*s %5d %12.4e %2s %9.2e %6s %10.2f\n", int(width), r.name.c_str(), r.index,
                  r.metric, comparison_text(r.comparison), r.tolerance, r.pass ? "PASS" : "FAIL", r.runtime_ms);
    os << line;
  }
  const auto passed = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
  os << passed << "/" << results.size() << " passed\n";
  return os.str();
}

void emit_report(const std::vector<CheckResult>& results, ReportFormat format, const std::string& path) {
  if (results.empty()) throw std::invalid_argument("no results to report");
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report to " + path);
  out << (format == ReportFormat::json ? report_json(results) : report_text(results));
  if (!out) throw std::runtime_error("failed writing report to " + path);
}

}  // namespace nct

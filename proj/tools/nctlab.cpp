// nctlab: run the verification suite, compute Chern numbers, dump sections.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nctlab/geometry.hpp"
#include "nctlab/harness.hpp"
#include "nctlab/sections.hpp"

namespace {

int run_verify(const std::optional<std::string>& filter, const std::optional<std::string>& config_path,
               const std::optional<std::uint64_t>& seed, const std::optional<std::string>& out_dir,
               const std::string& format) {
  nct::SuiteConfig config = nct::SuiteConfig::defaults();
  if (config_path) config = nct::load_config(*config_path, config);
  if (seed) config.seed = *seed;
  if (out_dir) config.output_dir = *out_dir;
  if (config.output_dir.empty()) config.output_dir = "nctlab-out";
  const auto results = nct::run_suite(config, filter);
  const bool json = format == "json";
  const auto path = std::filesystem::path(config.output_dir) / (json ? "report.json" : "report.txt");
  nct::emit_report(results, json ? nct::ReportFormat::json : nct::ReportFormat::text, path.string());
  std::cout << nct::report_text(results) << "report: " << path.string() << "\n";
  return nct::all_pass(results) ? 0 : 1;
}

int run_chern(int p, int grid, const std::optional<std::string>& curvature_csv) {
  const auto est = nct::chern_grassmann(p, {grid, grid});
  nlohmann::ordered_json out{{"p", p}, {"grid", grid}, {"value", est.value}, {"est_error", est.est_error}};
  std::cout << out.dump() << "\n";
  if (curvature_csv) {
    const auto field = nct::curvature_field(p, {grid, grid});
    std::ofstream csv(*curvature_csv);
    if (!csv) throw std::runtime_error("cannot write " + *curvature_csv);
    csv << "x,y,omega_im\n";
    char line[128];
    for (int j = 0; j <= grid; ++j)
      for (int i = 0; i <= grid; ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", double(i) / grid, double(j) / grid,
                      field.at(i, j).imag());
        csv << line;
      }
  }
  return 0;
}

// Section with a unit-width Gaussian in every fiber class, shifted by class.
int run_dump_section(int p, const std::string& tau_text, double theta, int grid) {
  const nct::cplx tau = nct::parse_complex(tau_text);
  const nct::ModuliParams params(theta, tau, p);
  auto fibers = nct::FiberVector::zero(p);
  for (int k = 0; k < p; ++k) fibers[k] = nct::GaussPacket::gaussian(0.1 * k, 1.0);
  const nct::QuasiSection sec(params, fibers);
  std::cout << "x,y,re,im\n";
  char line[160];
  for (int b = 0; b < grid; ++b)
    for (int a = 0; a < grid; ++a) {
      const nct::cplx z = double(a) / grid + (double(b) / grid) * tau;
      const nct::cplx v = sec(z);
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", z.real(), z.imag(), v.real(), v.imag());
      std::cout << line;
    }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of noncommutative-torus module structures"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  std::optional<std::string> filter, config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  verify->add_option("--filter", filter, "glob over check names");
  verify->add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
  verify->add_option("--seed", seed, "master seed");
  verify->add_option("--out", out_dir, "output directory");
  verify->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));

  auto* chern = app.add_subcommand("chern", "Chern number from the Grassmannian connection");
  int chern_p = 1, chern_grid = 256;
  std::optional<std::string> curvature;
  chern->add_option("--p", chern_p, "degree")->required();
  chern->add_option("--grid", chern_grid, "grid size (divisible by 4)")->required();
  chern->add_option("--curvature", curvature, "write curvature samples as CSV");

  auto* dump = app.add_subcommand("dump-section", "sample a quasi-periodic section as CSV");
  int dump_p = 1, dump_grid = 32;
  double dump_theta = 0.0;
  std::string dump_tau = "0,1";
  dump->add_option("--p", dump_p, "degree")->required();
  dump->add_option("--tau", dump_tau, "RE,IM")->required();
  dump->add_option("--theta", dump_theta, "deformation parameter")->required();
  dump->add_option("--grid", dump_grid, "samples per direction")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) return run_verify(filter, config_path, seed, out_dir, format);
    if (*chern) return run_chern(chern_p, chern_grid, curvature);
    if (*dump) return run_dump_section(dump_p, dump_tau, dump_theta, dump_grid);
  } catch (const nct::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

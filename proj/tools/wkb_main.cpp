// Command-line front end: builds graphs, coefficient tables, Borel-plane
// reports, connection data, spectra, and runs the verification suites.
// Exit codes: 0 success, 1 verification failure, 2 input/config error,
// 3 numeric failure.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "wkb/jsonio.hpp"
#include "wkb/oracle.hpp"
#include "wkb/svg.hpp"
#include "wkb/verify.hpp"

namespace fs = std::filesystem;
using wkb::cplx;
using wkb::json;

namespace {

constexpr const char* kVersion = "exactwkb 1.0.0";

struct Common {
  std::string potential = "x";
  std::string potential_file;
  std::string energy = "0";
  std::string output;
  std::string format = "json";
  double phase = 0.0;
  double ode_tol = 1e-10;
  double cheb_tol = 1e-12;
};

void add_common(CLI::App* cmd, Common& c, bool needs_potential = true) {
  if (needs_potential) {
    cmd->add_option("-V,--potential", c.potential, "potential V(x) as an expression");
    cmd->add_option("--potential-file", c.potential_file,
                    "JSON file with a polynomial object (wins over --potential)");
    cmd->add_option("-E,--energy", c.energy, "energy as re or re,im");
    cmd->add_option("--phase", c.phase, "arg(lambda) the graph is built at");
  }
  cmd->add_option("-o,--output", c.output, "output directory (default $WKB_OUTPUT_DIR or .)");
  cmd->add_option("--format", c.format, "table format: json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--ode-tol", c.ode_tol, "ODE oracle tolerance");
  cmd->add_option("--cheb-tol", c.cheb_tol, "spectral coefficient tolerance");
}

fs::path out_dir(const Common& c) {
  std::string dir = c.output;
  if (dir.empty()) {
    if (const char* env = std::getenv("WKB_OUTPUT_DIR")) dir = env;
  }
  if (dir.empty()) dir = ".";
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw wkb::invalid_argument("cannot open output file " + p.string());
  f << content;
  std::cout << "wrote " << p.string() << "\n";
}

void write_json(const fs::path& p, const json& j) { write_file(p, j.dump(2) + "\n"); }

wkb::Polynomial load_potential(const Common& c) {
  if (!c.potential_file.empty()) {
    std::ifstream f(c.potential_file);
    if (!f) throw wkb::invalid_argument("cannot read potential file " + c.potential_file);
    return wkb::polynomial_from_json(json::parse(f));
  }
  return wkb::Polynomial::parse(c.potential);
}

wkb::StokesGraph load_graph(const Common& c) {
  return wkb::build_graph(wkb::characteristic(load_potential(c), wkb::parse_cplx(c.energy)),
                          c.phase);
}

/// Every run records its effective configuration: rerunning with the manifest
/// values on the same build reproduces the outputs byte for byte.
void write_manifest(const Common& c, const std::string& command, json inputs) {
  json m{{"version", kVersion},
         {"command", command},
         {"inputs", std::move(inputs)},
         {"tolerances", json{{"ode_tol", c.ode_tol}, {"cheb_tol", c.cheb_tol}}},
         {"format", c.format}};
  if (!c.potential_file.empty())
    m["potential_file"] = c.potential_file;
  else
    m["potential"] = c.potential;
  m["energy"] = c.energy;
  m["phase"] = c.phase;
  write_json(out_dir(c) / (command + "_manifest.json"), m);
}

std::string csv_of_series(const wkb::AsymptoticSeries& s) {
  std::string out = "n,re,im\n";
  char buf[80];
  for (std::size_t n = 0; n < s.coeffs.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", n, s.coeffs[n].real(), s.coeffs[n].imag());
    out += buf;
  }
  return out;
}

std::vector<cplx> parse_lambdas(const std::vector<std::string>& raw) {
  std::vector<cplx> out;
  for (const auto& s : raw) out.push_back(wkb::parse_cplx(s));
  if (out.empty()) out.push_back(cplx{10.0, 0.0});
  return out;
}

wkb::AsymptoticSeries sector_series(const wkb::StokesGraph& g, int sector, cplx x, int order,
                                    double cheb_tol) {
  auto path = wkb::canonical_path(g, sector, x);
  if (!path)
    throw wkb::numeric_error("point is outside the canonical domain of sector " +
                             std::to_string(sector));
  return wkb::chi_series(g, sector, *path, x, order, cheb_tol);
}

// ---- subcommands ----------------------------------------------------------

int cmd_stokes(const Common& c) {
  const auto g = load_graph(c);
  const fs::path dir = out_dir(c);
  write_json(dir / "stokes.json", wkb::graph_json(g));
  write_file(dir / "stokes.svg", wkb::stokes_svg(g));
  write_manifest(c, "stokes", json{});
  return 0;
}

int cmd_coeffs(const Common& c, int sector, const std::string& x_str, int order) {
  const auto g = load_graph(c);
  const auto s = sector_series(g, sector, wkb::parse_cplx(x_str), order, c.cheb_tol);
  const fs::path dir = out_dir(c);
  if (c.format == "csv")
    write_file(dir / "coeffs.csv", csv_of_series(s));
  else
    write_json(dir / "coeffs.json", wkb::series_json(s));
  write_manifest(c, "coeffs", json{{"sector", sector}, {"x", x_str}, {"order", order}});
  return 0;
}

int cmd_borel(const Common& c, int sector, const std::string& x_str, int order, int pade_L,
              int pade_M, const std::vector<double>& rays,
              const std::vector<std::string>& lambda_strs) {
  const auto g = load_graph(c);
  const cplx x = wkb::parse_cplx(x_str);
  const auto s = sector_series(g, sector, x, order, c.cheb_tol);
  const auto b = wkb::to_borel(wkb::normalized_for_laplace(s));
  const auto pa = wkb::pade(b, pade_L, pade_M);
  const auto forecast = wkb::predicted_singularities(g, x);

  // Forecast vs detected: distance from each predicted branch point to the
  // nearest genuine (non-spurious) pole.
  json comparison = json::array();
  auto nearest = [&](cplx target) {
    double best = -1.0;
    for (std::size_t i = 0; i < pa.poles.size(); ++i) {
      if (pa.froissart[i]) continue;
      const double d = std::abs(pa.poles[i] - target);
      if (best < 0.0 || d < best) best = d;
    }
    return best;
  };
  comparison.push_back(json{{"kind", "moving"},
                            {"predicted", wkb::cplx_json(forecast.moving)},
                            {"nearest_pole_distance", nearest(forecast.moving)}});
  for (const cplx& z : forecast.fixed) {
    comparison.push_back(json{{"kind", "fixed"},
                              {"predicted", wkb::cplx_json(z)},
                              {"nearest_pole_distance", nearest(z)}});
  }

  // Ray sums for every (lambda, ray) pair, batched in parallel; joins before
  // any file is written so output stays serialized.
  const auto lambdas = parse_lambdas(lambda_strs);
  struct Job {
    cplx lambda;
    double ray;
    std::future<wkb::LaplaceResult> result;
  };
  std::vector<Job> jobs;
  for (const cplx& lam : lambdas) {
    for (double ray : rays) {
      jobs.push_back(Job{lam, ray,
                         std::async(std::launch::async,
                                    [&pa, lam, ray] { return wkb::laplace_sum(pa, lam, ray); })});
    }
  }
  json sums = json::array();
  for (auto& job : jobs) {
    const auto r = job.result.get();  // numeric_error (e.g. pole on ray) propagates: exit 3
    sums.push_back(json{{"lambda", wkb::cplx_json(job.lambda)},
                        {"ray", job.ray},
                        {"value", wkb::cplx_json(r.value)},
                        {"error", r.error}});
  }

  json report{{"type", "borel_report"},
              {"series", wkb::series_json(s)},
              {"radius_estimate", b.radius_estimate},
              {"pade", wkb::pade_json(pa)},
              {"forecast", wkb::forecast_json(forecast)},
              {"forecast_vs_detected", comparison},
              {"ray_sums", sums}};
  const fs::path dir = out_dir(c);
  write_json(dir / "borel.json", report);
  write_file(dir / "poles.svg", wkb::pole_map_svg(pa, forecast, b.radius_estimate));
  write_manifest(c, "borel",
                 json{{"sector", sector},
                      {"x", x_str},
                      {"order", order},
                      {"pade", json::array({pade_L, pade_M})},
                      {"rays", rays},
                      {"lambda", lambda_strs}});
  return 0;
}

int cmd_connect(const Common& c, int from, int basis_a, int basis_b,
                const std::vector<std::string>& lambda_strs) {
  const auto g = load_graph(c);
  const auto lambdas = parse_lambdas(lambda_strs);
  std::vector<std::future<wkb::ConnectionData>> jobs;
  for (const cplx& lam : lambdas) {
    jobs.push_back(std::async(std::launch::async, [&g, from, basis_a, basis_b, lam, &c] {
      return wkb::connection(g, from, basis_a, basis_b, lam, c.ode_tol);
    }));
  }
  json arr = json::array();
  for (auto& job : jobs) arr.push_back(wkb::connection_json(job.get()));
  write_json(out_dir(c) / "connect.json", json{{"type", "connection_table"}, {"entries", arr}});
  write_manifest(c, "connect",
                 json{{"from", from},
                      {"basis", json::array({basis_a, basis_b})},
                      {"lambda", lambda_strs}});
  return 0;
}

int cmd_eigen(const Common& c, double lambda, double e_lo, double e_hi, int count) {
  const auto levels = wkb::eigenvalues(load_potential(c), lambda, e_lo, e_hi, count);
  write_json(out_dir(c) / "eigen.json", wkb::eigen_json(levels));
  write_manifest(
      c, "eigen",
      json{{"lambda", lambda}, {"e_lo", e_lo}, {"e_hi", e_hi}, {"count", count}});
  return 0;
}

int cmd_verify(const Common& c, const std::string& suite) {
  std::vector<std::string> names =
      suite == "all" ? wkb::suite_names() : std::vector<std::string>{suite};
  json reports = json::array();
  bool all_pass = true;
  for (const auto& name : names) {
    const auto rep = wkb::run_suite(name);
    reports.push_back(wkb::suite_json(rep));
    all_pass = all_pass && rep.passed();
    std::cout << "suite " << name << ": " << (rep.passed() ? "PASS" : "FAIL") << "\n";
    for (const auto& chk : rep.checks) {
      std::printf("  %-44s %11.4e < %8.1e  %s\n", chk.name.c_str(), chk.value, chk.bound,
                  chk.pass ? "ok" : "FAIL");
    }
  }
  write_json(out_dir(c) / "verify.json", json{{"type", "verify_run"}, {"reports", reports}});
  write_manifest(c, "verify", json{{"suite", suite}});
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact semiclassical toolkit: Stokes graphs, asymptotic series, "
               "Borel-Pade resummation, connection coefficients, spectra."};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common c;

  auto* stokes = app.add_subcommand("stokes", "trace the graph; emit JSON and SVG");
  add_common(stokes, c);

  auto* coeffs = app.add_subcommand("coeffs", "sector series coefficients at a point");
  add_common(coeffs, c);
  int sector = 1, order = 20;
  std::string x_str = "1";
  coeffs->add_option("-k,--sector", sector, "sector index (1-based)");
  coeffs->add_option("-x,--point", x_str, "evaluation point re,im");
  coeffs->add_option("-N,--order", order, "truncation order");

  auto* borel = app.add_subcommand("borel", "Borel transform, Pade poles, ray sums");
  add_common(borel, c);
  int pade_L = 10, pade_M = 10;
  std::vector<double> rays{wkb::pi - 0.3, wkb::pi + 0.3};
  std::vector<std::string> lambda_strs;
  borel->add_option("-k,--sector", sector, "sector index (1-based)");
  borel->add_option("-x,--point", x_str, "evaluation point re,im");
  borel->add_option("-N,--order", order, "truncation order");
  borel->add_option("--pade-l", pade_L, "Pade numerator degree");
  borel->add_option("--pade-m", pade_M, "Pade denominator degree");
  borel->add_option("--ray", rays, "Laplace ray angles (radians)");
  borel->add_option("-l,--lambda", lambda_strs, "lambda values re,im");

  auto* connect = app.add_subcommand("connect", "decompose a solution over a basis pair");
  add_common(connect, c);
  int from = 3, basis_a = 1, basis_b = 2;
  connect->add_option("--from", from, "sector to decompose");
  connect->add_option("--basis-a", basis_a, "first basis sector");
  connect->add_option("--basis-b", basis_b, "second basis sector");
  connect->add_option("-l,--lambda", lambda_strs, "lambda values re,im");

  auto* eigen = app.add_subcommand("eigen", "bound-state energies in a bracket");
  add_common(eigen, c);
  double lambda_real = 1.0, e_lo = 0.0, e_hi = 6.0;
  int count = 6;
  eigen->add_option("-l,--lambda", lambda_real, "real lambda");
  eigen->add_option("--e-lo", e_lo, "bracket lower edge");
  eigen->add_option("--e-hi", e_hi, "bracket upper edge");
  eigen->add_option("-n,--count", count, "maximum number of levels");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, c, false);
  std::string suite = "all";
  verify->add_option("-s,--suite", suite,
                     "eq21 | appendix2 | lemma3 | connection | eigen | all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*stokes) return cmd_stokes(c);
    if (*coeffs) return cmd_coeffs(c, sector, x_str, order);
    if (*borel) return cmd_borel(c, sector, x_str, order, pade_L, pade_M, rays, lambda_strs);
    if (*connect) return cmd_connect(c, from, basis_a, basis_b, lambda_strs);
    if (*eigen) return cmd_eigen(c, lambda_real, e_lo, e_hi, count);
    if (*verify) return cmd_verify(c, suite);
  } catch (const wkb::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const wkb::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const wkb::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

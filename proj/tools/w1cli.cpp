// w1cli: 1-Wasserstein distances, Vallender integrand curves and
// comonotone-optimality certificates for univariate laws.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "w1/integrand.hpp"
#include "w1/montecarlo.hpp"
#include "w1/spec_parse.hpp"
#include "w1/wasserstein.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCertificate = 4;

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

struct QuadFlags {
  double abs_tol = 1e-9;
  double rel_tol = 1e-8;
  double tail_eps = 1e-7;

  void attach(CLI::App* cmd) {
    cmd->add_option("--abs-tol", abs_tol, "absolute quadrature tolerance");
    cmd->add_option("--rel-tol", rel_tol, "relative quadrature tolerance");
    cmd->add_option("--tail-eps", tail_eps,
                    "quantile-level tail truncation for unbounded supports");
  }

  w1::QuadConfig config() const { return {abs_tol, rel_tol, tail_eps, 40}; }
};

int run_w1(const std::string& sx, const std::string& sy,
           const std::string& method, const QuadFlags& qf, bool csv) {
  w1::Distribution x = w1::parse_distribution(sx);
  w1::Distribution y = w1::parse_distribution(sy);
  w1::W1Result r;
  if (method == "auto") {
    r = w1::w1_auto(x, y, qf.config());
  } else if (method == "quantile") {
    r = w1::w1_quantile(x, y, qf.config());
  } else if (method == "cdf") {
    r = w1::w1_cdf_area(x, y, qf.config());
  } else {  // sorted
    if (x.family() != w1::Distribution::Family::Empirical ||
        y.family() != w1::Distribution::Family::Empirical)
      throw w1::parse_error("--method sorted requires two empirical specs", 0);
    r = w1::w1_empirical_sorted(x.samples(), y.samples());
  }
  if (csv) {
    std::printf("value,method,error_estimate,fast_path\n%s,%s,%s,%d\n",
                fmt_full(r.value).c_str(), w1::to_string(r.method).c_str(),
                fmt_full(r.error_estimate).c_str(), r.fast_path ? 1 : 0);
  } else {
    json out;
    out["value"] = r.value;
    out["method"] = w1::to_string(r.method);
    out["error_estimate"] = r.error_estimate;
    out["fast_path"] = r.fast_path;
    std::printf("%s\n", out.dump().c_str());
  }
  return kExitOk;
}

int run_integrand(const std::string& sx, const std::string& sy,
                  const std::vector<std::string>& copula_specs,
                  std::size_t grid, double t_lo, double t_hi, bool has_lo,
                  bool has_hi, bool as_json) {
  w1::Distribution x = w1::parse_distribution(sx);
  w1::Distribution y = w1::parse_distribution(sy);

  std::vector<std::pair<std::string, w1::CopulaSpec>> copulas;
  if (copula_specs.empty()) {
    copulas.emplace_back("m", w1::CopulaSpec::m());
    copulas.emplace_back("w", w1::CopulaSpec::w());
    for (double rho : w1::default_gaussian_rhos()) {
      w1::CopulaSpec c = w1::CopulaSpec::gaussian(rho);
      copulas.emplace_back(c.name(), c);
    }
  } else {
    for (const auto& s : copula_specs)
      copulas.emplace_back(s, w1::parse_copula(s));
  }

  auto window = w1::default_t_window(x, y);
  if (!has_lo) t_lo = window.first;
  if (!has_hi) t_hi = window.second;

  std::vector<w1::IntegrandCurve> curves;
  curves.reserve(copulas.size());
  for (const auto& [name, c] : copulas)
    curves.push_back(w1::make_integrand_curve(x, y, c, grid, t_lo, t_hi));

  if (as_json) {
    json out;
    out["t"] = json::array();
    for (double t : curves.front().t_grid) out["t"].push_back(t);
    out["curves"] = json::array();
    for (std::size_t i = 0; i < curves.size(); ++i) {
      json c;
      c["copula"] = copulas[i].first;
      c["values"] = curves[i].values;
      c["area"] = curves[i].area;
      out["curves"].push_back(c);
    }
    std::printf("%s\n", out.dump().c_str());
  } else {
    std::printf("t,copula,value\n");
    for (std::size_t i = 0; i < curves.size(); ++i)
      for (std::size_t j = 0; j < curves[i].t_grid.size(); ++j)
        std::printf("%s,%s,%s\n", fmt_full(curves[i].t_grid[j]).c_str(),
                    copulas[i].first.c_str(),
                    fmt_full(curves[i].values[j]).c_str());
    for (std::size_t i = 0; i < curves.size(); ++i)
      std::printf("#area,%s,%s\n", copulas[i].first.c_str(),
                  fmt_full(curves[i].area).c_str());
  }
  return kExitOk;
}

int run_certify(const std::string& sx, const std::string& sy, std::size_t n,
                std::uint64_t seed, const std::string& rhos_csv) {
  w1::Distribution x = w1::parse_distribution(sx);
  w1::Distribution y = w1::parse_distribution(sy);
  std::vector<double> rhos;
  if (rhos_csv.empty()) {
    rhos = w1::default_gaussian_rhos();
  } else {
    for (const auto& tok : split_csv(rhos_csv))
      rhos.push_back(w1::detail::parse_number(tok, 0));
  }
  w1::CertificateReport rep = w1::theorem_certificate(x, y, rhos, n, seed);
  json out;
  out["n"] = n;
  out["seed"] = seed;
  out["estimates"] = json::array();
  for (const auto& [c, e] : rep.estimates) {
    json j;
    j["copula"] = c.name();
    j["mean"] = e.mean;
    j["std_error"] = e.std_error;
    out["estimates"].push_back(j);
  }
  out["passed"] = rep.passed;
  out["violations"] = rep.violations;
  std::printf("%s\n", out.dump().c_str());
  return rep.passed ? kExitOk : kExitCertificate;
}

int run_check_copula(const std::string& spec, std::size_t grid) {
  w1::CopulaSpec c = w1::parse_copula(spec);
  w1::AxiomReport rep = w1::verify_copula_axioms(c, grid);
  json out;
  out["copula"] = spec;
  out["grid"] = grid;
  out["grounded"] = rep.grounded;
  out["margins"] = rep.margins;
  out["two_increasing"] = rep.two_increasing;
  out["frechet"] = rep.frechet;
  out["worst_grounded"] = rep.worst_grounded;
  out["worst_margins"] = rep.worst_margins;
  out["worst_two_increasing"] = rep.worst_two_increasing;
  out["worst_frechet"] = rep.worst_frechet;
  out["passed"] = rep.all();
  std::printf("%s\n", out.dump().c_str());
  return rep.all() ? kExitOk : kExitCertificate;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-Wasserstein distances via quantile, CDF-area and copula routes"};
  app.require_subcommand(1);

  // w1
  std::string w1_x, w1_y, w1_method = "auto";
  QuadFlags w1_qf;
  bool w1_csv = false, w1_json = false;
  CLI::App* cmd_w1 = app.add_subcommand("w1", "compute the W1 distance");
  cmd_w1->add_option("dist_x", w1_x, "distribution spec")->required();
  cmd_w1->add_option("dist_y", w1_y, "distribution spec")->required();
  cmd_w1->add_option("--method", w1_method, "auto|quantile|cdf|sorted")
      ->check(CLI::IsMember({"auto", "quantile", "cdf", "sorted"}));
  w1_qf.attach(cmd_w1);
  cmd_w1->add_flag("--csv", w1_csv, "CSV output");
  cmd_w1->add_flag("--json", w1_json, "JSON output (default)");

  // integrand
  std::string ig_x, ig_y, ig_copulas;
  std::size_t ig_grid = 201;
  double ig_lo = 0.0, ig_hi = 0.0;
  bool ig_json = false, ig_csv = false;
  CLI::App* cmd_ig =
      app.add_subcommand("integrand", "emit Vallender integrand curves");
  cmd_ig->add_option("dist_x", ig_x, "distribution spec")->required();
  cmd_ig->add_option("dist_y", ig_y, "distribution spec")->required();
  cmd_ig->add_option("--copulas", ig_copulas,
                     "comma-separated copula specs (default: m, w and the "
                     "standard Gaussian rho family)");
  cmd_ig->add_option("--grid", ig_grid, "number of t-grid nodes");
  CLI::Option* opt_lo = cmd_ig->add_option("--t-lo", ig_lo, "grid lower end");
  CLI::Option* opt_hi = cmd_ig->add_option("--t-hi", ig_hi, "grid upper end");
  cmd_ig->add_flag("--json", ig_json, "JSON output");
  cmd_ig->add_flag("--csv", ig_csv, "CSV output (default)");

  // certify
  std::string ct_x, ct_y, ct_rhos;
  std::size_t ct_n = 100000;
  std::uint64_t ct_seed = 7;
  CLI::App* cmd_ct = app.add_subcommand(
      "certify", "Monte Carlo certificate that the M copula is optimal");
  cmd_ct->add_option("dist_x", ct_x, "distribution spec")->required();
  cmd_ct->add_option("dist_y", ct_y, "distribution spec")->required();
  cmd_ct->add_option("--n", ct_n, "draws per copula");
  cmd_ct->add_option("--seed", ct_seed, "RNG seed");
  cmd_ct->add_option("--rhos", ct_rhos, "comma-separated Gaussian rho values");

  // check-copula
  std::string ck_spec;
  std::size_t ck_grid = 41;
  CLI::App* cmd_ck =
      app.add_subcommand("check-copula", "verify the copula axioms on a grid");
  cmd_ck->add_option("copula", ck_spec, "copula spec")->required();
  cmd_ck->add_option("--grid", ck_grid, "lattice size per axis");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_w1->parsed())
      return run_w1(w1_x, w1_y, w1_method, w1_qf, w1_csv && !w1_json);
    if (cmd_ig->parsed())
      return run_integrand(ig_x, ig_y,
                           ig_copulas.empty() ? std::vector<std::string>{}
                                              : split_csv(ig_copulas),
                           ig_grid, ig_lo, ig_hi, opt_lo->count() > 0,
                           opt_hi->count() > 0, ig_json && !ig_csv);
    if (cmd_ct->parsed()) return run_certify(ct_x, ct_y, ct_n, ct_seed, ct_rhos);
    if (cmd_ck->parsed()) return run_check_copula(ck_spec, ck_grid);
  } catch (const w1::parse_error& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitParse;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitParse;
  } catch (const w1::convergence_error& e) {
    std::fprintf(stderr, "numerical failure: %s (best value %.17g +/- %.3g)\n",
                 e.what(), e.best().value, e.best().error_estimate);
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitOk;
}

// monotone: command-line front end for rearrangement, isotonization,
// confidence-band monotonization, nonparametric fits and the Monte Carlo study.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "monotone/bands.hpp"
#include "monotone/csv.hpp"
#include "monotone/estimators.hpp"
#include "monotone/montecarlo.hpp"
#include "monotone/monotonize.hpp"
#include "monotone/parallel.hpp"

namespace {

using namespace monotone;

constexpr const char* kGridSchema =
    "Grid CSV: header x1,...,xd,value; one row per node in any order; "
    "the nodes must form a complete rectangular grid.";
constexpr const char* kBandSchema = "Band CSV: header x1,...,xd,lower,upper; one row per node.";

struct MonotonizeArgs {
  std::string input;
  std::string out;
  std::string orderings = "all";
  std::optional<double> lambda;
};

struct BandArgs {
  std::string input, lower, upper, out, truth;
  std::string method = "rearrange";
  std::string orderings = "all";
  double lambda = 0.5;
};

struct EstimateArgs {
  std::string data, out, band_out, stderr_out;
  std::string method = "kernel";
  std::string loss = "mean";
  double tau = 0.5;
  std::string taus;
  double bandwidth = 1.0;
  std::string knots;
  int nterms = 4;
  bool no_linear = false;
  std::size_t grid = 100;
  std::size_t bootstrap = 0;
  std::uint64_t seed = 1;
  double alpha = 0.1;
};

struct SimulateArgs {
  std::string config, out;
  int table = 1;
  std::optional<std::uint64_t> seed;
};

void emit_grid(const std::string& path, const GriddedFunction& f) {
  if (path.empty() || path == "-") csv::write_grid(std::cout, f);
  else csv::write_grid(path, f);
}

int run_monotonize(const MonotonizeArgs& a, Method::Kind kind) {
  const auto f = csv::read_grid(a.input);
  const auto orderings = OrderingSet::parse(a.orderings, f.dim());
  Method method = kind == Method::Kind::rearrange ? Method::rearrange() : Method::isotonize();
  if (a.lambda) method = Method::blend(*a.lambda);
  emit_grid(a.out, monotonize(f, method, orderings));
  return 0;
}

void print_lengths(std::ostream& os, const char* label, const Band& b) {
  os << label << " L1=" << csv::format_double(lp_length(b, LpIndex(1.0)))
     << " L2=" << csv::format_double(lp_length(b, LpIndex(2.0)))
     << " Linf=" << csv::format_double(lp_length(b, LpIndex::inf())) << '\n';
}

int run_band(const BandArgs& a) {
  std::optional<Band> band;
  if (!a.input.empty()) {
    band = csv::read_band(a.input);
  } else {
    if (a.lower.empty() || a.upper.empty())
      throw Error(Errc::InvalidSpec, "band needs --input or both --lower and --upper");
    band.emplace(csv::read_grid(a.lower), csv::read_grid(a.upper));
  }
  const auto orderings = OrderingSet::parse(a.orderings, band->lower().dim());
  const Band mono = monotonize_band(*band, Method::parse(a.method, a.lambda), orderings);

  print_lengths(std::cout, "original", *band);
  print_lengths(std::cout, "monotonized", mono);
  if (!a.truth.empty()) {
    const auto truth = csv::read_grid(a.truth);
    std::cout << "covers original=" << (covers(*band, truth) ? "true" : "false")
              << " monotonized=" << (covers(mono, truth) ? "true" : "false") << '\n';
  }
  if (!a.out.empty()) csv::write_band(a.out, mono);
  return 0;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(csv::parse_double(item));
  return out;
}

int run_estimate(const EstimateArgs& a) {
  const auto data = csv::read_dataset(a.data);
  const auto [lo, hi] = std::minmax_element(data.x.begin(), data.x.end());
  EstimatorSpec spec;
  spec.method = parse_method(a.method);
  spec.bandwidth = a.bandwidth;
  spec.knots = parse_list(a.knots);
  spec.n_terms = a.nterms;
  spec.fourier_linear = !a.no_linear;
  spec.eval_axis = Axis::linspace(*lo, *hi, a.grid);
  if (a.loss == "mean") spec.loss = Loss::mean();
  else if (a.loss == "quantile") spec.loss = Loss::quantile(a.tau);
  else throw Error(Errc::InvalidSpec, "--loss must be mean or quantile");

  if (!a.taus.empty()) {
    const auto parts = parse_list([&] {
      std::string s = a.taus;
      std::replace(s.begin(), s.end(), ':', ',');
      return s;
    }());
    if (parts.size() != 3) throw Error(Errc::InvalidSpec, "--taus expects lo:hi:step");
    const auto taus = tau_net(parts[0], parts[1], parts[2]);
    emit_grid(a.out, fit_quantile_process(data, spec, taus));
    return 0;
  }

  const auto result = fit(data, spec);
  emit_grid(a.out, result.estimate);
  if (a.bootstrap > 0) {
    const auto boot = bootstrap(data, spec, a.bootstrap, a.seed);
    const auto crit = critical_value_max_t(result.estimate, boot.draws, boot.std_error, a.alpha);
    std::cerr << "critical value " << csv::format_double(crit.value) << " (" << crit.excluded_nodes
              << " degenerate nodes excluded, " << boot.failures << " failed draws redrawn)\n";
    if (!a.stderr_out.empty()) csv::write_grid(a.stderr_out, boot.std_error);
    if (!a.band_out.empty())
      csv::write_band(a.band_out,
                      assemble_band({result.estimate, boot.std_error, crit.value, a.alpha}));
  }
  return 0;
}

int run_simulate(const SimulateArgs& a) {
  mc::McConfig cfg = mc::McConfig::desk_scale();
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw Error(Errc::IoError, "cannot open '" + a.config + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::ParseError, e.what());
    }
    cfg = mc::config_from_json(j);
  }
  if (a.seed) cfg.seed = *a.seed;
  const auto report = mc::run_experiment(cfg, mc::Tables::only(a.table));

  if (a.out.empty() || a.out == "-") {
    mc::write_report_csv(std::cout, report, a.table);
  } else {
    std::ofstream out(a.out);
    if (!out) throw Error(Errc::IoError, "cannot write '" + a.out + "'");
    mc::write_report_csv(out, report, a.table);
  }
  for (const auto& [name, c] : report.critical_values)
    std::cerr << "critical value " << name << ' ' << csv::format_double(c) << '\n';
  if (!report.violations.empty()) {
    for (const auto& v : report.violations)
      std::cerr << "violation: table " << v.table << ' ' << v.estimator << ' ' << v.what << " rep "
                << v.rep << ": " << v.lhs << " > " << v.rhs << '\n';
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotone rearrangement, isotonization and confidence-band toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: all cores); results do not depend on it");

  MonotonizeArgs rearr, iso;
  auto add_monotonize = [&](const char* name, const char* desc, MonotonizeArgs& a) {
    auto* sub = app.add_subcommand(name, desc);
    sub->add_option("--input", a.input, "Input grid CSV")->required();
    sub->add_option("--out", a.out, "Output grid CSV (default: standard output)");
    sub->add_option("--orderings", a.orderings, "'all' or one-based orderings such as '1,2;2,1'");
    sub->add_option("--lambda", a.lambda,
                    "Blend weight on the rearranged estimate: lambda*R + (1-lambda)*I")
        ->check(CLI::Range(0.0, 1.0));
    sub->footer(kGridSchema);
    return sub;
  };
  auto* rearrange_cmd = add_monotonize("rearrange", "Increasing rearrangement (average over orderings)", rearr);
  auto* isotonize_cmd = add_monotonize("isotonize", "Sequential PAVA isotonization (average over orderings)", iso);

  BandArgs band;
  auto* band_cmd = app.add_subcommand("band", "Monotonize both end-points of a confidence band");
  band_cmd->add_option("--input", band.input, "Band CSV");
  band_cmd->add_option("--lower", band.lower, "Lower end-point grid CSV");
  band_cmd->add_option("--upper", band.upper, "Upper end-point grid CSV");
  band_cmd->add_option("--method", band.method, "rearrange | isotonize | blend")
      ->check(CLI::IsMember({"rearrange", "isotonize", "blend"}));
  band_cmd->add_option("--lambda", band.lambda, "Blend weight on the rearranged band")->check(CLI::Range(0.0, 1.0));
  band_cmd->add_option("--orderings", band.orderings, "'all' or one-based orderings such as '1,2;2,1'");
  band_cmd->add_option("--truth", band.truth, "Grid CSV of a function to check coverage against");
  band_cmd->add_option("--out", band.out, "Output band CSV");
  band_cmd->footer(std::string(kBandSchema) + " " + kGridSchema +
                   " L^p lengths before and after are printed on standard output.");

  EstimateArgs est;
  auto* est_cmd = app.add_subcommand("estimate", "Nonparametric mean or quantile fit on an equidistant grid");
  est_cmd->add_option("--data", est.data, "Dataset CSV with header x,y")->required();
  est_cmd->add_option("--method", est.method, "kernel | loclinear | bspline | fourier")
      ->check(CLI::IsMember({"kernel", "loclinear", "bspline", "fourier"}));
  est_cmd->add_option("--loss", est.loss, "mean | quantile")->check(CLI::IsMember({"mean", "quantile"}));
  est_cmd->add_option("--tau", est.tau, "Quantile index for --loss quantile");
  est_cmd->add_option("--taus", est.taus, "Quantile process net lo:hi:step (writes a tau x x grid)");
  est_cmd->add_option("--bandwidth", est.bandwidth, "Box kernel half-width in x units");
  est_cmd->add_option("--knots", est.knots, "Interior cubic B-spline knots a,b,c,...");
  est_cmd->add_option("--nterms", est.nterms, "Fourier sine/cosine pairs");
  est_cmd->add_flag("--no-linear", est.no_linear, "Drop the linear trend column from the Fourier basis");
  est_cmd->add_option("--grid", est.grid, "Number of equidistant evaluation nodes over the data range");
  est_cmd->add_option("--bootstrap", est.bootstrap, "Pairs bootstrap draws for standard errors and a max-t band");
  est_cmd->add_option("--seed", est.seed, "Bootstrap seed");
  est_cmd->add_option("--alpha", est.alpha, "Band level is 1 - alpha")->check(CLI::Range(0.0, 1.0));
  est_cmd->add_option("--out", est.out, "Estimate grid CSV (default: standard output)");
  est_cmd->add_option("--band-out", est.band_out, "Band CSV from the bootstrap max-t critical value");
  est_cmd->add_option("--stderr-out", est.stderr_out, "Bootstrap standard-error grid CSV");
  est_cmd->footer(std::string("Dataset CSV: header x,y. ") + kGridSchema + " " + kBandSchema);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo study of the growth-chart location model");
  sim_cmd->add_option("--config", sim.config, "JSON configuration (fields of McConfig; defaults are desk scale)");
  sim_cmd->add_option("--table", sim.table, "1: mean errors, 2: quantile-process errors, 3: bands")
      ->required()
      ->check(CLI::Range(1, 3));
  sim_cmd->add_option("--seed", sim.seed, "Override the configuration seed");
  sim_cmd->add_option("--out", sim.out, "Report CSV (default: standard output)");
  sim_cmd->footer(
      "Report CSV, tables 1-2: estimator,p,Lp_O,R/O,I/O,B<lambda>/O. "
      "Table 3: estimator,interval,cover,L1,L1/L1_O,L2/L2_O,Linf/Linf_O.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help("", CLI::AppFormatMode::Normal);
    return 1;
  }
  set_threads(threads);

  try {
    if (*rearrange_cmd) return run_monotonize(rearr, Method::Kind::rearrange);
    if (*isotonize_cmd) return run_monotonize(iso, Method::Kind::isotonize);
    if (*band_cmd) return run_band(band);
    if (*est_cmd) return run_estimate(est);
    if (*sim_cmd) return run_simulate(sim);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.numerical() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

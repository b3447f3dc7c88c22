#include "monotone/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>

#include <boost/math/distributions/normal.hpp>

#include "monotone/bands.hpp"
#include "monotone/csv.hpp"
#include "monotone/random.hpp"

namespace monotone::mc {

namespace {

constexpr double kDesignLo = 2.0;
constexpr double kDesignHi = 20.0;

// Monotonized error may exceed the original by rounding only.
constexpr double kRelativeSlack = 1e-10;
constexpr double kAbsoluteSlack = 1e-12;

bool not_worse(double monotonized, double original) {
  return monotonized <= original * (1.0 + kRelativeSlack) + kAbsoluteSlack;
}

const std::array<LpIndex, 3> kNorms{LpIndex(1.0), LpIndex(2.0), LpIndex::inf()};
const std::array<const char*, 3> kNormNames{"1", "2", "inf"};

EstimatorSpec default_estimator(EstimatorMethod m) {
  EstimatorSpec s;
  s.method = m;
  switch (m) {
    case EstimatorMethod::kernel:
    case EstimatorMethod::loclinear: s.bandwidth = 1.0; break;  // one year, box kernel
    case EstimatorMethod::bspline: s.knots = {3, 5, 8, 10, 11.5, 13, 14.5, 16, 18}; break;
    case EstimatorMethod::fourier:
      s.n_terms = 4;
      s.fourier_linear = false;
      break;
  }
  return s;
}

double safe_ratio(double num, double den) { return den == 0.0 ? 1.0 : num / den; }

}  // namespace

McConfig McConfig::desk_scale() {
  McConfig c;
  for (auto m : {EstimatorMethod::kernel, EstimatorMethod::loclinear, EstimatorMethod::bspline,
                 EstimatorMethod::fourier})
    c.estimators.push_back(default_estimator(m));
  c.taus = tau_net(0.05, 0.95, 0.05);
  c.finalize();
  return c;
}

void McConfig::finalize() {
  if (x_design.empty()) {
    if (n < 2) throw Error(Errc::InvalidConfig, "n must be at least 2");
    x_design = Axis::linspace(kDesignLo, kDesignHi, n).coords();
  }
  n = x_design.size();
  for (double x : x_design)
    if (!(x >= kDesignLo && x <= kDesignHi))
      throw Error(Errc::InvalidConfig, "x_design values must lie in [2, 20]");
  if (reps < 1) throw Error(Errc::InvalidConfig, "reps must be >= 1");
  if (!(sigma > 0.0)) throw Error(Errc::InvalidConfig, "sigma must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::InvalidConfig, "alpha must lie in (0, 1)");
  if (bootstrap_B < 2) throw Error(Errc::InvalidConfig, "bootstrap_B must be >= 2");
  if (eval_nodes < 2) throw Error(Errc::InvalidConfig, "eval_nodes must be >= 2");
  for (double l : lambda_grid)
    if (!(l >= 0.0 && l <= 1.0)) throw Error(Errc::InvalidConfig, "lambda_grid values must lie in [0, 1]");
  if (estimators.empty())
    for (auto m : {EstimatorMethod::kernel, EstimatorMethod::loclinear, EstimatorMethod::bspline,
                   EstimatorMethod::fourier})
      estimators.push_back(default_estimator(m));
  if (taus.empty()) taus = tau_net(0.05, 0.95, 0.05);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0.0 && taus[i] < 1.0)) throw Error(Errc::InvalidConfig, "taus must lie in (0, 1)");
    if (i > 0 && !(taus[i] > taus[i - 1])) throw Error(Errc::InvalidConfig, "taus must increase");
  }
  if (taus.size() > 1 && !Axis(taus).equidistant())
    throw Error(Errc::InvalidConfig, "taus must be equidistant for rearrangement");
}

Axis McConfig::eval_axis() const {
  const auto [lo, hi] = std::minmax_element(x_design.begin(), x_design.end());
  return Axis::linspace(*lo, *hi, eval_nodes);
}

std::vector<Method> McConfig::methods() const {
  std::vector<Method> m{Method::rearrange(), Method::isotonize()};
  for (double l : lambda_grid) m.push_back(Method::blend(l));
  return m;
}

McConfig config_from_json(const nlohmann::json& j) {
  McConfig c;
  try {
    if (j.contains("beta")) {
      const auto b = j.at("beta").get<std::vector<double>>();
      if (b.size() != 5) throw Error(Errc::InvalidConfig, "beta must have 5 entries");
      std::copy(b.begin(), b.end(), c.beta.begin());
    }
    c.sigma = j.value("sigma", c.sigma);
    c.n = j.value("n", c.n);
    c.x_design = j.value("x_design", c.x_design);
    c.reps = j.value("reps", c.reps);
    c.seed = j.value("seed", c.seed);
    c.taus = j.value("taus", c.taus);
    c.alpha = j.value("alpha", c.alpha);
    c.bootstrap_B = j.value("bootstrap_B", c.bootstrap_B);
    c.lambda_grid = j.value("lambda_grid", c.lambda_grid);
    c.eval_nodes = j.value("eval_nodes", c.eval_nodes);
    if (j.contains("estimators")) {
      for (const auto& e : j.at("estimators")) {
        auto s = default_estimator(parse_method(e.at("method").get<std::string>()));
        s.bandwidth = e.value("bandwidth", s.bandwidth);
        s.knots = e.value("knots", s.knots);
        s.n_terms = e.value("n_terms", s.n_terms);
        s.fourier_linear = e.value("fourier_linear", s.fourier_linear);
        c.estimators.push_back(std::move(s));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidConfig, e.what());
  }
  c.finalize();
  return c;
}

nlohmann::json config_to_json(const McConfig& c) {
  nlohmann::json j;
  j["beta"] = std::vector<double>(c.beta.begin(), c.beta.end());
  j["sigma"] = c.sigma;
  j["n"] = c.n;
  j["x_design"] = c.x_design;
  j["reps"] = c.reps;
  j["seed"] = c.seed;
  j["taus"] = c.taus;
  j["alpha"] = c.alpha;
  j["bootstrap_B"] = c.bootstrap_B;
  j["lambda_grid"] = c.lambda_grid;
  j["eval_nodes"] = c.eval_nodes;
  auto& est = j["estimators"] = nlohmann::json::array();
  for (const auto& s : c.estimators) {
    nlohmann::json e{{"method", std::string(to_string(s.method))}};
    if (s.method == EstimatorMethod::kernel || s.method == EstimatorMethod::loclinear)
      e["bandwidth"] = s.bandwidth;
    if (s.method == EstimatorMethod::bspline) e["knots"] = s.knots;
    if (s.method == EstimatorMethod::fourier) {
      e["n_terms"] = s.n_terms;
      e["fourier_linear"] = s.fourier_linear;
    }
    est.push_back(std::move(e));
  }
  return j;
}

std::array<double, 5> design_vector(double x) noexcept {
  return {1.0, x, x > 5.0 ? x - 5.0 : 0.0, x > 10.0 ? x - 10.0 : 0.0, x > 15.0 ? x - 15.0 : 0.0};
}

double true_cef(double x, const Beta& beta) noexcept {
  const auto z = design_vector(x);
  double acc = 0.0;
  for (std::size_t k = 0; k < 5; ++k) acc += z[k] * beta[k];
  return acc;
}

double true_cqf(double u, double x, const Beta& beta, double sigma) {
  if (!(u > 0.0 && u < 1.0)) throw Error(Errc::OutOfRange, "quantile index must lie in (0, 1)");
  const boost::math::normal_distribution<double> standard;
  return true_cef(x, beta) + sigma * boost::math::quantile(standard, u);
}

Dataset simulate_rep(const McConfig& cfg, std::size_t rep_index) {
  Rng rng(derive_seed(cfg.seed, {static_cast<std::uint64_t>(rep_index)}));
  std::normal_distribution<double> z(0.0, 1.0);
  Dataset d;
  d.x = cfg.x_design;
  d.y.reserve(d.x.size());
  for (double x : d.x) d.y.push_back(true_cef(x, cfg.beta) + cfg.sigma * z(rng));
  return d;
}

Tables Tables::only(int table) {
  Tables t{false, false, false};
  switch (table) {
    case 1: t.cef_errors = true; break;
    case 2: t.process_errors = true; break;
    case 3: t.bands = true; break;
    default: throw Error(Errc::InvalidConfig, "table must be 1, 2 or 3");
  }
  return t;
}

namespace {

// errors[p][0] is the original, errors[p][1 + m] method m.
using ErrorGrid = std::array<std::vector<double>, 3>;

struct EstimatorRep {
  ErrorGrid cef;
  ErrorGrid process;
  std::vector<double> center;
  std::vector<double> std_error;
  double t_stat = 0.0;
  ErrorGrid band_length;
  std::vector<bool> band_covers;
};

struct RepOutcome {
  std::vector<EstimatorRep> est;
  std::vector<Violation> violations;
  std::optional<Error> error;
};

ErrorGrid score(const GriddedFunction& raw, const GriddedFunction& truth,
                const std::vector<GriddedFunction>& monotonized) {
  ErrorGrid e;
  for (std::size_t p = 0; p < 3; ++p) {
    e[p].push_back(lp_distance(raw, truth, kNorms[p]));
    for (const auto& m : monotonized) e[p].push_back(lp_distance(m, truth, kNorms[p]));
  }
  return e;
}

void check_errors(const ErrorGrid& e, const std::vector<std::string>& labels, const char* table,
                  const std::string& estimator, std::size_t rep, std::vector<Violation>& out) {
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t m = 0; m < labels.size(); ++m)
      if (!not_worse(e[p][m + 1], e[p][0]))
        out.push_back({table, estimator, labels[m] + " L" + kNormNames[p] + " error", rep,
                       e[p][m + 1], e[p][0]});
}

struct Context {
  const McConfig& cfg;
  Tables tables;
  Axis eval;
  std::vector<Method> methods;
  std::vector<std::string> labels;
  GriddedFunction cef_truth;
  std::optional<GriddedFunction> process_truth;
  OrderingSet one_d = OrderingSet::all(1);
  OrderingSet two_d = OrderingSet::all(2);
};

void first_pass(const Context& ctx, std::size_t rep, RepOutcome& out) {
  const auto& cfg = ctx.cfg;
  const auto data = simulate_rep(cfg, rep);
  out.est.resize(cfg.estimators.size());
  for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
    auto spec = cfg.estimators[e];
    spec.eval_axis = ctx.eval;
    spec.loss = Loss::mean();
    const std::string name(to_string(spec.method));
    auto& r = out.est[e];

    if (ctx.tables.cef_errors || ctx.tables.bands) {
      const auto raw = fit(data, spec).estimate;
      if (ctx.tables.cef_errors) {
        std::vector<GriddedFunction> mono;
        for (const auto& m : ctx.methods) mono.push_back(monotonize(raw, m, ctx.one_d, Execution::serial));
        r.cef = score(raw, ctx.cef_truth, mono);
        check_errors(r.cef, ctx.labels, "1", name, rep, out.violations);
      }
      if (ctx.tables.bands) {
        const auto boot = bootstrap(data, spec, cfg.bootstrap_B,
                                    derive_seed(cfg.seed, {rep, e, 0xB00757A9ULL}), Execution::serial);
        r.center = raw.values();
        r.std_error = boot.std_error.values();
        r.t_stat = max_t_statistic(raw, ctx.cef_truth, boot.std_error);
      }
    }

    if (ctx.tables.process_errors) {
      const auto raw = fit_quantile_process(data, spec, cfg.taus, Execution::serial);
      const auto& truth = *ctx.process_truth;
      std::vector<GriddedFunction> mono;
      for (const auto& m : ctx.methods) mono.push_back(monotonize(raw, m, ctx.two_d, Execution::serial));
      r.process = score(raw, truth, mono);
      check_errors(r.process, ctx.labels, "2", name, rep, out.violations);

      // Each pi-rearrangement improves on the raw fit, and their average
      // improves on the mean of their errors.
      for (std::size_t p = 0; p < 3; ++p) {
        double mean_pi = 0.0;
        for (const auto& pi : ctx.two_d.orderings()) {
          const double err = lp_distance(rearrange_pi(raw, pi, Execution::serial), truth, kNorms[p]);
          if (!not_worse(err, r.process[p][0]))
            out.violations.push_back({"2", name, "pi-rearranged L" + std::string(kNormNames[p]) + " error",
                                      rep, err, r.process[p][0]});
          mean_pi += err;
        }
        mean_pi /= static_cast<double>(ctx.two_d.size());
        if (!not_worse(r.process[p][1], mean_pi))
          out.violations.push_back({"2", name, "average rearrangement vs mean pi error L" +
                                                   std::string(kNormNames[p]),
                                    rep, r.process[p][1], mean_pi});
      }
    }
  }
}

void band_pass(const Context& ctx, std::size_t rep, const std::vector<double>& critical,
               RepOutcome& out) {
  for (std::size_t e = 0; e < ctx.cfg.estimators.size(); ++e) {
    auto& r = out.est[e];
    const std::string name(to_string(ctx.cfg.estimators[e].method));
    const GriddedFunction center({ctx.eval}, r.center);
    const GriddedFunction se({ctx.eval}, r.std_error);
    const Band original = assemble_band({center, se, critical[e], ctx.cfg.alpha});

    std::vector<Band> bands{original};
    for (const auto& m : ctx.methods)
      bands.push_back(monotonize_band(original, m, ctx.one_d, Execution::serial));
    for (std::size_t p = 0; p < 3; ++p)
      for (const auto& b : bands) r.band_length[p].push_back(lp_length(b, kNorms[p]));
    for (const auto& b : bands) r.band_covers.push_back(covers(b, ctx.cef_truth));

    for (std::size_t m = 0; m < ctx.methods.size(); ++m) {
      for (std::size_t p = 0; p < 3; ++p)
        if (!not_worse(r.band_length[p][m + 1], r.band_length[p][0]))
          out.violations.push_back({"3", name, ctx.labels[m] + " L" + kNormNames[p] + " length", rep,
                                    r.band_length[p][m + 1], r.band_length[p][0]});
      if (r.band_covers[0] && !r.band_covers[m + 1])
        out.violations.push_back({"3", name, ctx.labels[m] + " coverage", rep, 0.0, 1.0});
    }
  }
}

template <class Fn>
void for_each_rep(std::size_t reps, Execution exec, std::vector<RepOutcome>& outcomes, Fn&& fn) {
  const auto count = static_cast<long long>(reps);
  auto guarded = [&](long long k) {
    auto& out = outcomes[static_cast<std::size_t>(k)];
    if (out.error) return;
    try {
      fn(static_cast<std::size_t>(k), out);
    } catch (const Error& e) {
      out.error = e;
    }
  };
  if (exec == Execution::serial) {
    for (long long k = 0; k < count; ++k) guarded(k);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (long long k = 0; k < count; ++k) guarded(k);
  }
  for (std::size_t k = 0; k < reps; ++k)
    if (outcomes[k].error)
      throw Error(outcomes[k].error->code(),
                  "replication " + std::to_string(k) + ": " + outcomes[k].error->what());
}

std::vector<ErrorRow> summarize_errors(const std::vector<RepOutcome>& outcomes, const Context& ctx,
                                       ErrorGrid EstimatorRep::*field) {
  std::vector<ErrorRow> rows;
  const double reps = static_cast<double>(outcomes.size());
  for (std::size_t e = 0; e < ctx.cfg.estimators.size(); ++e) {
    for (std::size_t p = 0; p < 3; ++p) {
      std::vector<double> avg(ctx.methods.size() + 1, 0.0);
      for (const auto& o : outcomes)
        for (std::size_t k = 0; k < avg.size(); ++k) avg[k] += (o.est[e].*field)[p][k];
      for (double& v : avg) v /= reps;
      ErrorRow row{std::string(to_string(ctx.cfg.estimators[e].method)), kNormNames[p], avg[0], {}};
      for (std::size_t k = 1; k < avg.size(); ++k) row.ratios.push_back(safe_ratio(avg[k], avg[0]));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace

McReport run_experiment(const McConfig& input, Tables tables, Execution exec) {
  McConfig cfg = input;
  cfg.finalize();

  const Axis eval = cfg.eval_axis();
  std::vector<double> cef_values;
  for (double x : eval.coords()) cef_values.push_back(true_cef(x, cfg.beta));
  Context ctx{cfg, tables, eval, cfg.methods(), {}, GriddedFunction({eval}, cef_values), std::nullopt};
  for (const auto& m : ctx.methods) ctx.labels.push_back(m.label());
  if (tables.process_errors) {
    std::vector<double> q;
    for (double u : cfg.taus)
      for (double x : eval.coords()) q.push_back(true_cqf(u, x, cfg.beta, cfg.sigma));
    ctx.process_truth = GriddedFunction({Axis(cfg.taus), eval}, std::move(q));
  }

  std::vector<RepOutcome> outcomes(cfg.reps);
  for_each_rep(cfg.reps, exec, outcomes,
               [&](std::size_t rep, RepOutcome& out) { first_pass(ctx, rep, out); });

  McReport report;
  report.reps = cfg.reps;
  report.method_labels = ctx.labels;
  if (tables.cef_errors) report.cef = summarize_errors(outcomes, ctx, &EstimatorRep::cef);
  if (tables.process_errors) report.process = summarize_errors(outcomes, ctx, &EstimatorRep::process);

  if (tables.bands) {
    // Calibrate so the original bands cover the true function in a
    // (1 - alpha) fraction of replications.
    std::vector<double> critical;
    for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
      std::vector<double> stats;
      for (const auto& o : outcomes) stats.push_back(o.est[e].t_stat);
      critical.push_back(upper_order_statistic(std::move(stats), cfg.alpha));
      report.critical_values.emplace_back(std::string(to_string(cfg.estimators[e].method)), critical.back());
    }
    for_each_rep(cfg.reps, exec, outcomes,
                 [&](std::size_t rep, RepOutcome& out) { band_pass(ctx, rep, critical, out); });

    const double reps = static_cast<double>(cfg.reps);
    for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
      const std::size_t n_intervals = ctx.methods.size() + 1;
      std::vector<BandRow> rows(n_intervals);
      for (std::size_t k = 0; k < n_intervals; ++k) {
        auto& row = rows[k];
        row.estimator = std::string(to_string(cfg.estimators[e].method));
        row.interval = k == 0 ? "O" : ctx.labels[k - 1];
        std::size_t covered = 0;
        for (const auto& o : outcomes) covered += o.est[e].band_covers[k] ? 1 : 0;
        row.coverage = static_cast<double>(covered) / reps;
        for (std::size_t p = 0; p < 3; ++p) {
          double acc = 0.0;
          for (const auto& o : outcomes) acc += o.est[e].band_length[p][k];
          row.length[p] = acc / reps;
        }
      }
      for (auto& row : rows)
        for (std::size_t p = 0; p < 3; ++p) row.ratio[p] = safe_ratio(row.length[p], rows[0].length[p]);
      report.bands.insert(report.bands.end(), rows.begin(), rows.end());
    }
  }

  for (const auto& o : outcomes)
    report.violations.insert(report.violations.end(), o.violations.begin(), o.violations.end());
  return report;
}

void write_report_csv(std::ostream& out, const McReport& report, int table) {
  using csv::format_double;
  if (table == 1 || table == 2) {
    out << "estimator,p,Lp_O";
    for (const auto& l : report.method_labels) out << ',' << l << "/O";
    out << '\n';
    for (const auto& row : table == 1 ? report.cef : report.process) {
      out << row.estimator << ',' << row.p << ',' << format_double(row.original);
      for (double r : row.ratios) out << ',' << format_double(r);
      out << '\n';
    }
    return;
  }
  if (table == 3) {
    out << "estimator,interval,cover,L1,L1/L1_O,L2/L2_O,Linf/Linf_O\n";
    for (const auto& row : report.bands)
      out << row.estimator << ',' << row.interval << ',' << format_double(row.coverage) << ','
          << format_double(row.length[0]) << ',' << format_double(row.ratio[0]) << ','
          << format_double(row.ratio[1]) << ',' << format_double(row.ratio[2]) << '\n';
    return;
  }
  throw Error(Errc::InvalidConfig, "table must be 1, 2 or 3");
}

}  // namespace monotone::mc

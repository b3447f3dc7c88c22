// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "monotone/bands.hpp"
#include "monotone/csv.hpp"
#include "monotone/estimators.hpp"
#include "monotone/isotonic.hpp"
#include "monotone/montecarlo.hpp"
#include "monotone/rearrangement.hpp"
#include "support.hpp"

using namespace monotone;
using namespace monotone::testing;
namespace fs = std::filesystem;

namespace {

constexpr double kRel = 1e-10;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (notes.size() < 12) notes.push_back(what);
    }
  }
};

bool not_above(double a, double b) { return a <= b * (1.0 + kRel) + 1e-12; }

std::string num(double v) { return csv::format_double(v); }

const std::vector<std::string> kEstimators{"kernel", "loclinear", "bspline", "fourier"};

double ratio_of(const std::vector<mc::ErrorRow>& rows, const std::string& est, const std::string& p,
                std::size_t m) {
  for (const auto& r : rows)
    if (r.estimator == est && r.p == p) return r.ratios.at(m);
  return NAN;
}

Outcome criterion_error_law(const mc::McReport& r, double seconds) {
  Outcome o;
  for (const auto& v : r.violations)
    if (v.table == "1")
      o.require(false, v.estimator + " " + v.what + " rep " + std::to_string(v.rep) + ": " + num(v.lhs) +
                           " > " + num(v.rhs));
  o.require(r.reps >= 100, "fewer than 100 replications");
  o.require(r.cef.size() == kEstimators.size() * 3, "missing table rows");
  for (const auto& row : r.cef)
    for (double q : row.ratios) o.require(not_above(q, 1.0), row.estimator + " ratio " + num(q) + " above 1");
  o.require(seconds < 600.0, "runtime " + num(seconds) + " s");
  return o;
}

Outcome criterion_table1_pattern(const mc::McReport& r) {
  Outcome o;
  for (std::size_t m = 0; m < r.method_labels.size(); ++m) {
    for (const std::string p : {"1", "2", "inf"}) {
      const double f = ratio_of(r.cef, "fourier", p, m);
      for (const auto& e : kEstimators)
        if (e != "fourier")
          o.require(f < ratio_of(r.cef, e, p, m),
                    "fourier " + r.method_labels[m] + " L" + p + " ratio " + num(f) + " not below " + e);
      for (const std::string e : {"kernel", "loclinear"}) {
        const double q = ratio_of(r.cef, e, p, m);
        o.require(q > 0.85 && not_above(q, 1.0), e + " " + r.method_labels[m] + " L" + p + " ratio " + num(q));
      }
    }
    const double finf = ratio_of(r.cef, "fourier", "inf", m);
    o.require(finf < 0.6, "fourier " + r.method_labels[m] + " Linf ratio " + num(finf));
  }
  return o;
}

Outcome criterion_process(const mc::McReport& r) {
  Outcome o;
  for (const auto& v : r.violations)
    if (v.table == "2")
      o.require(false, v.estimator + " " + v.what + " rep " + std::to_string(v.rep) + ": " + num(v.lhs) +
                           " > " + num(v.rhs));
  o.require(r.process.size() == kEstimators.size() * 3, "missing table rows");
  for (const auto& row : r.process)
    o.require(not_above(row.ratios.at(0), 1.0), row.estimator + " average rearrangement ratio " + num(row.ratios[0]));
  return o;
}

Outcome criterion_bands(const mc::McReport& r, double alpha) {
  Outcome o;
  for (const auto& v : r.violations)
    if (v.table == "3")
      o.require(false, v.estimator + " " + v.what + " rep " + std::to_string(v.rep));
  const double slack = 1.0 / static_cast<double>(r.reps) + 1e-12;
  for (const auto& row : r.bands) {
    const std::string tag = row.estimator + " " + row.interval;
    if (row.interval == "O") {
      o.require(std::abs(row.coverage - (1.0 - alpha)) <= slack, tag + " coverage " + num(row.coverage));
      continue;
    }
    o.require(row.coverage >= 1.0 - alpha - 1e-12, tag + " coverage " + num(row.coverage));
    for (double q : row.ratio) o.require(not_above(q, 1.0), tag + " length ratio " + num(q));
    if (row.estimator == "fourier") o.require(row.ratio[2] < 0.9, tag + " Linf length ratio " + num(row.ratio[2]));
  }
  o.require(r.bands.size() == kEstimators.size() * (1 + r.method_labels.size()), "missing table rows");
  return o;
}

Outcome criterion_oracles() {
  Outcome o;
  Rng rng(20240501);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = uniform_size(rng, 1, 50);
    const auto v = trial % 2 ? integer_values(rng, n) : uniform_values(rng, n);
    const auto s = rearrange_1d(v);
    for (std::size_t i = 0; i < n; ++i)
      o.require(s[i] == rearrange_quantile_oracle(v, static_cast<double>(i + 1) / static_cast<double>(n)),
                "rearrangement oracle mismatch in case " + std::to_string(trial));
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = uniform_size(rng, 1, 40);
    WeightedSeq s{trial % 2 ? integer_values(rng, n) : uniform_values(rng, n), uniform_values(rng, n, 0.1, 3.0)};
    const auto fit = pava(s);
    for (std::size_t i = 0; i < n; ++i) {
      const double want = isotonic_maxmin_oracle(s, i);
      o.require(std::abs(fit[i] - want) <= 1e-10 * std::max(1.0, std::abs(want)),
                "max-min oracle mismatch in case " + std::to_string(trial));
    }
  }
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = uniform_size(rng, 1, 5);
    WeightedSeq s{uniform_values(rng, n, 0.0, 1.0), uniform_values(rng, n, 0.2, 2.0)};
    const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
    std::vector<double> lattice;
    for (double v = *lo; v <= *hi + 1e-12; v += 0.05) lattice.push_back(v);
    auto loss = [&](const std::vector<double>& c) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += s.weights[i] * (s.values[i] - c[i]) * (s.values[i] - c[i]);
      return acc;
    };
    const double best = loss(pava(s));
    std::vector<double> cand(n);
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t pos, std::size_t from) {
      if (pos == n) {
        o.require(best <= loss(cand) + 1e-12, "lattice candidate beats pava in case " + std::to_string(trial));
        return;
      }
      for (std::size_t k = from; k < lattice.size(); ++k) {
        cand[pos] = lattice[k];
        walk(pos + 1, k);
      }
    };
    walk(0, 0);
  }
  for (int trial = 0; trial < 50; ++trial) {
    Dataset d;
    std::normal_distribution<double> z(0.0, 2.0);
    const auto n = uniform_size(rng, 20, 200);
    for (std::size_t i = 0; i < n; ++i) {
      d.x.push_back(std::uniform_real_distribution<double>(0.0, 10.0)(rng));
      d.y.push_back(d.x.back() + z(rng));
    }
    EstimatorSpec spec;
    spec.eval_axis = Axis::linspace(0.5, 9.5, 19);
    const double tau = std::uniform_real_distribution<double>(0.02, 0.98)(rng);
    spec.loss = Loss::quantile(tau);
    const auto est = fit(d, spec).estimate;
    for (std::size_t j = 0; j < est.size(); ++j) {
      std::vector<double> in;
      for (std::size_t i = 0; i < n; ++i)
        if (std::abs(d.x[i] - spec.eval_axis.coords()[j]) <= 1.0) in.push_back(d.y[i]);
      std::sort(in.begin(), in.end());
      const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(tau * static_cast<double>(in.size()))));
      o.require(est[j] == in[k - 1], "kernel quantile differs from the order statistic");
    }
  }
  return o;
}

Outcome criterion_fixtures() {
  Outcome o;
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9; };
  auto same = [&](const GriddedFunction& f, std::vector<double> want) {
    if (f.size() != want.size()) return false;
    for (std::size_t i = 0; i < want.size(); ++i)
      if (!close(f[i], want[i])) return false;
    return true;
  };
  const auto f = square({1, 3, 2, 0}, 2, 2);
  o.require(same(rearrange_pi(f, Ordering::parse("1,2")), {0, 2, 1, 3}), "pi = (1,2) fixture");
  o.require(same(rearrange_pi(f, Ordering::parse("2,1")), {0, 1, 2, 3}), "pi = (2,1) fixture");

  const Band b(line({1, 0}), line({2, 3}));
  const auto rb = monotonize_band(b, Method::rearrange(), OrderingSet::all(1));
  o.require(close(lp_length(b, LpIndex(2)), std::sqrt(5.0)), "original L2 length");
  o.require(close(lp_length(rb, LpIndex(2)), 2.0), "rearranged L2 length");
  const auto truth = line({0.5, 2.5});
  o.require(!covers(b, truth) && covers(rb, truth), "coverage false -> true");

  o.require(close(eta_p({0.0, 1.0}, 0.5, 2.0, 21), 0.5), "eta_2 = 0.5");
  o.require(close(mc::true_cef(2.0, mc::kGrowthChartBeta), 87.51), "CEF at 2");
  o.require(close(mc::true_cef(20.0, mc::kGrowthChartBeta), 178.70), "CEF at 20");
  return o;
}

int run_cli(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string("\"") + MONOTONE_CLI + "\" " + args + " --out \"" + out.string() +
                          "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion_determinism(const mc::McReport& in_process) {
  Outcome o;
  const fs::path dir = fs::path(MONOTONE_TEST_WORKDIR) / "acceptance_work";
  fs::create_directories(dir);
  std::ofstream(dir / "desk.json") << mc::config_to_json(mc::McConfig::desk_scale()).dump(2);
  for (int table = 1; table <= 3; ++table) {
    const std::string t = std::to_string(table);
    const std::string base = "simulate --config \"" + (dir / "desk.json").string() + "\" --table " + t;
    const auto one = dir / ("table" + t + "_threads1.csv");
    const auto many = dir / ("table" + t + "_threads4.csv");
    o.require(run_cli("--threads 1 " + base, one) == 0, "simulate table " + t + " exit code (1 thread)");
    o.require(run_cli("--threads 4 " + base, many) == 0, "simulate table " + t + " exit code (4 threads)");
    const auto a = slurp(one);
    o.require(!a.empty() && a == slurp(many), "table " + t + " differs across thread counts");
    std::ostringstream mine;
    mc::write_report_csv(mine, in_process, table);
    o.require(a == mine.str(), "table " + t + " differs from the in-process run");
  }
  return o;
}

void print(int id, const std::string& title, const Outcome& o, bool& all) {
  std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << '\n';
  for (const auto& n : o.notes) std::cout << "        " << n << '\n';
  all = all && o.pass;
}

}  // namespace

int main() {
  const auto cfg = mc::McConfig::desk_scale();
  const auto start = std::chrono::steady_clock::now();
  const auto report = mc::run_experiment(cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "desk-scale experiment: " << report.reps << " replications, n = " << cfg.n << ", "
            << num(std::round(seconds * 10) / 10) << " s\n";

  bool all = true;
  print(1, "per-replication error reduction", criterion_error_law(report, seconds), all);
  print(2, "table 1 ratio pattern", criterion_table1_pattern(report), all);
  print(3, "quantile process improvement", criterion_process(report), all);
  print(4, "band coverage and length", criterion_bands(report, cfg.alpha), all);
  print(5, "oracle equivalences", criterion_oracles(), all);
  print(6, "hand-computed fixtures", criterion_fixtures(), all);
  print(7, "simulate determinism across thread counts", criterion_determinism(report), all);
  return all ? 0 : 1;
}

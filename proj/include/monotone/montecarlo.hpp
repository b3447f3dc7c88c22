#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "monotone/estimators.hpp"
#include "monotone/monotonize.hpp"
#include "monotone/parallel.hpp"

namespace monotone::mc {

using Beta = std::array<double, 5>;

// Height-for-age location model: slopes change at ages 5, 10 and 15.
inline constexpr Beta kGrowthChartBeta{71.25, 8.13, -2.72, 1.78, -6.43};

struct McConfig {
  Beta beta = kGrowthChartBeta;
  double sigma = 4.0;                 // disturbance s.d. (cm)
  std::size_t n = 533;                // sample size, used when x_design is empty
  std::vector<double> x_design;       // fixed ages in years; empty -> n equidistant on [2, 20]
  std::size_t reps = 100;
  std::uint64_t seed = 20080601;
  std::vector<EstimatorSpec> estimators;  // loss and eval_axis are set per table
  std::vector<double> taus;               // quantile net for the process table
  double alpha = 0.1;
  std::size_t bootstrap_B = 100;
  std::vector<double> lambda_grid{0.5};
  std::size_t eval_nodes = 100;

  /// Desk-scale defaults with the four estimators of the growth-chart study.
  static McConfig desk_scale();
  /// Fills x_design and validates; throws InvalidConfig.
  void finalize();
  Axis eval_axis() const;
  std::vector<Method> methods() const;
};

McConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const McConfig& cfg);

std::array<double, 5> design_vector(double x) noexcept;
double true_cef(double x, const Beta& beta) noexcept;
double true_cqf(double u, double x, const Beta& beta, double sigma);

/// y_i = true_cef(x_i) + sigma * z_i, z drawn from the (seed, rep) stream.
Dataset simulate_rep(const McConfig& cfg, std::size_t rep_index);

struct Tables {
  bool cef_errors = true;      // table 1
  bool process_errors = true;  // table 2
  bool bands = true;           // table 3
  static Tables only(int table);
};

struct ErrorRow {
  std::string estimator;
  std::string p;                // "1", "2", "inf"
  double original = 0.0;        // average L^p error of the raw estimate
  std::vector<double> ratios;   // aligned with McReport::method_labels
};

struct BandRow {
  std::string estimator;
  std::string interval;         // "O" or a method label
  double coverage = 0.0;
  std::array<double, 3> length{};  // average L^1, L^2, L^inf length
  std::array<double, 3> ratio{};   // relative to the original band
};

struct Violation {
  std::string table;
  std::string estimator;
  std::string what;
  std::size_t rep = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct McReport {
  std::size_t reps = 0;
  std::vector<std::string> method_labels;  // R, I, B<lambda>...
  std::vector<ErrorRow> cef;               // table 1
  std::vector<ErrorRow> process;           // table 2
  std::vector<BandRow> bands;              // table 3
  std::vector<std::pair<std::string, double>> critical_values;
  std::vector<Violation> violations;       // per-replication inequality failures
};

McReport run_experiment(const McConfig& cfg, Tables tables = {},
                        Execution exec = Execution::parallel);

void write_report_csv(std::ostream& out, const McReport& report, int table);

}  // namespace monotone::mc

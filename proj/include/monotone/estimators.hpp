#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "monotone/grid.hpp"
#include "monotone/parallel.hpp"

namespace monotone {

struct Dataset {
  std::vector<double> x;
  std::vector<double> y;

  /// Throws ShapeMismatch / EmptyInput / NonFiniteValue.
  void validate() const;
  std::size_t size() const noexcept { return x.size(); }
};

struct Loss {
  enum class Kind { mean, quantile };
  Kind kind = Kind::mean;
  double tau = 0.5;  // used only when kind == quantile

  static Loss mean() { return {Kind::mean, 0.5}; }
  static Loss quantile(double tau);
};

enum class EstimatorMethod { kernel, loclinear, bspline, fourier };

EstimatorMethod parse_method(std::string_view name);
std::string_view to_string(EstimatorMethod m) noexcept;

struct Interval {
  double lo;
  double hi;
};

struct EstimatorSpec {
  EstimatorMethod method = EstimatorMethod::kernel;
  Loss loss = Loss::mean();
  double bandwidth = 1.0;            // kernel / loclinear, box kernel half-width
  std::vector<double> knots;         // bspline interior knots
  int n_terms = 4;                   // fourier sine/cosine pairs
  bool fourier_linear = true;        // fourier: include the linear trend column
  Axis eval_axis = Axis({0.0, 1.0});
  // Series support: boundary knots for bspline, the [0,1] map for fourier.
  // fit() uses the data range when unset; basis_eval() falls back to eval_axis.
  std::optional<Interval> support;
};

struct FitResult {
  GriddedFunction estimate;
  std::vector<double> coefficients;  // series methods only
  int iterations = 0;                // IRLS iterations (max over nodes for local methods)
};

/// Series design row P(x) for bspline or fourier specs.
std::vector<double> basis_eval(EstimatorMethod method, const EstimatorSpec& spec, double x);

FitResult fit(const Dataset& data, const EstimatorSpec& spec);

// Smoothed check-loss regression: minimizes sum_i w_i rho(y_i - z_i'b) with
// rho(u) = tau*u + kappa*log(1 + exp(-u/kappa)) by majorize-minimize IRLS.
struct CheckLossOptions {
  double tau = 0.5;
  double kappa = 1e-3;
  double tolerance = 1e-8;  // max |delta b| relative to max(1, |b|)
  int max_iterations = 200;
};

struct CheckLossResult {
  Eigen::VectorXd coef;
  int iterations = 0;
  std::vector<double> objective;  // objective after each accepted iterate, starting with b0
};

double smoothed_check(double u, double tau, double kappa) noexcept;

CheckLossResult solve_check_loss(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& weights, const CheckLossOptions& options,
                                 Eigen::VectorXd start);

/// kappa = 1e-3 * IQR(y), with a range-based fallback when the IQR is zero.
double smoothing_scale(std::span<const double> y);

struct BootstrapResult {
  GriddedFunction std_error;
  std::vector<GriddedFunction> draws;
  std::size_t failures = 0;  // draws that failed and were redrawn
};

/// Pairs bootstrap: B resamples of n out of n with replacement.
BootstrapResult bootstrap(const Dataset& data, const EstimatorSpec& spec, std::size_t draws,
                          std::uint64_t seed, Execution exec = Execution::parallel);

/// 2-d function with axis 1 = tau, axis 2 = spec.eval_axis.
GriddedFunction fit_quantile_process(const Dataset& data, const EstimatorSpec& spec,
                                     std::span<const double> taus,
                                     Execution exec = Execution::parallel);

/// {lo, lo + step, ..., hi} with the count rounded to the nearest integer.
std::vector<double> tau_net(double lo, double hi, double step);

}  // namespace monotone

#include "monotone/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "monotone/random.hpp"

namespace monotone {

void Dataset::validate() const {
  if (x.size() != y.size()) throw Error(Errc::ShapeMismatch, "x and y differ in length");
  if (x.empty()) throw Error(Errc::EmptyInput, "dataset is empty");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
      throw Error(Errc::NonFiniteValue, "observation " + std::to_string(i));
}

Loss Loss::quantile(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw Error(Errc::OutOfRange, "tau must lie in (0, 1)");
  return {Kind::quantile, tau};
}

EstimatorMethod parse_method(std::string_view name) {
  if (name == "kernel") return EstimatorMethod::kernel;
  if (name == "loclinear") return EstimatorMethod::loclinear;
  if (name == "bspline") return EstimatorMethod::bspline;
  if (name == "fourier") return EstimatorMethod::fourier;
  throw Error(Errc::InvalidSpec, "unknown estimator '" + std::string(name) + "'");
}

std::string_view to_string(EstimatorMethod m) noexcept {
  switch (m) {
    case EstimatorMethod::kernel: return "kernel";
    case EstimatorMethod::loclinear: return "loclinear";
    case EstimatorMethod::bspline: return "bspline";
    case EstimatorMethod::fourier: return "fourier";
  }
  return "?";
}

namespace {

constexpr double kDomainSlack = 1e-9;

bool is_series(EstimatorMethod m) {
  return m == EstimatorMethod::bspline || m == EstimatorMethod::fourier;
}

Interval basis_support(const EstimatorSpec& spec) {
  if (spec.support) return *spec.support;
  return {spec.eval_axis.front(), spec.eval_axis.back()};
}

void validate_spec(const EstimatorSpec& spec, Interval support) {
  switch (spec.method) {
    case EstimatorMethod::kernel:
    case EstimatorMethod::loclinear:
      if (!(spec.bandwidth > 0.0) || !std::isfinite(spec.bandwidth))
        throw Error(Errc::InvalidSpec, "bandwidth must be positive");
      break;
    case EstimatorMethod::bspline:
      for (std::size_t i = 0; i < spec.knots.size(); ++i) {
        if (i > 0 && !(spec.knots[i] > spec.knots[i - 1]))
          throw Error(Errc::InvalidSpec, "knots must be strictly increasing");
        if (!(spec.knots[i] > support.lo && spec.knots[i] < support.hi))
          throw Error(Errc::InvalidSpec, "knot " + std::to_string(spec.knots[i]) +
                                             " lies outside the data range");
      }
      break;
    case EstimatorMethod::fourier:
      if (spec.n_terms < 0) throw Error(Errc::InvalidSpec, "n_terms must be >= 0");
      break;
  }
  if (!(support.hi > support.lo)) throw Error(Errc::InvalidSpec, "degenerate support interval");
}

// Cubic B-spline basis on [lo, hi] with 4-fold boundary knots.
std::vector<double> bspline_basis(std::span<const double> interior, Interval s, double x) {
  constexpr int order = 4;
  constexpr int degree = order - 1;
  std::vector<double> t;
  t.reserve(interior.size() + 2 * order);
  t.insert(t.end(), order, s.lo);
  t.insert(t.end(), interior.begin(), interior.end());
  t.insert(t.end(), order, s.hi);
  const std::size_t n_basis = interior.size() + order;

  x = std::clamp(x, s.lo, s.hi);
  // Knot span: t[span] <= x < t[span + 1], with x == hi in the last span.
  std::size_t span = n_basis - 1;
  if (x < s.hi) {
    span = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), x) - t.begin()) - 1;
  }

  std::array<double, order> local{};
  std::array<double, order> left{}, right{};
  local[0] = 1.0;
  for (int j = 1; j <= degree; ++j) {
    left[j] = x - t[span + 1 - j];
    right[j] = t[span + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = local[r] / (right[r + 1] + left[j - r]);
      local[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    local[j] = saved;
  }
  std::vector<double> out(n_basis, 0.0);
  for (int r = 0; r <= degree; ++r) out[span - degree + r] = local[r];
  return out;
}

std::vector<double> fourier_basis(int n_terms, bool linear, Interval s, double x) {
  const double xs = (x - s.lo) / (s.hi - s.lo);
  std::vector<double> out;
  out.reserve(2 + 2 * static_cast<std::size_t>(n_terms));
  out.push_back(1.0);
  if (linear) out.push_back(xs);
  for (int k = 1; k <= n_terms; ++k) {
    const double a = 2.0 * std::numbers::pi * k * xs;
    out.push_back(std::sin(a));
    out.push_back(std::cos(a));
  }
  return out;
}

std::vector<double> basis_row(const EstimatorSpec& spec, Interval support, double x) {
  if (x < support.lo - kDomainSlack * (support.hi - support.lo) ||
      x > support.hi + kDomainSlack * (support.hi - support.lo))
    throw Error(Errc::OutOfDomain, "x = " + std::to_string(x) + " outside [" +
                                       std::to_string(support.lo) + ", " +
                                       std::to_string(support.hi) + "]");
  if (spec.method == EstimatorMethod::bspline) return bspline_basis(spec.knots, support, x);
  if (spec.method == EstimatorMethod::fourier)
    return fourier_basis(spec.n_terms, spec.fourier_linear, support, x);
  throw Error(Errc::InvalidSpec, "basis_eval needs a series method");
}

double softplus(double z) noexcept { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double check_objective(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, const Eigen::VectorXd& w,
                       const Eigen::VectorXd& b, double tau, double kappa) {
  const Eigen::VectorXd u = y - Z * b;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) acc += w[i] * smoothed_check(u[i], tau, kappa);
  return acc;
}

// Sorted view of the data for window lookups.
struct SortedData {
  std::vector<double> x;
  std::vector<double> y;

  explicit SortedData(const Dataset& d) {
    std::vector<std::size_t> idx(d.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return d.x[a] < d.x[b]; });
    x.reserve(idx.size());
    y.reserve(idx.size());
    for (auto i : idx) {
      x.push_back(d.x[i]);
      y.push_back(d.y[i]);
    }
  }

  // Half-open index range of points with |x_i - x0| <= h (box kernel).
  std::pair<std::size_t, std::size_t> window(double x0, double h) const {
    const double slack = 1e-12 * std::max(1.0, std::abs(x0) + h);
    const auto lo = std::lower_bound(x.begin(), x.end(), x0 - h - slack) - x.begin();
    const auto hi = std::upper_bound(x.begin(), x.end(), x0 + h + slack) - x.begin();
    return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
  }
};

double lower_quantile(std::vector<double> values, double tau) {
  const auto m = values.size();
  auto k = static_cast<std::size_t>(std::ceil(tau * static_cast<double>(m) - 1e-12));
  k = std::clamp<std::size_t>(k, 1, m);
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k - 1), values.end());
  return values[k - 1];
}

FitResult fit_kernel(const SortedData& data, const EstimatorSpec& spec) {
  const auto& nodes = spec.eval_axis.coords();
  std::vector<double> est(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const auto [lo, hi] = data.window(nodes[j], spec.bandwidth);
    if (lo >= hi)
      throw Error(Errc::EmptyWindow, "no observations within the bandwidth of x = " +
                                         std::to_string(nodes[j]));
    if (spec.loss.kind == Loss::Kind::mean) {
      double sum = 0.0;
      for (std::size_t i = lo; i < hi; ++i) sum += data.y[i];
      est[j] = sum / static_cast<double>(hi - lo);
    } else {
      est[j] = lower_quantile(std::vector<double>(data.y.begin() + lo, data.y.begin() + hi),
                              spec.loss.tau);
    }
  }
  return {GriddedFunction({spec.eval_axis}, std::move(est)), {}, 0};
}

FitResult fit_loclinear(const SortedData& data, const EstimatorSpec& spec, double kappa) {
  const auto& nodes = spec.eval_axis.coords();
  std::vector<double> est(nodes.size());
  int max_iter = 0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double x0 = nodes[j];
    const auto [lo, hi] = data.window(x0, spec.bandwidth);
    if (hi <= lo || data.x[hi - 1] == data.x[lo])
      throw Error(Errc::EmptyWindow, "fewer than 2 distinct observations near x = " +
                                         std::to_string(x0));
    double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double d = data.x[i] - x0;
      s0 += 1.0;
      s1 += d;
      s2 += d * d;
      t0 += data.y[i];
      t1 += d * data.y[i];
    }
    const double det = s0 * s2 - s1 * s1;
    if (!(det > 0.0)) throw Error(Errc::RankDeficientDesign, "local design near x = " + std::to_string(x0));
    const double intercept = (s2 * t0 - s1 * t1) / det;
    const double slope = (s0 * t1 - s1 * t0) / det;
    if (spec.loss.kind == Loss::Kind::mean) {
      est[j] = intercept;
      continue;
    }
    const auto m = static_cast<Eigen::Index>(hi - lo);
    Eigen::MatrixXd Z(m, 2);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      Z(i, 0) = 1.0;
      Z(i, 1) = data.x[lo + static_cast<std::size_t>(i)] - x0;
      y[i] = data.y[lo + static_cast<std::size_t>(i)];
    }
    Eigen::VectorXd start(2);
    start << intercept, slope;
    const auto r = solve_check_loss(Z, y, Eigen::VectorXd::Ones(m),
                                    {.tau = spec.loss.tau, .kappa = kappa}, start);
    est[j] = r.coef[0];
    max_iter = std::max(max_iter, r.iterations);
  }
  return {GriddedFunction({spec.eval_axis}, std::move(est)), {}, max_iter};
}

FitResult fit_series(const Dataset& data, const EstimatorSpec& spec, Interval support, double kappa) {
  const auto n = static_cast<Eigen::Index>(data.size());
  const auto k = static_cast<Eigen::Index>(basis_row(spec, support, support.lo).size());
  Eigen::MatrixXd Z(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = basis_row(spec, support, data.x[static_cast<std::size_t>(i)]);
    for (Eigen::Index c = 0; c < k; ++c) Z(i, c) = row[static_cast<std::size_t>(c)];
  }
  const Eigen::Map<const Eigen::VectorXd> y(data.y.data(), n);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Z);
  if (qr.rank() < k)
    throw Error(Errc::RankDeficientDesign, "series design has rank " + std::to_string(qr.rank()) +
                                               " < " + std::to_string(k));
  Eigen::VectorXd coef = qr.solve(y);
  int iterations = 0;
  if (spec.loss.kind == Loss::Kind::quantile) {
    auto r = solve_check_loss(Z, y, Eigen::VectorXd::Ones(n),
                              {.tau = spec.loss.tau, .kappa = kappa}, coef);
    coef = std::move(r.coef);
    iterations = r.iterations;
  }

  const auto& nodes = spec.eval_axis.coords();
  std::vector<double> est(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const auto row = basis_row(spec, support, nodes[j]);
    double acc = 0.0;
    for (Eigen::Index c = 0; c < k; ++c) acc += row[static_cast<std::size_t>(c)] * coef[c];
    est[j] = acc;
  }
  return {GriddedFunction({spec.eval_axis}, std::move(est)),
          std::vector<double>(coef.data(), coef.data() + coef.size()), iterations};
}

}  // namespace

double smoothed_check(double u, double tau, double kappa) noexcept {
  return tau * u + kappa * softplus(-u / kappa);
}

namespace {

struct DescentOutcome {
  bool converged = false;
  int iterations = 0;
};

// Monotone descent on the smoothed check objective at one smoothing scale:
// majorizer step with extrapolation, plus a backtracked Newton candidate.
DescentOutcome descend(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, const Eigen::VectorXd& w,
                       double tau, double kappa, double tolerance, int max_iterations,
                       Eigen::VectorXd& b, std::vector<double>* history) {
  const Eigen::Index n = Z.rows();
  double obj = check_objective(Z, y, w, b, tau, kappa);
  if (history) history->push_back(obj);

  Eigen::VectorXd omega(n), rhs_w(n), curv(n), grad_w(n);
  for (int it = 1; it <= max_iterations; ++it) {
    // Quadratic majorizer of the symmetric part u/2 + kappa*log(1+exp(-u/kappa)),
    // which equals kappa*log(2*cosh(u/(2 kappa))).
    const Eigen::VectorXd u = y - Z * b;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double a = u[i] / (2.0 * kappa);
      const double ratio = std::abs(a) < 1e-8 ? 1.0 / (4.0 * kappa) : std::tanh(a) / (2.0 * u[i]);
      omega[i] = w[i] * ratio;
      rhs_w[i] = omega[i] * y[i] + w[i] * (tau - 0.5);
    }
    const Eigen::MatrixXd H = Z.transpose() * omega.asDiagonal() * Z;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
      throw Error(Errc::RankDeficientDesign, "IRLS normal equations are singular");
    const Eigen::VectorXd target = ldlt.solve(Z.transpose() * rhs_w);
    const Eigen::VectorXd step = target - b;

    Eigen::VectorXd next = target;
    double next_obj = check_objective(Z, y, w, next, tau, kappa);
    for (double s = 2.0; s <= 16.0; s *= 2.0) {
      Eigen::VectorXd trial = b + s * step;
      const double trial_obj = check_objective(Z, y, w, trial, tau, kappa);
      if (!(trial_obj < next_obj)) break;
      next = std::move(trial);
      next_obj = trial_obj;
    }

    for (Eigen::Index i = 0; i < n; ++i) {
      const double s = 1.0 / (1.0 + std::exp(-u[i] / kappa));
      curv[i] = w[i] * s * (1.0 - s) / kappa;
      grad_w[i] = w[i] * (tau - (1.0 - s));
    }
    Eigen::MatrixXd Hn = Z.transpose() * curv.asDiagonal() * Z;
    Hn.diagonal().array() += 1e-12 * std::max(1.0, Hn.diagonal().maxCoeff());
    const Eigen::LDLT<Eigen::MatrixXd> newton(Hn);
    bool damped = false;
    if (newton.info() == Eigen::Success && newton.isPositive()) {
      const Eigen::VectorXd dir = newton.solve(Z.transpose() * grad_w);
      if (dir.allFinite()) {
        // Ill-conditioned curvature near a kink can need very short steps.
        for (double t = 1.0; t >= 0x1p-40; t *= 0.5) {
          Eigen::VectorXd trial = b + t * dir;
          const double trial_obj = check_objective(Z, y, w, trial, tau, kappa);
          if (trial_obj < obj) {
            if (trial_obj < next_obj) {
              next = std::move(trial);
              next_obj = trial_obj;
              damped = t < 1.0;
            }
            break;
          }
        }
      }
    }

    if (next_obj > obj) {  // rounding only; keep the monotone sequence
      next = b;
      next_obj = obj;
      damped = false;
    }

    const double change = (next - b).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, next.cwiseAbs().maxCoeff());
    b = std::move(next);
    obj = next_obj;
    if (history) history->push_back(obj);
    // A short damped Newton step says nothing about stationarity.
    if (change <= tolerance * scale && !damped) return {true, it};
  }
  return {false, max_iterations};
}

}  // namespace

CheckLossResult solve_check_loss(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& w, const CheckLossOptions& opt,
                                 Eigen::VectorXd b) {
  const double tau = opt.tau;
  const double kappa = opt.kappa;
  const Eigen::Index n = Z.rows();

  CheckLossResult out;
  const auto r = descend(Z, y, w, tau, kappa, opt.tolerance, opt.max_iterations, b, &out.objective);
  out.iterations = r.iterations;
  if (r.converged) {
    out.coef = std::move(b);
    return out;
  }

  const Eigen::VectorXd u = y - Z * b;
  Eigen::VectorXd psi(n);
  for (Eigen::Index i = 0; i < n; ++i) psi[i] = w[i] * (tau - 1.0 / (1.0 + std::exp(u[i] / kappa)));
  const double grad = (Z.transpose() * psi).norm();
  throw Error(Errc::IrlsNoConvergence, "no convergence after " + std::to_string(opt.max_iterations) +
                                           " iterations, gradient norm " + std::to_string(grad));
}

double smoothing_scale(std::span<const double> y) {
  std::vector<double> v(y.begin(), y.end());
  std::sort(v.begin(), v.end());
  auto q = [&](double p) {
    const double h = (static_cast<double>(v.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  double spread = q(0.75) - q(0.25);
  if (!(spread > 0.0)) spread = v.back() - v.front();
  if (!(spread > 0.0)) spread = 1.0;
  return 1e-3 * spread;
}

std::vector<double> basis_eval(EstimatorMethod method, const EstimatorSpec& spec, double x) {
  EstimatorSpec s = spec;
  s.method = method;
  const auto support = basis_support(s);
  validate_spec(s, support);
  return basis_row(s, support, x);
}

FitResult fit(const Dataset& data, const EstimatorSpec& spec) {
  data.validate();
  Interval support{};
  if (spec.support) {
    support = *spec.support;
  } else {
    const auto [lo, hi] = std::minmax_element(data.x.begin(), data.x.end());
    support = {*lo, *hi};
  }
  if (is_series(spec.method)) validate_spec(spec, support);
  else validate_spec(spec, {0.0, 1.0});

  const double kappa = spec.loss.kind == Loss::Kind::quantile ? smoothing_scale(data.y) : 0.0;
  switch (spec.method) {
    case EstimatorMethod::kernel: return fit_kernel(SortedData(data), spec);
    case EstimatorMethod::loclinear: return fit_loclinear(SortedData(data), spec, kappa);
    case EstimatorMethod::bspline:
    case EstimatorMethod::fourier: return fit_series(data, spec, support, kappa);
  }
  throw Error(Errc::InvalidSpec, "unknown estimator");
}

BootstrapResult bootstrap(const Dataset& data, const EstimatorSpec& spec, std::size_t draws,
                          std::uint64_t seed, Execution exec) {
  data.validate();
  if (draws < 2) throw Error(Errc::TooFewDraws, "bootstrap needs at least 2 draws");
  EstimatorSpec s = spec;
  if (!s.support) {
    const auto [lo, hi] = std::minmax_element(data.x.begin(), data.x.end());
    s.support = Interval{*lo, *hi};
  }
  const std::size_t n = data.size();
  const std::size_t max_failures = draws / 10;
  constexpr std::uint64_t kMaxAttempts = 64;

  std::vector<std::vector<double>> results(draws);
  std::vector<std::size_t> failures(draws, 0);
  const auto count = static_cast<long long>(draws);

  auto one_draw = [&](long long b) {
    Dataset resample;
    resample.x.resize(n);
    resample.y.resize(n);
    for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
      Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(b), attempt}));
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (std::size_t i = 0; i < n; ++i) {
        const auto k = pick(rng);
        resample.x[i] = data.x[k];
        resample.y[i] = data.y[k];
      }
      try {
        results[static_cast<std::size_t>(b)] = fit(resample, s).estimate.values();
        return;
      } catch (const Error&) {
        ++failures[static_cast<std::size_t>(b)];
      }
    }
  };

  if (exec == Execution::serial) {
    for (long long b = 0; b < count; ++b) one_draw(b);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (long long b = 0; b < count; ++b) one_draw(b);
  }

  const std::size_t total_failures = std::accumulate(failures.begin(), failures.end(), std::size_t{0});
  const bool exhausted = std::any_of(results.begin(), results.end(), [](const auto& r) { return r.empty(); });
  if (exhausted || total_failures > max_failures)
    throw Error(Errc::BootstrapFailure, std::to_string(total_failures) + " of " +
                                            std::to_string(draws) + " bootstrap fits failed");

  const std::size_t m = results.front().size();
  std::vector<double> sd(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double mean = 0.0;
    for (const auto& r : results) mean += r[j];
    mean /= static_cast<double>(draws);
    double ss = 0.0;
    for (const auto& r : results) ss += (r[j] - mean) * (r[j] - mean);
    sd[j] = std::sqrt(ss / static_cast<double>(draws - 1));
  }

  BootstrapResult out{GriddedFunction({s.eval_axis}, std::move(sd)), {}, total_failures};
  out.draws.reserve(draws);
  for (auto& r : results) out.draws.emplace_back(std::vector<Axis>{s.eval_axis}, std::move(r));
  return out;
}

GriddedFunction fit_quantile_process(const Dataset& data, const EstimatorSpec& spec,
                                     std::span<const double> taus, Execution exec) {
  if (taus.empty()) throw Error(Errc::EmptyInput, "no quantile indices");
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0.0 && taus[i] < 1.0)) throw Error(Errc::OutOfRange, "tau must lie in (0, 1)");
    if (i > 0 && !(taus[i] > taus[i - 1]))
      throw Error(Errc::NonIncreasingAxis, "taus must be strictly increasing");
  }
  const std::size_t m = spec.eval_axis.size();
  std::vector<double> values(taus.size() * m);
  const auto count = static_cast<long long>(taus.size());

  // Errors inside the parallel loop are carried out by index.
  std::vector<std::optional<Error>> errors(taus.size());
  auto one = [&](long long t) {
    EstimatorSpec s = spec;
    s.loss = Loss::quantile(taus[static_cast<std::size_t>(t)]);
    try {
      const auto r = fit(data, s);
      std::copy(r.estimate.values().begin(), r.estimate.values().end(),
                values.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(t) * m));
    } catch (const Error& e) {
      errors[static_cast<std::size_t>(t)] = e;
    }
  };
  if (exec == Execution::serial) {
    for (long long t = 0; t < count; ++t) one(t);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (long long t = 0; t < count; ++t) one(t);
  }
  for (auto& e : errors)
    if (e) throw *e;

  return GriddedFunction({Axis(std::vector<double>(taus.begin(), taus.end())), spec.eval_axis},
                         std::move(values));
}

std::vector<double> tau_net(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw Error(Errc::OutOfRange, "invalid tau net");
  const auto count = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  return out;
}

}  // namespace monotone

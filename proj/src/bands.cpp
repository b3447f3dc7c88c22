#include "monotone/bands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace monotone {

namespace {

constexpr double kDegenerateStderr = 1e-12;

double band_tolerance(const GriddedFunction& a, const GriddedFunction& b) {
  return std::max(scaled_tolerance(a.values()), scaled_tolerance(b.values()));
}

}  // namespace

Band::Band(GriddedFunction lower, GriddedFunction upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (!lower_.same_grid(upper_)) throw Error(Errc::GridMismatch, "band end-points on different grids");
  const double tol = band_tolerance(lower_, upper_);
  for (std::size_t i = 0; i < lower_.size(); ++i)
    if (lower_[i] > upper_[i] + tol)
      throw Error(Errc::InvalidBand, "lower exceeds upper at flat index " + std::to_string(i));
}

Band assemble_band(const BandRecipe& r) {
  if (!r.center.same_grid(r.std_error))
    throw Error(Errc::GridMismatch, "center and standard error on different grids");
  if (!(r.critical >= 0.0)) throw Error(Errc::OutOfRange, "critical value must be >= 0");
  std::vector<double> lo(r.center.size()), hi(r.center.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const double s = r.std_error[i];
    if (s < 0.0) throw Error(Errc::NegativeStderr, "standard error at flat index " + std::to_string(i));
    lo[i] = r.center[i] - r.critical * s;
    hi[i] = r.center[i] + r.critical * s;
  }
  return Band(r.center.with_values(std::move(lo)), r.center.with_values(std::move(hi)));
}

double max_t_statistic(const GriddedFunction& center, const GriddedFunction& draw,
                       const GriddedFunction& std_error) {
  if (!center.same_grid(draw) || !center.same_grid(std_error))
    throw Error(Errc::GridMismatch, "max-t inputs on different grids");
  double m = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t i = 0; i < center.size(); ++i) {
    if (std_error[i] < kDegenerateStderr) continue;
    any = true;
    m = std::max(m, std::abs(draw[i] - center[i]) / std_error[i]);
  }
  return any ? m : std::numeric_limits<double>::infinity();
}

double upper_order_statistic(std::vector<double> stats, double alpha) {
  if (stats.empty()) throw Error(Errc::TooFewDraws, "no statistics");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw Error(Errc::OutOfRange, "alpha must lie in [0, 1)");
  const double n = static_cast<double>(stats.size());
  auto rank = static_cast<std::size_t>(std::ceil((1.0 - alpha) * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, stats.size());
  std::nth_element(stats.begin(), stats.begin() + static_cast<std::ptrdiff_t>(rank - 1), stats.end());
  return stats[rank - 1];
}

CriticalValue critical_value_max_t(const GriddedFunction& center,
                                   std::span<const GriddedFunction> draws,
                                   const GriddedFunction& std_error, double alpha) {
  if (draws.size() < 2) throw Error(Errc::TooFewDraws, "need at least 2 bootstrap draws");
  if (!center.same_grid(std_error))
    throw Error(Errc::GridMismatch, "center and standard error on different grids");
  CriticalValue out;
  for (std::size_t i = 0; i < std_error.size(); ++i) {
    if (std_error[i] < 0.0) throw Error(Errc::NegativeStderr, "standard error");
    if (std_error[i] < kDegenerateStderr) ++out.excluded_nodes;
  }
  if (out.excluded_nodes == std_error.size())
    throw Error(Errc::AllNodesDegenerate, "every node has zero standard error");

  std::vector<double> stats;
  stats.reserve(draws.size());
  for (const auto& d : draws) stats.push_back(max_t_statistic(center, d, std_error));
  out.value = upper_order_statistic(std::move(stats), alpha);
  return out;
}

Band monotonize_band(const Band& b, const Method& method, const OrderingSet& orderings,
                     Execution exec) {
  return Band(monotonize(b.lower(), method, orderings, exec),
              monotonize(b.upper(), method, orderings, exec));
}

bool covers(const Band& b, const GriddedFunction& f) {
  if (!b.lower().same_grid(f)) throw Error(Errc::GridMismatch, "coverage check on different grids");
  const double tol = band_tolerance(b.lower(), b.upper());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] < b.lower()[i] - tol || f[i] > b.upper()[i] + tol) return false;
  return true;
}

double lp_length(const Band& b, LpIndex p) { return lp_distance(b.lower(), b.upper(), p); }

}  // namespace monotone

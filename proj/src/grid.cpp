#include "monotone/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace monotone {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::NonIncreasingAxis: return "NonIncreasingAxis";
    case Errc::GridMismatch: return "GridMismatch";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NonEquidistantAxis: return "NonEquidistantAxis";
    case Errc::AxisOutOfRange: return "AxisOutOfRange";
    case Errc::EmptyOrderingSet: return "EmptyOrderingSet";
    case Errc::InvalidOrdering: return "InvalidOrdering";
    case Errc::InfeasibleConstraint: return "InfeasibleConstraint";
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::LambdaOutOfRange: return "LambdaOutOfRange";
    case Errc::NegativeStderr: return "NegativeStderr";
    case Errc::InvalidBand: return "InvalidBand";
    case Errc::TooFewDraws: return "TooFewDraws";
    case Errc::AllNodesDegenerate: return "AllNodesDegenerate";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::EmptyWindow: return "EmptyWindow";
    case Errc::RankDeficientDesign: return "RankDeficientDesign";
    case Errc::IrlsNoConvergence: return "IrlsNoConvergence";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::BootstrapFailure: return "BootstrapFailure";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

double scaled_tolerance(std::span<const double> values) noexcept {
  if (values.empty()) return kTolerance;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return kTolerance * std::max(1.0, *hi - *lo);
}

Axis::Axis(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(Errc::NonIncreasingAxis, "axis has no coordinates");
  for (double c : coords_)
    if (!std::isfinite(c)) throw Error(Errc::NonFiniteValue, "axis coordinate is not finite");
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (!(coords_[i] > coords_[i - 1]))
      throw Error(Errc::NonIncreasingAxis,
                  "coordinate " + std::to_string(i) + " does not exceed its predecessor");

  equidistant_ = true;
  if (coords_.size() == 1) return;
  const double gap0 = coords_[1] - coords_[0];
  for (std::size_t i = 2; i < coords_.size() && equidistant_; ++i)
    equidistant_ = std::abs((coords_[i] - coords_[i - 1]) - gap0) <= kEquidistantTolerance * gap0;
}

Axis Axis::linspace(double lo, double hi, std::size_t count) {
  if (count < 2) throw Error(Errc::NonIncreasingAxis, "linspace needs at least 2 nodes");
  std::vector<double> c(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) c[i] = lo + step * static_cast<double>(i);
  c.back() = hi;
  return Axis(std::move(c));
}

std::vector<double> Axis::cell_weights() const {
  const std::size_t n = coords_.size();
  std::vector<double> w(n);
  if (equidistant_ || n == 1) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(n));
    return w;
  }
  w[0] = coords_[1] - coords_[0];
  w[n - 1] = coords_[n - 1] - coords_[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) w[i] = 0.5 * (coords_[i + 1] - coords_[i - 1]);
  double total = 0.0;
  for (double v : w) total += v;
  for (double& v : w) v /= total;
  return w;
}

GriddedFunction::GriddedFunction(std::vector<Axis> axes, std::vector<double> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
  if (axes_.empty()) throw Error(Errc::ShapeMismatch, "function needs at least one axis");
  std::size_t expected = 1;
  for (const auto& a : axes_) expected *= a.size();
  if (expected != values_.size())
    throw Error(Errc::ShapeMismatch, "expected " + std::to_string(expected) + " values, got " +
                                         std::to_string(values_.size()));
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw Error(Errc::NonFiniteValue, "value at flat index " + std::to_string(i));
}

std::vector<std::size_t> GriddedFunction::shape() const {
  std::vector<std::size_t> s;
  s.reserve(axes_.size());
  for (const auto& a : axes_) s.push_back(a.size());
  return s;
}

std::size_t GriddedFunction::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != axes_.size()) throw Error(Errc::ShapeMismatch, "index rank");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    if (index[k] >= axes_[k].size()) throw Error(Errc::IndexOutOfRange, "grid index");
    flat = flat * axes_[k].size() + index[k];
  }
  return flat;
}

bool GriddedFunction::all_equidistant() const noexcept {
  return std::all_of(axes_.begin(), axes_.end(), [](const Axis& a) { return a.equidistant(); });
}

GriddedFunction GriddedFunction::with_values(std::vector<double> values) const {
  return GriddedFunction(axes_, std::move(values));
}

std::vector<double> GriddedFunction::cell_weights() const {
  std::vector<double> w{1.0};
  for (const auto& a : axes_) {
    const auto wa = a.cell_weights();
    std::vector<double> next;
    next.reserve(w.size() * wa.size());
    for (double outer : w)
      for (double inner : wa) next.push_back(outer * inner);
    w = std::move(next);
  }
  return w;
}

GriddedFunction make_grid_function(std::vector<Axis> axes, std::vector<double> values) {
  return GriddedFunction(std::move(axes), std::move(values));
}

LpIndex::LpIndex(double p) : p_(p), inf_(false) {
  if (std::isinf(p) && p > 0) {
    inf_ = true;
    p_ = 0.0;
    return;
  }
  if (!(p >= 1.0)) throw Error(Errc::OutOfRange, "L^p exponent must be >= 1");
}

double lp_distance_pow(const GriddedFunction& f, const GriddedFunction& g, double p) {
  if (!f.same_grid(g)) throw Error(Errc::GridMismatch, "lp_distance on different grids");
  const auto w = f.cell_weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = std::abs(f[i] - g[i]);
    acc += w[i] * (p == 1.0 ? d : p == 2.0 ? d * d : std::pow(d, p));
  }
  return acc;
}

double lp_distance(const GriddedFunction& f, const GriddedFunction& g, LpIndex p) {
  if (!f.same_grid(g)) throw Error(Errc::GridMismatch, "lp_distance on different grids");
  if (p.is_inf()) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
    return m;
  }
  const double acc = lp_distance_pow(f, g, p.p());
  return p.p() == 1.0 ? acc : p.p() == 2.0 ? std::sqrt(acc) : std::pow(acc, 1.0 / p.p());
}

bool is_monotone(const GriddedFunction& f) {
  const double tol = scaled_tolerance(f.values());
  const auto shape = f.shape();
  std::vector<std::size_t> strides(shape.size(), 1);
  for (std::size_t k = shape.size(); k-- > 1;) strides[k - 1] = strides[k] * shape[k];
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t k = 0; k < shape.size(); ++k) {
      const std::size_t pos = (i / strides[k]) % shape[k];
      if (pos + 1 < shape[k] && f[i + strides[k]] < f[i] - tol) return false;
    }
  }
  return true;
}

}  // namespace monotone

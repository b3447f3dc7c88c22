#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "monotone/error.hpp"

namespace monotone {

// Single tolerance used for value comparisons; scaled by the value range.
inline constexpr double kTolerance = 1e-12;
// Relative tolerance on successive gaps for the equidistant flag.
inline constexpr double kEquidistantTolerance = 1e-9;

double scaled_tolerance(std::span<const double> values) noexcept;

class Axis {
public:
  explicit Axis(std::vector<double> coords);

  /// Equidistant axis of `count` nodes from `lo` to `hi` inclusive.
  static Axis linspace(double lo, double hi, std::size_t count);

  const std::vector<double>& coords() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }
  double front() const noexcept { return coords_.front(); }
  double back() const noexcept { return coords_.back(); }
  bool equidistant() const noexcept { return equidistant_; }

  /// Normalized cell measure of each node: node i owns the span between the
  /// midpoints to its neighbours, and the two end nodes extend outward by
  /// half of their single gap. Equidistant axes therefore give every node 1/n.
  std::vector<double> cell_weights() const;

  friend bool operator==(const Axis& a, const Axis& b) { return a.coords_ == b.coords_; }

private:
  std::vector<double> coords_;
  bool equidistant_ = false;
};

class GriddedFunction {
public:
  GriddedFunction(std::vector<Axis> axes, std::vector<double> values);

  const std::vector<Axis>& axes() const noexcept { return axes_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t dim() const noexcept { return axes_.size(); }
  std::size_t size() const noexcept { return values_.size(); }
  std::vector<std::size_t> shape() const;

  /// Row-major flat index, axis 0 slowest.
  std::size_t flat_index(std::span<const std::size_t> index) const;
  double at(std::span<const std::size_t> index) const { return values_[flat_index(index)]; }
  double operator[](std::size_t flat) const noexcept { return values_[flat]; }

  bool same_grid(const GriddedFunction& other) const noexcept { return axes_ == other.axes_; }
  bool all_equidistant() const noexcept;

  /// New function on the same grid.
  GriddedFunction with_values(std::vector<double> values) const;

  /// Product of the per-axis cell weights, row-major; sums to 1.
  std::vector<double> cell_weights() const;

  friend bool operator==(const GriddedFunction& a, const GriddedFunction& b) {
    return a.axes_ == b.axes_ && a.values_ == b.values_;
  }

private:
  std::vector<Axis> axes_;
  std::vector<double> values_;
};

GriddedFunction make_grid_function(std::vector<Axis> axes, std::vector<double> values);

class LpIndex {
public:
  /// Finite exponent p >= 1.
  explicit LpIndex(double p);
  static LpIndex inf() noexcept { return LpIndex(); }

  bool is_inf() const noexcept { return inf_; }
  double p() const noexcept { return p_; }

private:
  LpIndex() noexcept : p_(0.0), inf_(true) {}
  double p_;
  bool inf_;
};

/// (sum_cells w |f-g|^p)^{1/p}, or max over nodes of |f-g| for p = inf.
double lp_distance(const GriddedFunction& f, const GriddedFunction& g, LpIndex p);

/// sum_cells w |f-g|^p without the final root (finite p only).
double lp_distance_pow(const GriddedFunction& f, const GriddedFunction& g, double p);

/// Weakly increasing along every axis, up to the scaled tolerance.
bool is_monotone(const GriddedFunction& f);

}  // namespace monotone

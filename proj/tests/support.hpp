#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "monotone/grid.hpp"
#include "monotone/random.hpp"

namespace monotone::testing {

inline std::vector<double> uniform_values(Rng& rng, std::size_t n, double lo = -5.0, double hi = 5.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

// Small integers so ties and exact comparisons actually occur.
inline std::vector<double> integer_values(Rng& rng, std::size_t n, int lo = -4, int hi = 4) {
  std::uniform_int_distribution<int> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

inline std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline GriddedFunction random_grid(Rng& rng, std::vector<std::size_t> shape) {
  std::vector<Axis> axes;
  std::size_t total = 1;
  for (auto s : shape) {
    axes.push_back(s == 1 ? Axis({0.0}) : Axis::linspace(0.0, 1.0, s));
    total *= s;
  }
  return GriddedFunction(std::move(axes), uniform_values(rng, total));
}

// Increasing in every coordinate: a sum of increasing per-axis pieces.
inline GriddedFunction random_monotone(Rng& rng, const GriddedFunction& like) {
  const auto shape = like.shape();
  std::vector<std::vector<double>> parts;
  for (auto s : shape) {
    auto p = uniform_values(rng, s, 0.0, 1.0);
    for (std::size_t i = 1; i < s; ++i) p[i] += p[i - 1];
    parts.push_back(std::move(p));
  }
  std::vector<double> values(like.size());
  std::vector<std::size_t> idx(shape.size(), 0);
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    double acc = 0.0;
    for (std::size_t a = 0; a < shape.size(); ++a) acc += parts[a][idx[a]];
    values[flat] = acc;
    for (std::size_t a = shape.size(); a-- > 0;) {
      if (++idx[a] < shape[a]) break;
      idx[a] = 0;
    }
  }
  return like.with_values(std::move(values));
}

inline GriddedFunction line(std::vector<double> values) {
  const auto n = values.size();
  return GriddedFunction({Axis::linspace(0.0, 1.0, n)}, std::move(values));
}

inline GriddedFunction square(std::vector<double> values, std::size_t rows, std::size_t cols) {
  return GriddedFunction({Axis::linspace(0.0, 1.0, rows), Axis::linspace(0.0, 1.0, cols)},
                         std::move(values));
}

inline bool leq(double a, double b, double rel = 1e-12) {
  return a <= b + rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace monotone::testing

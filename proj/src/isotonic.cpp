#include "monotone/isotonic.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace monotone {

namespace {

struct Block {
  double weighted_sum;
  double weight;
  std::size_t count;
  double mean() const { return weighted_sum / weight; }
};

// Pools adjacent blocks while the earlier mean strictly exceeds the later one.
template <class WeightAt>
std::vector<Block> pool(std::span<const double> values, WeightAt weight_at) {
  std::vector<Block> stack;
  stack.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double w = weight_at(i);
    stack.push_back({w * values[i], w, 1});
    while (stack.size() > 1 && stack[stack.size() - 2].mean() > stack.back().mean()) {
      const Block top = stack.back();
      stack.pop_back();
      auto& prev = stack.back();
      prev.weighted_sum += top.weighted_sum;
      prev.weight += top.weight;
      prev.count += top.count;
    }
  }
  return stack;
}

void expand(const std::vector<Block>& blocks, std::span<double> out) {
  std::size_t pos = 0;
  for (const auto& b : blocks) {
    const double m = b.mean();
    for (std::size_t k = 0; k < b.count; ++k) out[pos++] = m;
  }
}

void validate(const WeightedSeq& s) {
  if (s.values.empty()) throw Error(Errc::EmptyInput, "empty sequence");
  if (s.values.size() != s.weights.size())
    throw Error(Errc::ShapeMismatch, "values and weights differ in length");
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (!std::isfinite(s.values[i])) throw Error(Errc::NonFiniteValue, "sequence value");
    if (!(s.weights[i] > 0.0) || !std::isfinite(s.weights[i]))
      throw Error(Errc::NonPositiveWeight, "weight at index " + std::to_string(i));
  }
}

}  // namespace

std::vector<double> pava(const WeightedSeq& s) {
  validate(s);
  const auto blocks = pool(s.values, [&](std::size_t i) { return s.weights[i]; });
  std::vector<double> out(s.values.size());
  expand(blocks, out);
  return out;
}

void pava_inplace(std::span<double> values) {
  const auto blocks = pool(std::span<const double>(values), [](std::size_t) { return 1.0; });
  expand(blocks, values);
}

double isotonic_maxmin_oracle(const WeightedSeq& s, std::size_t i) {
  validate(s);
  const std::size_t n = s.values.size();
  if (i >= n) throw Error(Errc::IndexOutOfRange, "index " + std::to_string(i));
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j <= i; ++j) {
    double sum = 0.0, weight = 0.0;
    for (std::size_t k = j; k < i; ++k) {
      sum += s.weights[k] * s.values[k];
      weight += s.weights[k];
    }
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t k = i; k < n; ++k) {
      sum += s.weights[k] * s.values[k];
      weight += s.weights[k];
      lowest = std::min(lowest, sum / weight);
    }
    best = std::max(best, lowest);
  }
  return best;
}

namespace {

void pava_fibers(std::vector<double>& values, std::span<const std::size_t> shape,
                 std::size_t axis, Execution exec) {
  for_each_fiber(values, shape, axis, [](std::span<double> fiber) { pava_inplace(fiber); }, exec);
}

}  // namespace

GriddedFunction isotonize_axis(const GriddedFunction& f, std::size_t axis, Execution exec) {
  detail::require_equidistant(f, axis);
  auto values = f.values();
  const auto shape = f.shape();
  pava_fibers(values, shape, axis, exec);
  return f.with_values(std::move(values));
}

GriddedFunction isotonize_pi(const GriddedFunction& f, const Ordering& pi, Execution exec) {
  detail::check_ordering(f, pi);
  auto values = f.values();
  const auto shape = f.shape();
  for (std::size_t k = pi.size(); k-- > 0;) pava_fibers(values, shape, pi.perm()[k], exec);
  return f.with_values(std::move(values));
}

GriddedFunction isotonize_average(const GriddedFunction& f, const OrderingSet& orderings,
                                  Execution exec) {
  std::vector<double> sum(f.size(), 0.0);
  for (const auto& pi : orderings.orderings()) {
    const auto r = isotonize_pi(f, pi, exec);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += r[i];
  }
  const double scale = 1.0 / static_cast<double>(orderings.size());
  for (double& v : sum) v *= scale;
  return f.with_values(std::move(sum));
}

GriddedFunction blend(const GriddedFunction& a, const GriddedFunction& b, double lambda) {
  if (!a.same_grid(b)) throw Error(Errc::GridMismatch, "blend on different grids");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw Error(Errc::LambdaOutOfRange, "lambda must lie in [0, 1]");
  if (lambda == 1.0) return a;
  if (lambda == 0.0) return b;
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = lambda * a[i] + (1.0 - lambda) * b[i];
  return a.with_values(std::move(out));
}

}  // namespace monotone

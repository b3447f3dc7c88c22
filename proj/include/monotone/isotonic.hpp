#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "monotone/grid.hpp"
#include "monotone/parallel.hpp"
#include "monotone/rearrangement.hpp"

namespace monotone {

struct WeightedSeq {
  std::vector<double> values;
  std::vector<double> weights;

  static WeightedSeq uniform(std::vector<double> values) {
    std::vector<double> w(values.size(), 1.0);
    return {std::move(values), std::move(w)};
  }
};

/// Weighted least-squares projection onto weakly increasing sequences
/// (pool adjacent violators, linear time).
std::vector<double> pava(const WeightedSeq& s);

/// In-place equal-weight PAVA on a fiber. No validation.
void pava_inplace(std::span<double> values);

/// max_{j<=i} min_{k>=i} of the weighted mean of values[j..k], by direct loops.
double isotonic_maxmin_oracle(const WeightedSeq& s, std::size_t i);

GriddedFunction isotonize_axis(const GriddedFunction& f, std::size_t axis,
                               Execution exec = Execution::parallel);

/// Fiber-wise PAVA in the same composition order as rearrange_pi.
GriddedFunction isotonize_pi(const GriddedFunction& f, const Ordering& pi,
                             Execution exec = Execution::parallel);

GriddedFunction isotonize_average(const GriddedFunction& f, const OrderingSet& orderings,
                                  Execution exec = Execution::parallel);

/// lambda * a + (1 - lambda) * b.
GriddedFunction blend(const GriddedFunction& a, const GriddedFunction& b, double lambda);

}  // namespace monotone

#pragma once

#include <string>
#include <string_view>

#include "monotone/grid.hpp"
#include "monotone/isotonic.hpp"
#include "monotone/rearrangement.hpp"

namespace monotone {

// One monotonization operator: rearrangement, isotonization, or the blend
// lambda * rearranged + (1 - lambda) * isotonized. All three are order
// preserving and distance reducing.
struct Method {
  enum class Kind { rearrange, isotonize, blend };
  Kind kind = Kind::rearrange;
  double lambda = 1.0;

  static Method rearrange() { return {Kind::rearrange, 1.0}; }
  static Method isotonize() { return {Kind::isotonize, 0.0}; }
  static Method blend(double lambda);
  /// "rearrange", "isotonize" or "blend"; lambda only used by blend.
  static Method parse(std::string_view name, double lambda = 0.5);

  std::string label() const;
};

/// Applies `method` averaged over `orderings` (d = 1 needs the single identity ordering).
GriddedFunction monotonize(const GriddedFunction& f, const Method& method,
                           const OrderingSet& orderings, Execution exec = Execution::parallel);

/// Convenience: all orderings for d <= 3.
GriddedFunction monotonize(const GriddedFunction& f, const Method& method,
                           Execution exec = Execution::parallel);

}  // namespace monotone

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "monotone/grid.hpp"
#include "monotone/monotonize.hpp"

namespace monotone {

/// Simultaneous confidence band: lower <= upper on a shared grid.
class Band {
public:
  Band(GriddedFunction lower, GriddedFunction upper);

  const GriddedFunction& lower() const noexcept { return lower_; }
  const GriddedFunction& upper() const noexcept { return upper_; }

private:
  GriddedFunction lower_;
  GriddedFunction upper_;
};

struct BandRecipe {
  GriddedFunction center;
  GriddedFunction std_error;
  double critical = 0.0;
  double alpha = 0.1;
};

/// center -/+ critical * stderr.
Band assemble_band(const BandRecipe& recipe);

/// max over nodes of |draw - center| / stderr, skipping nodes whose stderr is
/// below 1e-12. Returns +inf when every node is skipped.
double max_t_statistic(const GriddedFunction& center, const GriddedFunction& draw,
                       const GriddedFunction& std_error);

/// Order statistic at one-based rank ceil((1 - alpha) * n) of `stats`.
double upper_order_statistic(std::vector<double> stats, double alpha);

struct CriticalValue {
  double value = 0.0;
  std::size_t excluded_nodes = 0;  // nodes with stderr < 1e-12, left out of the max
};

/// Empirical (1 - alpha) quantile of the bootstrap max-t statistics.
CriticalValue critical_value_max_t(const GriddedFunction& center,
                                   std::span<const GriddedFunction> draws,
                                   const GriddedFunction& std_error, double alpha);

/// Monotonizes both end-point functions with the same operator.
Band monotonize_band(const Band& b, const Method& method, const OrderingSet& orderings,
                     Execution exec = Execution::parallel);

bool covers(const Band& b, const GriddedFunction& f);

double lp_length(const Band& b, LpIndex p);

}  // namespace monotone

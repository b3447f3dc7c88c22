#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "monotone/grid.hpp"
#include "monotone/parallel.hpp"

namespace monotone {

enum class Direction { increasing, decreasing };

/// Permutation of the axis indices 0..d-1 (stored zero-based; text form is one-based).
class Ordering {
public:
  explicit Ordering(std::vector<std::size_t> perm);
  /// Parses a one-based list such as "2,1".
  static Ordering parse(std::string_view text);

  const std::vector<std::size_t>& perm() const noexcept { return perm_; }
  std::size_t size() const noexcept { return perm_.size(); }

  friend bool operator==(const Ordering&, const Ordering&) = default;

private:
  std::vector<std::size_t> perm_;
};

class OrderingSet {
public:
  explicit OrderingSet(std::vector<Ordering> orderings);
  /// All d! orderings; only offered for d <= 3.
  static OrderingSet all(std::size_t d);
  /// "all" or a semicolon-separated list of one-based orderings, e.g. "1,2;2,1".
  static OrderingSet parse(std::string_view text, std::size_t d);

  const std::vector<Ordering>& orderings() const noexcept { return orderings_; }
  std::size_t size() const noexcept { return orderings_.size(); }

private:
  std::vector<Ordering> orderings_;
};

std::vector<double> rearrange_1d(std::vector<double> values,
                                 Direction direction = Direction::increasing);

/// Literal evaluation of f*(x) = inf{y : measure{f <= y} >= x} for a step
/// function with equal-measure steps. Kept as an independent check on sorting.
double rearrange_quantile_oracle(std::span<const double> values, double x);

GriddedFunction rearrange_axis(const GriddedFunction& f, std::size_t axis,
                               Execution exec = Execution::parallel);

/// Applies the axis rearrangements of pi innermost first: the last entry of
/// pi is rearranged first, the first entry last.
GriddedFunction rearrange_pi(const GriddedFunction& f, const Ordering& pi,
                             Execution exec = Execution::parallel);

GriddedFunction rearrange_average(const GriddedFunction& f, const OrderingSet& orderings,
                                  Execution exec = Execution::parallel);

struct ValueRange {
  double lo;
  double hi;
};

/// Lattice search for inf{|v-t'|^p + |v'-t|^p - |v-t|^p - |v'-t'|^p} over
/// v, v', t, t' in K with v' >= v + epsilon and t' >= t + epsilon.
double eta_p(ValueRange k, double epsilon, double p, std::size_t resolution);

namespace detail {
void require_equidistant(const GriddedFunction& f, std::size_t axis);
void check_ordering(const GriddedFunction& f, const Ordering& pi);
}  // namespace detail

}  // namespace monotone

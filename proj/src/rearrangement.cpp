#include "monotone/rearrangement.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

namespace monotone {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = text.find(sep, pos);
    parts.push_back(text.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Ordering::Ordering(std::vector<std::size_t> perm) : perm_(std::move(perm)) {
  if (perm_.empty()) throw Error(Errc::InvalidOrdering, "ordering is empty");
  std::vector<bool> seen(perm_.size(), false);
  for (auto a : perm_) {
    if (a >= perm_.size() || seen[a])
      throw Error(Errc::InvalidOrdering, "ordering is not a permutation of the axes");
    seen[a] = true;
  }
}

Ordering Ordering::parse(std::string_view text) {
  std::vector<std::size_t> perm;
  for (auto part : split(text, ',')) {
    part = trim(part);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size() || v == 0)
      throw Error(Errc::InvalidOrdering, "cannot parse ordering '" + std::string(text) + "'");
    perm.push_back(v - 1);
  }
  return Ordering(std::move(perm));
}

OrderingSet::OrderingSet(std::vector<Ordering> orderings) : orderings_(std::move(orderings)) {
  if (orderings_.empty()) throw Error(Errc::EmptyOrderingSet, "no orderings given");
  for (std::size_t i = 0; i < orderings_.size(); ++i) {
    if (orderings_[i].size() != orderings_.front().size())
      throw Error(Errc::InvalidOrdering, "orderings of different length");
    for (std::size_t j = 0; j < i; ++j)
      if (orderings_[i] == orderings_[j]) throw Error(Errc::InvalidOrdering, "duplicate ordering");
  }
}

OrderingSet OrderingSet::all(std::size_t d) {
  if (d == 0 || d > 3)
    throw Error(Errc::InvalidOrdering, "the full ordering set is only offered for d <= 3");
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<Ordering> out;
  do {
    out.emplace_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return OrderingSet(std::move(out));
}

OrderingSet OrderingSet::parse(std::string_view text, std::size_t d) {
  if (trim(text) == "all") return all(d);
  std::vector<Ordering> out;
  for (auto part : split(text, ';')) {
    out.push_back(Ordering::parse(trim(part)));
    if (out.back().size() != d)
      throw Error(Errc::InvalidOrdering, "ordering length does not match dimension " +
                                             std::to_string(d));
  }
  return OrderingSet(std::move(out));
}

std::vector<double> rearrange_1d(std::vector<double> values, Direction direction) {
  if (values.empty()) throw Error(Errc::EmptyInput, "rearrange_1d on empty input");
  for (double v : values)
    if (!std::isfinite(v)) throw Error(Errc::NonFiniteValue, "rearrange_1d input");
  if (direction == Direction::increasing)
    std::stable_sort(values.begin(), values.end());
  else
    std::stable_sort(values.begin(), values.end(), std::greater<>{});
  return values;
}

double rearrange_quantile_oracle(std::span<const double> values, double x) {
  if (values.empty()) throw Error(Errc::EmptyInput, "oracle on empty input");
  if (!(x > 0.0 && x <= 1.0)) throw Error(Errc::OutOfRange, "x must lie in (0, 1]");
  const double n = static_cast<double>(values.size());

  // Candidate levels: the distinct values, scanned upward. The measure of
  // {f <= y} is the count of steps at or below y, each of measure 1/n.
  std::vector<double> levels(values.begin(), values.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (double y : levels) {
    std::size_t count = 0;
    for (double v : values)
      if (v <= y) ++count;
    if (static_cast<double>(count) >= x * n - 1e-9) return y;
  }
  return levels.back();
}

namespace detail {

void require_equidistant(const GriddedFunction& f, std::size_t axis) {
  if (axis >= f.dim())
    throw Error(Errc::AxisOutOfRange, "axis " + std::to_string(axis + 1) + " of a " +
                                          std::to_string(f.dim()) + "-d function");
  if (!f.axes()[axis].equidistant())
    throw Error(Errc::NonEquidistantAxis,
                "axis " + std::to_string(axis + 1) + " is not equidistant");
}

void check_ordering(const GriddedFunction& f, const Ordering& pi) {
  if (pi.size() != f.dim())
    throw Error(Errc::InvalidOrdering, "ordering length " + std::to_string(pi.size()) +
                                           " for a " + std::to_string(f.dim()) + "-d function");
  for (auto a : pi.perm()) require_equidistant(f, a);
}

}  // namespace detail

namespace {

void sort_fibers(std::vector<double>& values, std::span<const std::size_t> shape,
                 std::size_t axis, Execution exec) {
  for_each_fiber(
      values, shape, axis, [](std::span<double> fiber) { std::sort(fiber.begin(), fiber.end()); },
      exec);
}

}  // namespace

GriddedFunction rearrange_axis(const GriddedFunction& f, std::size_t axis, Execution exec) {
  detail::require_equidistant(f, axis);
  auto values = f.values();
  const auto shape = f.shape();
  sort_fibers(values, shape, axis, exec);
  return f.with_values(std::move(values));
}

GriddedFunction rearrange_pi(const GriddedFunction& f, const Ordering& pi, Execution exec) {
  detail::check_ordering(f, pi);
  auto values = f.values();
  const auto shape = f.shape();
  for (std::size_t k = pi.size(); k-- > 0;) sort_fibers(values, shape, pi.perm()[k], exec);
  return f.with_values(std::move(values));
}

GriddedFunction rearrange_average(const GriddedFunction& f, const OrderingSet& orderings,
                                  Execution exec) {
  std::vector<double> sum(f.size(), 0.0);
  for (const auto& pi : orderings.orderings()) {
    const auto r = rearrange_pi(f, pi, exec);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += r[i];
  }
  const double scale = 1.0 / static_cast<double>(orderings.size());
  for (double& v : sum) v *= scale;
  return f.with_values(std::move(sum));
}

double eta_p(ValueRange k, double epsilon, double p, std::size_t resolution) {
  if (!(epsilon > 0.0)) throw Error(Errc::OutOfRange, "epsilon must be positive");
  if (!(p >= 1.0) || std::isinf(p)) throw Error(Errc::OutOfRange, "eta_p needs finite p >= 1");
  if (resolution < 2) throw Error(Errc::OutOfRange, "resolution must be at least 2");
  const double width = k.hi - k.lo;
  if (!(width >= epsilon))
    throw Error(Errc::InfeasibleConstraint, "value range is narrower than epsilon");

  std::vector<double> lattice(resolution);
  for (std::size_t i = 0; i < resolution; ++i)
    lattice[i] = k.lo + width * static_cast<double>(i) / static_cast<double>(resolution - 1);
  const double slack = kTolerance * std::max(1.0, width);
  auto pw = [p](double d) { return std::pow(std::abs(d), p); };

  double best = std::numeric_limits<double>::infinity();
  for (double v : lattice)
    for (double v2 : lattice) {
      if (v2 < v + epsilon - slack) continue;
      for (double t : lattice)
        for (double t2 : lattice) {
          if (t2 < t + epsilon - slack) continue;
          best = std::min(best, pw(v - t2) + pw(v2 - t) - pw(v - t) - pw(v2 - t2));
        }
    }
  return best;
}

}  // namespace monotone

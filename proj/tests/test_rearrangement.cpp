#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "monotone/error.hpp"
#include "monotone/parallel.hpp"
#include "monotone/rearrangement.hpp"
#include "support.hpp"

using namespace monotone;
using namespace monotone::testing;

namespace {

const LpIndex kNorms[] = {LpIndex(1), LpIndex(2), LpIndex(5), LpIndex::inf()};

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::IoError;
}

// f(0,0)=1, f(0,1)=3, f(1,0)=2, f(1,1)=0
GriddedFunction crossing_square() { return square({1, 3, 2, 0}, 2, 2); }

}  // namespace

TEST_CASE("one-dimensional rearrangement examples") {
  CHECK(rearrange_1d({3, 1, 2}) == std::vector<double>{1, 2, 3});
  CHECK(rearrange_1d({5, 5, 5}) == std::vector<double>{5, 5, 5});
  CHECK(rearrange_1d({2, 1}) == std::vector<double>{1, 2});
  CHECK(rearrange_1d({2, 1, 3}, Direction::decreasing) == std::vector<double>{3, 2, 1});
  CHECK(code_of([] { rearrange_1d({}); }) == Errc::EmptyInput);
}

TEST_CASE("quantile oracle examples") {
  const double v[] = {2, 1};
  CHECK(rearrange_quantile_oracle(v, 0.5) == 1.0);
  CHECK(rearrange_quantile_oracle(v, 1.0) == 2.0);
  const double single[] = {7};
  CHECK(rearrange_quantile_oracle(single, 0.3) == 7.0);
}

TEST_CASE("sorting agrees with the quantile oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = uniform_size(rng, 1, 50);
    const auto v = trial % 2 ? integer_values(rng, n) : uniform_values(rng, n);
    const auto sorted = rearrange_1d(v);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(i + 1) / static_cast<double>(n);
      REQUIRE(sorted[i] == rearrange_quantile_oracle(v, x));
    }
  }
}

TEST_CASE("axis rearrangement sorts each fiber") {
  // f(0,0)=4, f(0,1)=3, f(1,0)=2, f(1,1)=1; axis 1 is the first index.
  const auto f = square({4, 3, 2, 1}, 2, 2);
  const auto g = rearrange_axis(f, 0);
  CHECK(g.values() == std::vector<double>{2, 1, 4, 3});
  const auto line_f = line({3, 1, 2});
  CHECK(rearrange_axis(line_f, 0).values() == rearrange_1d(line_f.values()));
  const auto mono = square({0, 1, 2, 3}, 2, 2);
  CHECK(rearrange_axis(mono, 0) == mono);
  CHECK(rearrange_axis(mono, 1) == mono);
}

TEST_CASE("pi-rearrangement on the crossing square") {
  const auto f = crossing_square();
  CHECK(rearrange_pi(f, Ordering::parse("1,2")).values() == std::vector<double>{0, 2, 1, 3});
  CHECK(rearrange_pi(f, Ordering::parse("2,1")).values() == std::vector<double>{0, 1, 2, 3});
  const auto avg = rearrange_average(f, OrderingSet::parse("1,2;2,1", 2));
  CHECK(avg.values() == std::vector<double>{0, 1.5, 1.5, 3});
  CHECK(rearrange_average(f, OrderingSet::parse("2,1", 2)) == rearrange_pi(f, Ordering::parse("2,1")));
}

TEST_CASE("ordering validation") {
  CHECK(code_of([] { Ordering::parse("1,1"); }) == Errc::InvalidOrdering);
  CHECK(code_of([] { rearrange_pi(crossing_square(), Ordering::parse("1")); }) == Errc::InvalidOrdering);
  CHECK(code_of([] { OrderingSet(std::vector<Ordering>{}); }) == Errc::EmptyOrderingSet);
  CHECK(OrderingSet::all(3).size() == 6);
  CHECK(OrderingSet::parse("all", 2).size() == 2);
}

TEST_CASE("rearrangement rejects non-equidistant axes") {
  const GriddedFunction f({Axis({0.0, 0.1, 1.0})}, {3, 2, 1});
  CHECK(code_of([&] { rearrange_axis(f, 0); }) == Errc::NonEquidistantAxis);
  CHECK(code_of([&] { rearrange_axis(f, 1); }) == Errc::AxisOutOfRange);
}

TEST_CASE("fibers keep their multisets") {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_grid(rng, {uniform_size(rng, 1, 6), uniform_size(rng, 2, 6), uniform_size(rng, 2, 4)});
    for (std::size_t axis = 0; axis < f.dim(); ++axis) {
      const auto g = rearrange_axis(f, axis);
      const FiberLayout layout(f.shape(), axis);
      for (std::size_t k = 0; k < layout.count; ++k) {
        std::vector<double> a, b;
        for (std::size_t i = 0; i < layout.length; ++i) {
          a.push_back(f[layout.start(k) + i * layout.stride]);
          b.push_back(g[layout.start(k) + i * layout.stride]);
        }
        std::sort(a.begin(), a.end());
        REQUIRE(a == b);
      }
    }
  }
}

TEST_CASE("rearrangement never increases the error to a monotone target") {
  Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const auto f = random_grid(rng, {uniform_size(rng, 2, 30)});
    const auto f0 = random_monotone(rng, f);
    const auto r = f.with_values(rearrange_1d(f.values()));
    for (const auto p : kNorms) CHECK(leq(lp_distance(r, f0, p), lp_distance(f, f0, p)));
  }
}

TEST_CASE("strict gain when the estimate is decreasing where the target increases") {
  // Two blocks of equal measure delta = 1/2: the estimate drops by at least
  // eps between them, the target rises by at least eps. Values sit on the
  // lattice used by eta_p, so the pairwise gains are bounded by its minimum.
  Rng rng(24);
  const double eps = 0.2;
  const std::size_t res = 11;
  for (const double p : {2.0, 3.0}) {
    const double eta = eta_p({0.0, 1.0}, eps, p, res);
    CHECK(eta > 0.0);
    for (int trial = 0; trial < 200; ++trial) {
      const auto m = uniform_size(rng, 1, 6);
      std::vector<double> fhat, f0;
      std::uniform_int_distribution<int> lowv(0, 4), highv(6, 10);
      for (std::size_t i = 0; i < m; ++i) fhat.push_back(highv(rng) / 10.0);
      for (std::size_t i = 0; i < m; ++i) fhat.push_back(lowv(rng) / 10.0);
      auto lo = std::vector<int>(m), hi = std::vector<int>(m);
      for (auto& v : lo) v = lowv(rng);
      for (auto& v : hi) v = highv(rng);
      std::sort(lo.begin(), lo.end());
      std::sort(hi.begin(), hi.end());
      for (int v : lo) f0.push_back(v / 10.0);
      for (int v : hi) f0.push_back(v / 10.0);
      const auto F = line(fhat);
      const auto F0 = line(f0);
      const auto R = F.with_values(rearrange_1d(fhat));
      const double before = lp_distance_pow(F, F0, p);
      const double after = lp_distance_pow(R, F0, p);
      CHECK(leq(after, before - 0.5 * eta));
    }
  }
}

TEST_CASE("eta_p examples") {
  CHECK(eta_p({0.0, 1.0}, 0.5, 2.0, 21) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(eta_p({0.0, 1.0}, 1.0, 2.0, 21) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(code_of([] { eta_p({0.0, 1.0}, 1.5, 2.0, 11); }) == Errc::InfeasibleConstraint);
}

TEST_CASE("pi and average rearrangements improve multivariate estimates") {
  Rng rng(25);
  const auto all2 = OrderingSet::all(2);
  const auto all3 = OrderingSet::all(3);
  for (int trial = 0; trial < 200; ++trial) {
    const bool three = trial % 3 == 0;
    const auto f = three ? random_grid(rng, {uniform_size(rng, 2, 4), uniform_size(rng, 2, 4), uniform_size(rng, 2, 4)})
                         : random_grid(rng, {uniform_size(rng, 2, 8), uniform_size(rng, 2, 8)});
    const auto f0 = random_monotone(rng, f);
    const auto& set = three ? all3 : all2;
    for (const auto p : kNorms) {
      const double orig = lp_distance(f, f0, p);
      double mean_pi = 0.0;
      for (const auto& pi : set.orderings()) {
        const auto r = rearrange_pi(f, pi);
        CHECK(is_monotone(r));
        const double e = lp_distance(r, f0, p);
        CHECK(leq(e, orig));
        mean_pi += e / static_cast<double>(set.size());
      }
      const double avg = lp_distance(rearrange_average(f, set), f0, p);
      CHECK(leq(avg, mean_pi));
      CHECK(leq(avg, orig));
    }
  }
}

TEST_CASE("rearrangement preserves pointwise order") {
  Rng rng(26);
  const auto all2 = OrderingSet::all(2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_grid(rng, {uniform_size(rng, 2, 7), uniform_size(rng, 2, 7)});
    auto bump = uniform_values(rng, g.size(), 0.0, 2.0);
    for (std::size_t i = 0; i < bump.size(); ++i) bump[i] += g[i];
    const auto m = g.with_values(bump);
    for (const auto& pi : all2.orderings()) {
      const auto rg = rearrange_pi(g, pi);
      const auto rm = rearrange_pi(m, pi);
      for (std::size_t i = 0; i < g.size(); ++i) CHECK(rg[i] <= rm[i]);
    }
  }
}

TEST_CASE("rearrangement is idempotent") {
  Rng rng(27);
  const auto all2 = OrderingSet::all(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_grid(rng, {uniform_size(rng, 2, 7), uniform_size(rng, 2, 7)});
    for (const auto& pi : all2.orderings()) {
      const auto once = rearrange_pi(f, pi);
      CHECK(rearrange_pi(once, pi) == once);
    }
    const auto mono = random_monotone(rng, f);
    CHECK(rearrange_average(mono, OrderingSet::all(2)) == mono);
  }
}

TEST_CASE("serial and parallel kernels agree bitwise") {
  Rng rng(28);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_grid(rng, {uniform_size(rng, 2, 40), uniform_size(rng, 2, 40)});
    const auto set = OrderingSet::all(2);
    CHECK(rearrange_average(f, set, Execution::serial) == rearrange_average(f, set, Execution::parallel));
  }
}

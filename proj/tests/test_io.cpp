#include <doctest.h>

#include <sstream>

#include "monotone/csv.hpp"
#include "monotone/error.hpp"
#include "support.hpp"

using namespace monotone;
using namespace monotone::testing;

TEST_CASE("number formatting round-trips") {
  Rng rng(61);
  for (int i = 0; i < 2000; ++i) {
    const double v = uniform_values(rng, 1, -1e6, 1e6)[0] * std::pow(10.0, (i % 40) - 20);
    CHECK(csv::parse_double(csv::format_double(v)) == v);
  }
  CHECK(csv::format_double(0.1) == "0.1");
  CHECK(csv::parse_double(" +2.5 ") == 2.5);
  CHECK_THROWS_AS(csv::parse_double("abc"), Error);
  CHECK_THROWS_AS(csv::parse_double("1.5x"), Error);
  CHECK_THROWS_AS(csv::parse_double("nan"), Error);
}

TEST_CASE("grid CSV round-trip") {
  Rng rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_grid(rng, {uniform_size(rng, 1, 5), uniform_size(rng, 2, 5), uniform_size(rng, 2, 3)});
    std::stringstream s;
    csv::write_grid(s, f);
    CHECK(csv::read_grid(s) == f);
  }
}

TEST_CASE("grid CSV accepts any row order and rejects holes") {
  std::istringstream shuffled("x1,x2,value\n1,1,4\n0,0,1\n1,0,3\n0,1,2\n");
  const auto f = csv::read_grid(shuffled);
  CHECK(f.values() == std::vector<double>{1, 2, 3, 4});
  std::istringstream hole("x1,x2,value\n0,0,1\n0,1,2\n1,0,3\n");
  CHECK_THROWS_AS(csv::read_grid(hole), Error);
  std::istringstream dup("x1,value\n0,1\n0,2\n");
  CHECK_THROWS_AS(csv::read_grid(dup), Error);
  std::istringstream no_header("");
  CHECK_THROWS_AS(csv::read_grid(no_header), Error);
  std::istringstream ragged("x1,value\n0,1,2\n");
  CHECK_THROWS_AS(csv::read_grid(ragged), Error);
}

TEST_CASE("band and dataset CSV") {
  const Band b(line({0, 1, 2}), line({1, 1, 5}));
  std::stringstream s;
  csv::write_band(s, b);
  CHECK(s.str() == "x1,lower,upper\n0,0,1\n0.5,1,1\n1,2,5\n");
  const auto back = csv::read_band(s);
  CHECK(back.lower() == b.lower());
  CHECK(back.upper() == b.upper());

  std::istringstream d("x,y\n1,2\n3,4\n");
  const auto data = csv::read_dataset(d);
  CHECK(data.x == std::vector<double>{1, 3});
  CHECK(data.y == std::vector<double>{2, 4});
  std::istringstream wide("x,y,z\n1,2,3\n");
  CHECK_THROWS_AS(csv::read_dataset(wide), Error);
}

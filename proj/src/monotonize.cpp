#include "monotone/monotonize.hpp"

#include <charconv>
#include <string>

namespace monotone {

Method Method::blend(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw Error(Errc::LambdaOutOfRange, "lambda must lie in [0, 1]");
  return {Kind::blend, lambda};
}

Method Method::parse(std::string_view name, double lambda) {
  if (name == "rearrange") return rearrange();
  if (name == "isotonize") return isotonize();
  if (name == "blend") return blend(lambda);
  throw Error(Errc::InvalidSpec, "unknown monotonization method '" + std::string(name) + "'");
}

std::string Method::label() const {
  switch (kind) {
    case Kind::rearrange: return "R";
    case Kind::isotonize: return "I";
    case Kind::blend: {
      char buf[32];
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, lambda);
      (void)ec;
      return "B" + std::string(buf, end);
    }
  }
  return "?";
}

GriddedFunction monotonize(const GriddedFunction& f, const Method& method,
                           const OrderingSet& orderings, Execution exec) {
  switch (method.kind) {
    case Method::Kind::rearrange: return rearrange_average(f, orderings, exec);
    case Method::Kind::isotonize: return isotonize_average(f, orderings, exec);
    case Method::Kind::blend:
      return blend(rearrange_average(f, orderings, exec), isotonize_average(f, orderings, exec),
                   method.lambda);
  }
  return f;
}

GriddedFunction monotonize(const GriddedFunction& f, const Method& method, Execution exec) {
  return monotonize(f, method, OrderingSet::all(f.dim()), exec);
}

}  // namespace monotone

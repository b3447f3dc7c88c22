#pragma once

#include <cstddef>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace monotone {

// Every parallel kernel keeps a serial path. The two must produce
// bitwise-identical results; tests compare them directly.
enum class Execution { serial, parallel };

inline int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) noexcept {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

// Layout of the 1-d fibers of a row-major array along one axis.
struct FiberLayout {
  std::size_t count = 0;   // number of fibers
  std::size_t length = 0;  // nodes per fiber
  std::size_t stride = 0;  // distance between consecutive fiber nodes

  FiberLayout(std::span<const std::size_t> shape, std::size_t axis) {
    length = shape[axis];
    stride = 1;
    for (std::size_t k = axis + 1; k < shape.size(); ++k) stride *= shape[k];
    std::size_t total = 1;
    for (auto n : shape) total *= n;
    count = total / length;
  }

  std::size_t start(std::size_t fiber) const noexcept {
    return (fiber / stride) * length * stride + fiber % stride;
  }
};

// Applies fn(std::span<double>) to every fiber of `values` along `axis`,
// in place. Fibers are independent, so the schedule does not affect results.
template <class Fn>
void for_each_fiber(std::vector<double>& values, std::span<const std::size_t> shape,
                    std::size_t axis, Fn&& fn, Execution exec) {
  const FiberLayout layout(shape, axis);
  const auto count = static_cast<long long>(layout.count);
  auto body = [&](long long k, std::vector<double>& buffer) {
    const std::size_t base = layout.start(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < layout.length; ++i) buffer[i] = values[base + i * layout.stride];
    fn(std::span<double>(buffer));
    for (std::size_t i = 0; i < layout.length; ++i) values[base + i * layout.stride] = buffer[i];
  };

  if (exec == Execution::serial || count < 2) {
    std::vector<double> buffer(layout.length);
    for (long long k = 0; k < count; ++k) body(k, buffer);
    return;
  }
#pragma omp parallel
  {
    std::vector<double> buffer(layout.length);
#pragma omp for schedule(static)
    for (long long k = 0; k < count; ++k) body(k, buffer);
  }
}

}  // namespace monotone

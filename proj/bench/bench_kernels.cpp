// Timings for the OpenMP kernels against their serial reference twins.
// Build and run:  cmake --build build --target bpb_bench && ./build/bpb_bench

#include <chrono>
#include <cstdio>
#include <numbers>
#include <vector>

#include "bpb/complex_matrix.hpp"
#include "bpb/generators.hpp"
#include "bpb/kernels.hpp"
#include "bpb/linalg.hpp"
#include "bpb/rng.hpp"

using namespace bpb;

namespace {
template <typename Fn>
double time_ms(Fn&& fn, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.3f ms %10.3f ms   x%.2f\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}
}  // namespace

int main() {
  Rng rng(20240817);
  std::printf("%-28s %13s %13s   speedup\n", "kernel", "serial", "openmp");

  {
    const std::size_t n = 192;
    const ComplexMatrix a = random_complex_gaussian(n, rng);
    const ComplexMatrix b = random_complex_gaussian(n, rng);
    ComplexMatrix c(n);
    const double s = time_ms([&] { kernels::matmul_serial(a.data(), b.data(), c.data(), n); }, 5);
    const double p =
        time_ms([&] { kernels::matmul_parallel(a.data(), b.data(), c.data(), n); }, 5);
    row("matmul n=192", s, p);
  }

  {
    const std::size_t n = 48;
    const ComplexMatrix t = random_complex_gaussian(n, rng);
    const ComplexMatrix hr = hermitian_part(t);
    const ComplexMatrix hi = skew_part_hermitian(t);
    std::vector<double> angles(720), out(720);
    for (std::size_t k = 0; k < angles.size(); ++k)
      angles[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / angles.size();
    const double s =
        time_ms([&] { kernels::radius_profile_serial(hr, hi, angles, out.data()); }, 3);
    const double p =
        time_ms([&] { kernels::radius_profile_parallel(hr, hi, angles, out.data()); }, 3);
    row("radius profile n=48", s, p);
  }

  {
    const std::size_t count = 3000000;
    const auto fn = [](std::size_t i) {
      const double x = static_cast<double>(i) * 1e-7;
      return x - x * x;
    };
    const double s = time_ms([&] { kernels::scan_max_serial(count, fn); }, 3);
    const double p = time_ms([&] { kernels::scan_max_parallel(count, fn); }, 3);
    row("grid scan 3e6", s, p);
  }
  return 0;
}

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "gharm/impow_kernel.hpp"
#include "gharm/parallel.hpp"
#include "gharm/quadrature.hpp"

// Times the divergence-style kernel-mass scan with the serial reference map
// against the OpenMP map, and checks that both produce identical bits.

int main() {
  using namespace gharm;
  using clock = std::chrono::steady_clock;

  ImpowParams p;
  p.u = 1.0;
  std::vector<double> ys;
  for (int i = 0; i < 48; ++i) ys.push_back(3.0 + 0.25 * i);

  auto job = [&](std::size_t i) {
    const double y = ys[i];
    // gamma mass of |k(., y)| over a fixed band away from the singularity
    const auto integrand = [&](double x) {
      const KernelValue v = kernel_closed_form_1d(p, x, y, 1e-9, 100000);
      return std::abs(v.value) * std::exp(-x * x) / std::sqrt(M_PI);
    };
    return integrate_adaptive_real(integrand, -y + 1.0, y - 1.0, 1e-8, 100000)
        .real();
  };

  const auto t0 = clock::now();
  const std::vector<double> serial = serial_map<double>(ys.size(), job);
  const auto t1 = clock::now();
  const std::vector<double> parallel = parallel_map<double>(ys.size(), job);
  const auto t2 = clock::now();

  const double ms_serial =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  const double ms_parallel =
      std::chrono::duration<double, std::milli>(t2 - t1).count();

  bool identical = true;
  for (std::size_t i = 0; i < ys.size(); ++i)
    identical = identical && serial[i] == parallel[i];

  std::printf("jobs:            %zu\n", ys.size());
  std::printf("threads:         %d\n", thread_count());
  std::printf("serial_map:      %.1f ms\n", ms_serial);
  std::printf("parallel_map:    %.1f ms\n", ms_parallel);
  std::printf("speedup:         %.2fx\n", ms_serial / ms_parallel);
  std::printf("bit-identical:   %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}

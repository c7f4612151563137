// Wall-clock comparison of the serial reference paths against the OpenMP kernels.
// Usage: supralap_bench [--full]   (--full adds the 3000 x 3000 dense solve)

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>

#include <omp.h>

#include "supralap/block_dft.hpp"
#include "supralap/eigensolver.hpp"
#include "supralap/generators.hpp"
#include "supralap/reference.hpp"

using namespace supralap;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* what, double serial, double parallel) {
  std::printf("%-34s %10.4f s %10.4f s %8.2fx\n", what, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const bool full = argc > 1 && std::strcmp(argv[1], "--full") == 0;
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-34s %12s %12s %9s\n", "case", "reference", "parallel", "speedup");

  for (std::size_t layers : {4u, 8u}) {
    const auto net = er_temporal({100, 0.1, layers, 1}, InterLayerWeights::uniform(0.05, Coupling::path));
    const Matrix lap = supra_laplacian(net).entries;
    char label[64];
    std::snprintf(label, sizeof label, "eigh n=%zu", lap.rows());
    row(label, best_of(1, [&] { eigh(lap, {EighBackend::reference, kDefaultMaxSweeps}); }),
        best_of(1, [&] { eigh(lap); }));
  }

  {
    const auto net = er_temporal({100, 0.1, 30, 1}, InterLayerWeights::uniform(0.01, Coupling::path));
    row("supra-Laplacian N=100 T=30", best_of(3, [&] { reference::supra_laplacian(net); }),
        best_of(3, [&] { supra_laplacian(net); }));
  }

  const auto constant = constant_er_temporal({100, 0.3, 30, 1}, 1.0);
  const auto blocks = *as_constant_model(constant);
  row("block-dft N=100 T=30", best_of(3, [&] { full_spectrum_serial(blocks); }),
      best_of(3, [&] { full_spectrum(blocks); }));

  if (full) {
    const Matrix lap = supra_laplacian(constant).entries;
    const double dense = best_of(1, [&] { eigh(lap); });
    const double dft = best_of(3, [&] { full_spectrum(blocks); });
    std::printf("%-34s %10.4f s %10.4f s %8.2fx\n", "dense 3000 vs block-dft", dense, dft, dense / dft);
  }
  return 0;
}

// Compares the serial reference row loop against the OpenMP one on a TLS
// omega_c sweep and checks that both produce identical rows.

#include <omp.h>

#include <cstdio>
#include <cstring>
#include <vector>

#include "qar/io.hpp"

using namespace qar;

namespace {

SystemConfig base_config() {
  SystemConfig c;
  c.medium = Medium::TLS;
  c.omega_h = 1.0;
  c.g = 0.005;
  c.work.temperature = 3.0;
  c.hot.temperature = 2.0;
  c.cold.temperature = 1.0;
  c.work.kappa = c.hot.kappa = c.cold.kappa = 0.005;
  return c;
}

std::vector<double> run(int n, bool parallel, int threads, double* seconds) {
  const SystemConfig base = base_config();
  std::vector<double> j_c(static_cast<size_t>(n), 0.0);
  const auto body = [&](int i) {
    SystemConfig c = base;
    c.omega_c = 0.01 + 0.2 * double(i) / double(n);
    j_c[size_t(i)] = solve_config(c).j_c;
  };
  const double t0 = omp_get_wtime();
  if (parallel)
    for_each_index_parallel(n, threads, body);
  else
    for_each_index_serial(n, body);
  *seconds = omp_get_wtime() - t0;
  return j_c;
}

}  // namespace

int main(int argc, char** argv) {
  int n = 20000;
  if (argc > 1) n = std::atoi(argv[1]);
  const int threads = argc > 2 ? std::atoi(argv[2]) : omp_get_max_threads();

  double ts = 0.0, tp = 0.0;
  const std::vector<double> serial = run(n, false, 1, &ts);
  const std::vector<double> parallel = run(n, true, threads, &tp);

  if (std::memcmp(serial.data(), parallel.data(), serial.size() * sizeof(double)) != 0) {
    std::printf("FAIL: parallel rows differ from serial reference\n");
    return 1;
  }
  std::printf("rows             : %d\n", n);
  std::printf("threads          : %d\n", threads);
  std::printf("serial           : %.3f s  (%.0f rows/s)\n", ts, n / ts);
  std::printf("openmp           : %.3f s  (%.0f rows/s)\n", tp, n / tp);
  std::printf("speedup          : %.2fx\n", ts / tp);
  std::printf("rows identical   : yes\n");
  return 0;
}

// Compares the serial reference paths against the OpenMP kernels on the
// three data-parallel hot spots: Monte Carlo trials, the regime sweep, and
// vertex enumeration. Results must agree bit for bit; timings go to stdout.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gdof/sim.hpp"
#include "gdof/sweep.hpp"
#include "../tests/test_util.hpp"

using namespace gdof;

namespace {

double seconds(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SlsScheme corner_scheme() {
  SlsScheme s;
  s.variant = SlsVariant::D123;
  s.channel = testutil::reference_channel();
  s.params = {rat(9, 10), rat(1, 5), rat(0), rat(0)};
  s.split.d_single = {rat(1, 10), rat(1, 5), rat(1, 10)};
  s.split.d_pair = rat(1, 5);
  s.split.d_all = rat(9, 10);
  s.split.mu = {rat(1), rat(0)};
  s.split.xi = {rat(1), rat(0), rat(0)};
  return s;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (compiled without OpenMP)\n");
#endif

  {
    SimConfig serial_cfg;
    serial_cfg.trials = 20000;
    serial_cfg.parallel = false;
    SimConfig parallel_cfg = serial_cfg;
    parallel_cfg.parallel = true;
    SimResult a, b;
    double ts = seconds([&] { a = simulate_scheme(corner_scheme(), serial_cfg); });
    double tp = seconds([&] { b = simulate_scheme(corner_scheme(), parallel_cfg); });
    bool same = a.user_rate == b.user_rate && a.cells.size() == b.cells.size();
    for (std::size_t p = 0; same && p < a.cells.size(); ++p)
      for (std::size_t c = 0; c < a.cells[p].size(); ++c)
        same = same && a.cells[p][c].mean_norm_rate == b.cells[p][c].mean_norm_rate;
    std::printf("simulate  %d trials x %zu powers: serial %.3fs  parallel %.3fs  "
                "speedup %.2fx  identical %s\n",
                serial_cfg.trials, serial_cfg.P_grid.size(), ts, tp, ts / tp,
                same ? "yes" : "NO");
  }

  {
    Rational step = rat(1, 256);
    std::vector<SweepCell> a, b;
    double ts = seconds([&] { a = cyclic_sweep(step, false); });
    double tp = seconds([&] { b = cyclic_sweep(step, true); });
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i)
      same = a[i].sls == b[i].sls && a[i].tin == b[i].tin;
    std::printf("sweep     step 1/256 (%zu cells):    serial %.3fs  parallel %.3fs  "
                "speedup %.2fx  identical %s\n",
                a.size(), ts, tp, ts / tp, same ? "yes" : "NO");
  }

  {
    // A 4d polytope with enough facets to make subset enumeration visible.
    testutil::Rng rng(7);
    Polytope p = testutil::random_small_polytope(rng, 4, 14);
    std::vector<Point> a, b;
    double ts = seconds([&] { a = vertices(p, false); });
    double tp = seconds([&] { b = vertices(p, true); });
    std::printf("vertices  dim 4, %zu rows:           serial %.3fs  parallel %.3fs  "
                "speedup %.2fx  identical %s\n",
                p.hrep().size(), ts, tp, ts / tp, a == b ? "yes" : "NO");
  }
  return 0;
}

#include "gdof/sweep.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gdof {

std::vector<SweepCell> cyclic_sweep(const Rational& step, bool parallel) {
  if (!(step > 0 && step <= 1))
    throw std::invalid_argument("sweep step must satisfy 0 < step <= 1");
  Rational inv = Rational(1) / step;
  long n = mpz_class(inv.get_num() / inv.get_den()).get_si();
  // Grid points per axis: i*step for i = 0..n with n*step <= 1.
  while (Rational(n) * step > 1) --n;
  const long side = n + 1;
  std::vector<SweepCell> cells(side * side);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
#endif
  for (long idx = 0; idx < side * side; ++idx) {
    long i = idx / side, j = idx % side;
    Rational a = Rational(i) * step;
    Rational b = Rational(j) * step;
    ChannelMatrix ch = cyclic_channel(a, b);
    SweepCell cell;
    cell.a = a;
    cell.b = b;
    cell.sls = sls_conditions_any_labeling(ch);
    cell.tin = tin_optimal_ic(ch);
    cells[idx] = std::move(cell);
  }
  (void)parallel;
  return cells;
}

RegimeAreas regime_areas(int subdivisions, bool parallel) {
  if (subdivisions < 1) throw std::invalid_argument("subdivisions must be >= 1");
  auto cells = cyclic_sweep(rat(1, subdivisions), parallel);
  RegimeAreas out;
  out.grid_points = static_cast<long>(cells.size());
  long sls = 0, tin = 0;
  for (const auto& c : cells) {
    sls += c.sls ? 1 : 0;
    tin += c.tin ? 1 : 0;
  }
  out.sls_fraction = static_cast<double>(sls) / static_cast<double>(out.grid_points);
  out.tin_fraction = static_cast<double>(tin) / static_cast<double>(out.grid_points);
  return out;
}

}  // namespace gdof

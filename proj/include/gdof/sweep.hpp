#pragma once

#include <vector>

#include "gdof/channel.hpp"

namespace gdof {

struct SweepCell {
  Rational a, b;
  bool sls = false;  // SLS-optimality conditions hold for some antenna labeling
  bool tin = false;  // TIN-optimality condition for the companion IC
};

// Classifies the (a, b) grid of cyclic channels over [0,1]^2 with the given
// exact step. Grid points are i*step for i = 0..floor(1/step).
std::vector<SweepCell> cyclic_sweep(const Rational& step, bool parallel = true);

struct RegimeAreas {
  double sls_fraction = 0.0;
  double tin_fraction = 0.0;
  long grid_points = 0;
};

RegimeAreas regime_areas(int subdivisions, bool parallel = true);

}  // namespace gdof

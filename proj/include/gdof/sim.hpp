#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gdof/sls.hpp"

namespace gdof {

struct SimConfig {
  std::vector<double> P_grid = {1e4, 1e6, 1e8, 1e10};
  int trials = 200;
  double fade_lo = 0.5;  // bounded-density fading, uniform on [lo, hi]
  double fade_hi = 1.5;
  std::uint64_t seed = 1;
  bool parallel = true;
};

struct SimCell {
  int receiver = 0;
  std::string layer;
  double mean_norm_rate = 0.0;  // mean of log(1+SINR)/log(P) over trials
  double mean_rate_nats = 0.0;  // mean of 0.5*log(1+SINR)
  double mean_exponent = 0.0;   // mean of log(SINR)/log(P); the o(log P)
                                // terms sit here without the +1 of the rate
  double design_load = 0.0;
  double gap = 0.0;             // |mean_exponent - design_load|
};

struct SimResult {
  std::vector<double> P_grid;
  std::vector<std::vector<SimCell>> cells;          // per P, per (receiver, layer)
  std::vector<std::array<double, 3>> rx_sum_norm;   // per P, summed normalized rate
  std::vector<std::array<double, 3>> user_rate;     // per P, 0.5*log-rate per user
  std::vector<std::array<double, 3>> user_norm;     // per P, normalized per user
  std::array<double, 3> design_d{};                 // loads induced by the split
  std::uint64_t seed = 0;
  int trials = 0;
};

// Monte Carlo pass over the scheme's layered transmission under iid bounded
// fading. Rejects schemes whose exponent check fails; the asymptotic
// argument does not cover those.
SimResult simulate_scheme(const SlsScheme& s, const SimConfig& cfg);

// Per-user rate slope across the two largest grid powers, against
// 0.5*log(P). Needs at least two grid points.
std::array<double, 3> slope_estimate(const SimResult& r);

}  // namespace gdof

#pragma once

// Published crossing tables. A cell holds the reported crossing order, or 0
// for "N" (no crossing; also the diagonal). Rows and columns follow `params`.

#include <cmath>
#include <vector>

namespace reference {

struct Table {
  std::vector<double> params;
  std::vector<std::vector<double>> cells;

  bool crossed(std::size_t i, std::size_t j) const { return cells[i][j] > 0.0; }
};

// Ising, N = 10, equal cut, g = 0.94 .. 1.04.
inline const Table& ising_g094_104() {
  static const Table t{
      {0.94, 0.95, 0.96, 0.97, 0.98, 0.99, 1.00, 1.01, 1.02, 1.03, 1.04},
      {
          {0, 0.6, 0.5, 0.5, 0.5, 0.4, 0.4, 0.3, 0.3, 0.2, 0},
          {0.6, 0, 0.5, 0.5, 0.4, 0.4, 0.3, 0.3, 0.2, 0, 0},
          {0.5, 0.5, 0, 0.4, 0.4, 0.3, 0.3, 0.2, 0, 0, 0},
          {0.5, 0.5, 0.4, 0, 0.3, 0.3, 0.2, 0, 0, 0, 0},
          {0.5, 0.4, 0.4, 0.3, 0, 0.2, 0, 0, 0, 0, 0},
          {0.4, 0.4, 0.3, 0.3, 0.2, 0, 0, 0, 0, 0, 0},
          {0.4, 0.3, 0.3, 0.2, 0, 0, 0, 0, 0, 0, 0},
          {0.3, 0.3, 0.2, 0, 0, 0, 0, 0, 0, 0, 0},
          {0.3, 0.2, 0, 0, 0, 0, 0, 0, 0, 0, 0},
          {0.2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
          {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      }};
  return t;
}

// XY, gamma = sqrt(3)/2, N = 10, h = 0.7 .. 1.3.
inline const Table& xy_h07_13() {
  static const Table t{
      {0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3},
      {
          {0, 0, 0, 0, 0, 0.5, 1.6},
          {0, 0, 0, 0, 0, 1.6, 1.8},
          {0, 0, 0, 0, 1.4, 2.0, 1.9},
          {0, 0, 0, 0, 2.2, 2.2, 1.9},
          {0, 0, 1.4, 2.2, 0, 2.2, 1.9},
          {0.5, 1.6, 2.0, 2.2, 2.2, 0, 1.8},
          {1.6, 1.8, 1.9, 1.9, 1.9, 1.8, 0},
      }};
  return t;
}

// XY, gamma = sqrt(3)/2, N = 10, h = 1.7 .. 2.3.
inline const Table& xy_h17_23() {
  static const Table t{
      {1.7, 1.8, 1.9, 2.0, 2.1, 2.2, 2.3},
      {
          {0, 0.9, 0.8, 0.7, 0.6, 0.4, 0.2},
          {0.9, 0, 0.7, 0.6, 0.4, 0.3, 0},
          {0.8, 0.7, 0, 0.4, 0.2, 0, 0},
          {0.7, 0.6, 0.4, 0, 0, 0, 0},
          {0.6, 0.4, 0.2, 0, 0, 0, 0},
          {0.4, 0.3, 0, 0, 0, 0, 0},
          {0.2, 0, 0, 0, 0, 0, 0},
      }};
  return t;
}

// XXZ, N = 10, delta = 0.4 .. 1.6.
inline const Table& xxz_d04_16() {
  static const Table t{
      {0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6},
      {
          {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0.9, 0.5, 0.2},
          {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0.6, 0.2, 0},
          {0, 0, 0, 0, 0, 0, 0, 0, 0, 0.9, 0.2, 0, 0},
          {0, 0, 0, 0, 0, 0, 0, 0, 0, 0.2, 0, 0, 0},
          {0, 0, 0, 0, 0, 0, 0, 0, 0.2, 0, 0, 0, 0},
          {0, 0, 0, 0, 0, 0, 0, 0.2, 0, 0, 0, 0, 0},
          {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
          {0, 0, 0, 0, 0, 0.2, 0, 0, 0, 0, 0, 0, 0},
          {0, 0, 0, 0, 0.2, 0, 0, 0, 0, 0, 0, 0, 0},
          {0, 0, 0.9, 0.2, 0, 0, 0, 0, 0, 0, 0, 0, 0},
          {0.9, 0.6, 0.2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
          {0.5, 0.2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
          {0.2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      }};
  return t;
}

// Reported brackets.
struct Bracket {
  double lo;
  double hi;
  double step;
};

inline const std::vector<Bracket>& ising_cascade() {
  static const std::vector<Bracket> b{{0.98, 1.00, 0.01}, {0.987, 0.989, 0.001}, {0.9883, 0.9885, 0.0001}};
  return b;
}
inline constexpr Bracket kXyNearOne{0.999, 1.000, 0.001};
inline constexpr Bracket kXyNearTwo{2.010, 2.012, 0.001};
inline constexpr Bracket kXxz{0.9, 1.1, 0.1};
inline constexpr double kFssEstimate = 0.9949;

}  // namespace reference

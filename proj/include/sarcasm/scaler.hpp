#pragma once

#include <span>
#include <vector>

#include "sarcasm/matrix.hpp"

namespace sarcasm {

inline constexpr double kStdFloor = 1e-8;

// Per-feature standardization fitted on training rows.
struct Scaler {
  std::vector<double> mean;
  std::vector<double> std;

  std::vector<double> apply(std::span<const double> x) const;
  Matrix apply(const Matrix& x) const;

  bool operator==(const Scaler&) const = default;
};

// Population standard deviation, floored at kStdFloor.
Scaler fit_scaler(const Matrix& rows);

}  // namespace sarcasm

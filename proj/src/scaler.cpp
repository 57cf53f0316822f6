#include "sarcasm/scaler.hpp"

#include <algorithm>
#include <cmath>

namespace sarcasm {

Scaler fit_scaler(const Matrix& rows) {
  if (rows.rows() == 0) throw ValidationError("cannot fit a scaler on no rows");
  const std::size_t d = rows.cols();
  const double n = static_cast<double>(rows.rows());
  Scaler scaler;
  scaler.mean.assign(d, 0.0);
  scaler.std.assign(d, 0.0);
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    auto x = rows.row(i);
    for (std::size_t j = 0; j < d; ++j) scaler.mean[j] += x[j];
  }
  for (auto& m : scaler.mean) m /= n;
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    auto x = rows.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = x[j] - scaler.mean[j];
      scaler.std[j] += diff * diff;
    }
  }
  for (auto& s : scaler.std) s = std::max(std::sqrt(s / n), kStdFloor);
  return scaler;
}

std::vector<double> Scaler::apply(std::span<const double> x) const {
  if (x.size() != mean.size()) {
    throw ValidationError("expected d=" + std::to_string(mean.size()) + ", got " +
                          std::to_string(x.size()));
  }
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - mean[j]) / std[j];
  return out;
}

Matrix Scaler::apply(const Matrix& x) const {
  Matrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto scaled = apply(x.row(i));
    std::copy(scaled.begin(), scaled.end(), out.row(i).begin());
  }
  return out;
}

}  // namespace sarcasm

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sarcasm/error.hpp"
#include "sarcasm/label.hpp"

namespace sarcasm {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const double> data() const { return data_; }

  void append_row(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) {
      throw ValidationError("row length " + std::to_string(values.size()) +
                            " does not match matrix width " +
                            std::to_string(cols_));
    }
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  // Rows selected by index, in the given order.
  Matrix select_rows(std::span<const std::size_t> indices) const {
    Matrix out(indices.size(), cols_);
    for (std::size_t k = 0; k < indices.size(); ++k) {
      auto src = row(indices[k]);
      std::copy(src.begin(), src.end(), out.row(k).begin());
    }
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Feature rows with aligned labels; the training input of every classifier.
struct LabeledMatrix {
  Matrix features;
  std::vector<Label> labels;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return features.cols(); }

  LabeledMatrix subset(std::span<const std::size_t> indices) const {
    LabeledMatrix out;
    out.features = features.select_rows(indices);
    out.labels.reserve(indices.size());
    for (auto i : indices) out.labels.push_back(labels[i]);
    return out;
  }
};

// Throws unless the matrix is nonempty, aligned, and (when required)
// contains both classes.
void validate_training_data(const LabeledMatrix& data, bool require_both_classes);

}  // namespace sarcasm

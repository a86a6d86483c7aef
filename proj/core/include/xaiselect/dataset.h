// Copyright 2026 The xaiselect Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XAISELECT_DATASET_H_
#define XAISELECT_DATASET_H_

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "xaiselect/common.h"

namespace xaiselect::data {

using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Observation matrix stored dense or sparse. Consumers go through the
// accessors and never need to know which layout is held.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  explicit FeatureMatrix(DenseMatrix dense) : storage_(std::move(dense)) {}
  explicit FeatureMatrix(SparseMatrix sparse) : storage_(std::move(sparse)) {}

  std::size_t rows() const;
  std::size_t cols() const;
  bool is_sparse() const { return std::holds_alternative<SparseMatrix>(storage_); }

  double at(std::size_t row, std::size_t col) const;
  Eigen::VectorXd Row(std::size_t row) const;
  // Copies of the selected rows, in the given order.
  DenseMatrix DenseRows(const std::vector<std::size_t>& rows) const;
  DenseMatrix ToDense() const;
  double Density() const;

  const DenseMatrix& dense() const { return std::get<DenseMatrix>(storage_); }
  const SparseMatrix& sparse() const { return std::get<SparseMatrix>(storage_); }

 private:
  std::variant<DenseMatrix, SparseMatrix> storage_;
};

// Matrices with density below this are stored sparse.
inline constexpr double kSparseDensityThreshold = 0.25;

// Immutable after construction; shareable across readers.
struct Dataset {
  FeatureMatrix observations;
  Eigen::VectorXd labels;
  std::vector<std::string> feature_names;
  // Column statistics of `observations` as currently stored (population std).
  Eigen::VectorXd feature_mean;
  Eigen::VectorXd feature_std;
  // Statistics of the original, unstandardized values.
  Eigen::VectorXd source_mean;
  Eigen::VectorXd source_std;
  Task task = Task::kRegression;
  bool standardized = false;
  // Optional per-row source text (documents for TF-IDF data).
  std::vector<std::string> row_text;

  std::size_t n() const { return observations.rows(); }
  std::size_t d() const { return observations.cols(); }

  Eigen::VectorXd Row(std::size_t i) const { return observations.Row(i); }
  // Maps a standardized row back to source units.
  Eigen::VectorXd Unstandardize(const Eigen::VectorXd& row) const;
  // Rows `indices` as a new dataset; statistics recomputed on the subset.
  Dataset Subset(const std::vector<std::size_t>& indices) const;
  // Throws InvalidInput when an invariant is broken.
  void Validate() const;
};

// Population mean and standard deviation of each column.
void ComputeColumnStats(const FeatureMatrix& m, Eigen::VectorXd* mean, Eigen::VectorXd* stddev);

Dataset LoadCsv(const std::string& path, const std::string& target_column, Task task);
// Same as LoadCsv over an in-memory CSV document; `source` names it in errors.
Dataset ParseCsv(const std::string& text, const std::string& target_column, Task task,
                 const std::string& source = "<memory>");

// (x - mean) / std per column; zero-variance columns become all zeros.
Dataset Standardize(const Dataset& ds);

Dataset TfidfVectorize(const std::vector<std::string>& documents, std::size_t min_doc_freq);
std::vector<std::string> ReadLines(const std::string& path);
// Lowercase, split on anything that is not an ASCII letter or digit.
std::vector<std::string> Tokenize(const std::string& document);

// Reads a one-column CSV of numbers. A non-numeric first line is a header.
std::vector<double> LoadColumn(const std::string& path);

struct ConfusionSplit {
  std::vector<std::size_t> true_positives;
  std::vector<std::size_t> true_negatives;
  std::vector<std::size_t> false_positives;
  std::vector<std::size_t> false_negatives;

  const std::vector<std::size_t>& Cell(const std::string& name) const;
};

// Class 1 is positive. Labels and predictions must be 0/1.
ConfusionSplit MakeConfusionSplit(const Eigen::VectorXd& labels, const std::vector<double>& predictions);

}  // namespace xaiselect::data

#endif  // XAISELECT_DATASET_H_

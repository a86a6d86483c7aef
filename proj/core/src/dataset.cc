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

#include "xaiselect/dataset.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace xaiselect {

std::string ToString(Task task) {
  return task == Task::kRegression ? "regression" : "classification";
}

Task ParseTask(const std::string& text) {
  if (text == "regression") return Task::kRegression;
  if (text == "classification") return Task::kClassification;
  throw InvalidInput("unknown task '" + text + "' (expected regression or classification)");
}

namespace data {
namespace {

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> SplitCommas(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(Trim(std::string_view(line).substr(start)));
      break;
    }
    out.push_back(Trim(std::string_view(line).substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

bool ParseDouble(const std::string& cell, double* value) {
  if (cell.empty()) return false;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, *value);
  return ec == std::errc() && ptr == last && std::isfinite(*value);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> SplitLines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::size_t FeatureMatrix::rows() const {
  return std::visit([](const auto& m) { return static_cast<std::size_t>(m.rows()); }, storage_);
}

std::size_t FeatureMatrix::cols() const {
  return std::visit([](const auto& m) { return static_cast<std::size_t>(m.cols()); }, storage_);
}

double FeatureMatrix::at(std::size_t row, std::size_t col) const {
  if (is_sparse()) return sparse().coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  return dense()(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

Eigen::VectorXd FeatureMatrix::Row(std::size_t row) const {
  const auto r = static_cast<Eigen::Index>(row);
  if (!is_sparse()) return dense().row(r).transpose();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cols()));
  for (SparseMatrix::InnerIterator it(sparse(), r); it; ++it) out[it.col()] = it.value();
  return out;
}

DenseMatrix FeatureMatrix::DenseRows(const std::vector<std::size_t>& rows) const {
  DenseMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols()));
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = Row(rows[i]).transpose();
  return out;
}

DenseMatrix FeatureMatrix::ToDense() const {
  if (!is_sparse()) return dense();
  return DenseMatrix(sparse());
}

double FeatureMatrix::Density() const {
  const double cells = static_cast<double>(rows()) * static_cast<double>(cols());
  if (cells == 0) return 0.0;
  if (is_sparse()) return static_cast<double>(sparse().nonZeros()) / cells;
  return static_cast<double>((dense().array() != 0.0).count()) / cells;
}

void ComputeColumnStats(const FeatureMatrix& m, Eigen::VectorXd* mean, Eigen::VectorXd* stddev) {
  const auto d = static_cast<Eigen::Index>(m.cols());
  const double n = static_cast<double>(m.rows());
  *mean = Eigen::VectorXd::Zero(d);
  *stddev = Eigen::VectorXd::Zero(d);
  if (m.rows() == 0) return;
  if (!m.is_sparse()) {
    *mean = m.dense().colwise().mean().transpose();
    for (Eigen::Index j = 0; j < d; ++j) {
      const double var = (m.dense().col(j).array() - (*mean)[j]).square().mean();
      (*stddev)[j] = std::sqrt(var);
    }
    return;
  }
  // Two passes over the nonzeros; implicit zeros contribute mean^2 each.
  Eigen::VectorXd nnz = Eigen::VectorXd::Zero(d);
  const SparseMatrix& s = m.sparse();
  for (Eigen::Index r = 0; r < s.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(s, r); it; ++it) {
      (*mean)[it.col()] += it.value();
      nnz[it.col()] += 1.0;
    }
  }
  *mean /= n;
  Eigen::VectorXd ss = Eigen::VectorXd::Zero(d);
  for (Eigen::Index r = 0; r < s.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(s, r); it; ++it) {
      const double dv = it.value() - (*mean)[it.col()];
      ss[it.col()] += dv * dv;
    }
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    ss[j] += (n - nnz[j]) * (*mean)[j] * (*mean)[j];
    (*stddev)[j] = std::sqrt(ss[j] / n);
  }
}

Eigen::VectorXd Dataset::Unstandardize(const Eigen::VectorXd& row) const {
  if (!standardized) return row;
  return (row.array() * source_std.array() + source_mean.array()).matrix();
}

Dataset Dataset::Subset(const std::vector<std::size_t>& indices) const {
  Dataset out;
  if (observations.is_sparse()) {
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t i = 0; i < indices.size(); ++i) {
      for (SparseMatrix::InnerIterator it(observations.sparse(), static_cast<Eigen::Index>(indices[i])); it; ++it) {
        triplets.emplace_back(static_cast<int>(i), static_cast<int>(it.col()), it.value());
      }
    }
    SparseMatrix s(static_cast<Eigen::Index>(indices.size()), static_cast<Eigen::Index>(d()));
    s.setFromTriplets(triplets.begin(), triplets.end());
    out.observations = FeatureMatrix(std::move(s));
  } else {
    out.observations = FeatureMatrix(observations.DenseRows(indices));
  }
  out.labels.resize(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.labels[static_cast<Eigen::Index>(i)] = labels[static_cast<Eigen::Index>(indices[i])];
    if (!row_text.empty()) out.row_text.push_back(row_text[indices[i]]);
  }
  out.feature_names = feature_names;
  ComputeColumnStats(out.observations, &out.feature_mean, &out.feature_std);
  out.source_mean = source_mean;
  out.source_std = source_std;
  out.task = task;
  out.standardized = standardized;
  return out;
}

void Dataset::Validate() const {
  if (static_cast<std::size_t>(labels.size()) != n()) {
    throw InvalidInput("dataset has " + std::to_string(n()) + " rows but " + std::to_string(labels.size()) +
                       " labels");
  }
  if (feature_names.size() != d()) throw InvalidInput("feature name count does not match column count");
  std::set<std::string> seen;
  for (const auto& name : feature_names) {
    if (!seen.insert(name).second) throw InvalidInput("duplicate feature name: " + name);
  }
  if ((feature_std.array() < 0).any()) throw InvalidInput("negative feature std");
}

Dataset ParseCsv(const std::string& text, const std::string& target_column, Task task, const std::string& source) {
  const std::vector<std::string> lines = SplitLines(text);
  if (lines.empty() || Trim(lines[0]).empty()) throw InvalidInput(source + ": missing header row");
  const std::vector<std::string> header = SplitCommas(lines[0]);
  const auto target_it = std::find(header.begin(), header.end(), target_column);
  if (target_it == header.end()) {
    throw InvalidInput(source + ": target column '" + target_column + "' not found in header");
  }
  const auto target_idx = static_cast<std::size_t>(target_it - header.begin());

  std::vector<std::vector<double>> rows;
  std::vector<double> targets;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (Trim(lines[li]).empty()) continue;
    const std::vector<std::string> cells = SplitCommas(lines[li]);
    if (cells.size() != header.size()) {
      throw InvalidInput(source + ": row " + std::to_string(li + 1) + " has " + std::to_string(cells.size()) +
                         " cells, header has " + std::to_string(header.size()));
    }
    std::vector<double> row;
    row.reserve(header.size() - 1);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v = 0.0;
      if (!ParseDouble(cells[c], &v)) {
        throw InvalidInput(source + ": non-numeric cell at row " + std::to_string(li + 1) + ", column '" +
                           header[c] + "': '" + cells[c] + "'");
      }
      if (c == target_idx) {
        targets.push_back(v);
      } else {
        row.push_back(v);
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidInput(source + ": dataset has no rows");

  Dataset ds;
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto d = static_cast<Eigen::Index>(header.size() - 1);
  DenseMatrix x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  ds.observations = FeatureMatrix(std::move(x));
  ds.labels = Eigen::Map<const Eigen::VectorXd>(targets.data(), n);
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != target_idx) ds.feature_names.push_back(header[c]);
  }
  if (task == Task::kClassification) {
    for (double y : targets) {
      if (y != std::floor(y) || y < 0) throw InvalidInput(source + ": classification labels must be class ids");
    }
  }
  ds.task = task;
  ComputeColumnStats(ds.observations, &ds.feature_mean, &ds.feature_std);
  ds.source_mean = ds.feature_mean;
  ds.source_std = ds.feature_std;
  ds.Validate();
  return ds;
}

Dataset LoadCsv(const std::string& path, const std::string& target_column, Task task) {
  return ParseCsv(ReadFile(path), target_column, task, path);
}

Dataset Standardize(const Dataset& ds) {
  Dataset out = ds;
  const Eigen::Index d = static_cast<Eigen::Index>(ds.d());
  auto scale_of = [&](Eigen::Index j) { return ds.feature_std[j] > 0 ? 1.0 / ds.feature_std[j] : 0.0; };
  // Centering destroys sparsity, so the standardized copy is always dense.
  DenseMatrix x = ds.observations.ToDense();
  for (Eigen::Index j = 0; j < d; ++j) x.col(j) = (x.col(j).array() - ds.feature_mean[j]) * scale_of(j);
  out.observations = FeatureMatrix(std::move(x));
  out.standardized = true;
  ComputeColumnStats(out.observations, &out.feature_mean, &out.feature_std);
  return out;
}

std::vector<std::string> Tokenize(const std::string& document) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : document) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 128 && std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

Dataset TfidfVectorize(const std::vector<std::string>& documents, std::size_t min_doc_freq) {
  if (documents.empty()) throw InvalidInput("TF-IDF: empty corpus");
  std::vector<std::map<std::string, int>> counts(documents.size());
  std::map<std::string, std::size_t> doc_freq;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    for (auto& tok : Tokenize(documents[i])) ++counts[i][tok];
    for (const auto& [tok, _] : counts[i]) ++doc_freq[tok];
  }
  std::map<std::string, int> vocab;
  std::vector<double> idf;
  const double n = static_cast<double>(documents.size());
  for (const auto& [tok, df] : doc_freq) {
    if (df < min_doc_freq) continue;
    vocab.emplace(tok, static_cast<int>(idf.size()));
    idf.push_back(std::log(n / static_cast<double>(df)));
  }
  if (vocab.empty()) throw InvalidInput("TF-IDF: all tokens filtered out");

  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    std::vector<std::pair<int, double>> row;
    double norm2 = 0.0;
    for (const auto& [tok, count] : counts[i]) {
      auto it = vocab.find(tok);
      if (it == vocab.end()) continue;
      const double w = count * idf[static_cast<std::size_t>(it->second)];
      if (w == 0.0) continue;
      row.emplace_back(it->second, w);
      norm2 += w * w;
    }
    const double norm = std::sqrt(norm2);
    for (const auto& [col, w] : row) triplets.emplace_back(static_cast<int>(i), col, w / norm);
  }
  SparseMatrix s(static_cast<Eigen::Index>(documents.size()), static_cast<Eigen::Index>(vocab.size()));
  s.setFromTriplets(triplets.begin(), triplets.end());

  Dataset ds;
  ds.feature_names.resize(vocab.size());
  for (const auto& [tok, col] : vocab) ds.feature_names[static_cast<std::size_t>(col)] = tok;
  const double density = static_cast<double>(s.nonZeros()) / (n * static_cast<double>(vocab.size()));
  if (density < kSparseDensityThreshold) {
    ds.observations = FeatureMatrix(std::move(s));
  } else {
    ds.observations = FeatureMatrix(DenseMatrix(s));
  }
  ds.labels = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(documents.size()));
  ds.task = Task::kClassification;
  ds.row_text = documents;
  ComputeColumnStats(ds.observations, &ds.feature_mean, &ds.feature_std);
  ds.source_mean = ds.feature_mean;
  ds.source_std = ds.feature_std;
  return ds;
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::vector<std::string> lines = SplitLines(ReadFile(path));
  while (!lines.empty() && Trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

std::vector<double> LoadColumn(const std::string& path) {
  const std::vector<std::string> lines = ReadLines(path);
  std::vector<double> values;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string cell = Trim(lines[i]);
    double v = 0.0;
    if (!ParseDouble(cell, &v)) {
      if (i == 0) continue;
      throw InvalidInput(path + ": non-numeric value at row " + std::to_string(i + 1) + ": '" + cell + "'");
    }
    values.push_back(v);
  }
  return values;
}

const std::vector<std::size_t>& ConfusionSplit::Cell(const std::string& name) const {
  if (name == "true_positives") return true_positives;
  if (name == "true_negatives") return true_negatives;
  if (name == "false_positives") return false_positives;
  if (name == "false_negatives") return false_negatives;
  throw InvalidInput("unknown confusion cell '" + name + "'");
}

ConfusionSplit MakeConfusionSplit(const Eigen::VectorXd& labels, const std::vector<double>& predictions) {
  if (static_cast<std::size_t>(labels.size()) != predictions.size()) {
    throw InvalidInput("confusion split: " + std::to_string(predictions.size()) + " predictions for " +
                       std::to_string(labels.size()) + " labels");
  }
  ConfusionSplit split;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double y = labels[static_cast<Eigen::Index>(i)];
    const double p = predictions[i];
    if ((y != 0.0 && y != 1.0) || (p != 0.0 && p != 1.0)) {
      throw InvalidInput("confusion split requires binary labels and predictions (row " + std::to_string(i) + ")");
    }
    if (y == 1.0) {
      (p == 1.0 ? split.true_positives : split.false_negatives).push_back(i);
    } else {
      (p == 1.0 ? split.false_positives : split.true_negatives).push_back(i);
    }
  }
  return split;
}

}  // namespace data
}  // namespace xaiselect

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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

namespace xaiselect::data {
namespace {

Dataset ThreeRows() {
  return ParseCsv("a,b,y\n2,5,0\n4,5,1\n6,5,0\n", "y", Task::kClassification);
}

TEST(ParseCsvTest, SplitsTargetFromFeatures) {
  const Dataset ds = ThreeRows();
  EXPECT_EQ(ds.n(), 3u);
  EXPECT_EQ(ds.d(), 2u);
  EXPECT_EQ(ds.feature_names, (std::vector<std::string>{"a", "b"}));
  EXPECT_DOUBLE_EQ(ds.labels[1], 1.0);
  EXPECT_DOUBLE_EQ(ds.feature_mean[0], 4.0);
  EXPECT_NEAR(ds.feature_std[0], std::sqrt(8.0 / 3.0), 1e-12);
  EXPECT_DOUBLE_EQ(ds.feature_std[1], 0.0);
}

TEST(ParseCsvTest, TargetMayBeAnyColumn) {
  const Dataset ds = ParseCsv("y,a\n1.5,2\n2.5,3\n", "y", Task::kRegression);
  EXPECT_EQ(ds.feature_names, (std::vector<std::string>{"a"}));
  EXPECT_DOUBLE_EQ(ds.labels[1], 2.5);
}

TEST(ParseCsvTest, RejectsMalformedInput) {
  EXPECT_THROW(ParseCsv("", "y", Task::kRegression), InvalidInput);
  EXPECT_THROW(ParseCsv("a,b\n1,2\n", "y", Task::kRegression), InvalidInput);
  EXPECT_THROW(ParseCsv("a,y\n1,2,3\n", "y", Task::kRegression), InvalidInput);
  EXPECT_THROW(ParseCsv("a,y\n1,x\n", "y", Task::kRegression), InvalidInput);
  EXPECT_THROW(ParseCsv("a,y\n", "y", Task::kRegression), InvalidInput);
  EXPECT_THROW(ParseCsv("a,y\n1,0.5\n", "y", Task::kClassification), InvalidInput);
  EXPECT_THROW(ParseCsv("a,a,y\n1,2,0\n", "y", Task::kRegression), InvalidInput);
}

TEST(ParseCsvTest, ErrorNamesTheRow) {
  try {
    ParseCsv("a,y\n1,2\n3,oops\n", "y", Task::kRegression, "mem.csv");
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos) << e.what();
  }
}

TEST(StandardizeTest, ZScoresMatchHandComputedValues) {
  const Dataset ds = Standardize(ThreeRows());
  const double z = std::sqrt(1.5);
  EXPECT_NEAR(ds.observations.at(0, 0), -z, 1e-12);
  EXPECT_NEAR(ds.observations.at(1, 0), 0.0, 1e-12);
  EXPECT_NEAR(ds.observations.at(2, 0), z, 1e-12);
  EXPECT_TRUE(ds.standardized);
}

TEST(StandardizeTest, ConstantColumnBecomesZero) {
  const Dataset ds = Standardize(ThreeRows());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(ds.observations.at(i, 1), 0.0);
  EXPECT_EQ(ds.feature_std[1], 0.0);
}

TEST(StandardizeTest, StatisticsAreZeroMeanUnitStd) {
  const Dataset ds = Standardize(ParseCsv("a,b,y\n1,10,0\n2,30,1\n7,20,0\n9,90,1\n", "y", Task::kRegression));
  for (Eigen::Index j = 0; j < 2; ++j) {
    EXPECT_NEAR(ds.feature_mean[j], 0.0, 1e-12);
    EXPECT_NEAR(ds.feature_std[j], 1.0, 1e-12);
  }
}

TEST(StandardizeTest, IsIdempotent) {
  const Dataset once = Standardize(ThreeRows());
  const Dataset twice = Standardize(once);
  EXPECT_LT((once.observations.dense() - twice.observations.dense()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(StandardizeTest, UnstandardizeRecoversSourceValues) {
  const Dataset raw = ThreeRows();
  const Dataset ds = Standardize(raw);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LT((ds.Unstandardize(ds.Row(i)) - raw.Row(i)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(TfidfTest, WeightsFollowLogInverseDocumentFrequency) {
  const std::vector<std::string> docs = {"free prize now", "call me now", "free free call"};
  const Dataset ds = TfidfVectorize(docs, 1);
  // Vocabulary is sorted: call free me now prize.
  ASSERT_EQ(ds.feature_names, (std::vector<std::string>{"call", "free", "me", "now", "prize"}));
  const double l32 = std::log(1.5), l3 = std::log(3.0);
  // Document 0: free, now each log(3/2); prize log 3.
  const double norm0 = std::sqrt(2 * l32 * l32 + l3 * l3);
  EXPECT_NEAR(ds.observations.at(0, 1), l32 / norm0, 1e-12);
  EXPECT_NEAR(ds.observations.at(0, 4), l3 / norm0, 1e-12);
  EXPECT_EQ(ds.observations.at(0, 0), 0.0);
  // Document 2: free twice.
  const double norm2 = std::sqrt(4 * l32 * l32 + l32 * l32);
  EXPECT_NEAR(ds.observations.at(2, 1), 2 * l32 / norm2, 1e-12);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(ds.Row(i).norm(), 1.0, 1e-12);
  EXPECT_EQ(ds.row_text, docs);
}

TEST(TfidfTest, MinDocFreqDropsRareTokens) {
  const Dataset ds = TfidfVectorize({"a b", "a c", "a b d"}, 2);
  EXPECT_EQ(ds.feature_names, (std::vector<std::string>{"a", "b"}));
  EXPECT_THROW(TfidfVectorize({"x", "y"}, 2), InvalidInput);
  EXPECT_THROW(TfidfVectorize({}, 1), InvalidInput);
}

TEST(TfidfTest, TokenizerLowercasesAndSplitsOnPunctuation) {
  EXPECT_EQ(Tokenize("Hello, WORLD!! 42x"), (std::vector<std::string>{"hello", "world", "42x"}));
}

TEST(TfidfTest, SparseStorageAgreesWithDense) {
  std::vector<std::string> docs;
  for (int i = 0; i < 40; ++i) docs.push_back("w" + std::to_string(i) + " common w" + std::to_string(i + 1));
  const Dataset ds = TfidfVectorize(docs, 1);
  ASSERT_TRUE(ds.observations.is_sparse());
  const DenseMatrix dense = ds.observations.ToDense();
  Eigen::VectorXd mean, stddev;
  ComputeColumnStats(FeatureMatrix(dense), &mean, &stddev);
  EXPECT_LT((mean - ds.feature_mean).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((stddev - ds.feature_std).cwiseAbs().maxCoeff(), 1e-12);
  const Dataset sub = ds.Subset({3, 1});
  EXPECT_TRUE(sub.observations.is_sparse());
  EXPECT_LT((sub.Row(0) - ds.Row(3)).cwiseAbs().maxCoeff(), 0.0 + 1e-15);
}

TEST(SubsetTest, RecomputesStatisticsOnSelectedRows) {
  const Dataset ds = ThreeRows();
  const Dataset sub = ds.Subset({2, 0});
  EXPECT_EQ(sub.n(), 2u);
  EXPECT_DOUBLE_EQ(sub.observations.at(0, 0), 6.0);
  EXPECT_DOUBLE_EQ(sub.feature_mean[0], 4.0);
  EXPECT_DOUBLE_EQ(sub.feature_std[0], 2.0);
  EXPECT_DOUBLE_EQ(sub.labels[0], 0.0);
}

TEST(ConfusionSplitTest, AssignsEveryRowToOneCell) {
  Eigen::VectorXd labels(6);
  labels << 1, 1, 0, 0, 1, 0;
  const std::vector<double> preds = {1, 0, 1, 0, 1, 0};
  const ConfusionSplit s = MakeConfusionSplit(labels, preds);
  EXPECT_EQ(s.true_positives, (std::vector<std::size_t>{0, 4}));
  EXPECT_EQ(s.false_negatives, (std::vector<std::size_t>{1}));
  EXPECT_EQ(s.false_positives, (std::vector<std::size_t>{2}));
  EXPECT_EQ(s.true_negatives, (std::vector<std::size_t>{3, 5}));
  EXPECT_EQ(&s.Cell("true_positives"), &s.true_positives);
  EXPECT_THROW(s.Cell("hits"), InvalidInput);
}

TEST(ConfusionSplitTest, RejectsNonBinaryOrMisalignedInput) {
  Eigen::VectorXd labels(2);
  labels << 1, 2;
  EXPECT_THROW(MakeConfusionSplit(labels, {1, 1}), InvalidInput);
  EXPECT_THROW(MakeConfusionSplit(labels, {1}), InvalidInput);
}

TEST(LoadColumnTest, SkipsHeaderAndRejectsGarbage) {
  const std::string path = ::testing::TempDir() + "/column.csv";
  {
    std::ofstream out(path);
    out << "prediction\n1\n0\n1\n\n";
  }
  EXPECT_EQ(LoadColumn(path), (std::vector<double>{1, 0, 1}));
  {
    std::ofstream out(path);
    out << "1\nbad\n";
  }
  EXPECT_THROW(LoadColumn(path), InvalidInput);
  std::remove(path.c_str());
  EXPECT_THROW(LoadColumn(path), InvalidInput);
}

TEST(BundledDataTest, DiabetesLoads) {
  const Dataset ds = LoadCsv(std::string(XAISELECT_DATA_DIR) + "/diabetes.csv", "target", Task::kRegression);
  EXPECT_EQ(ds.n(), 442u);
  EXPECT_EQ(ds.d(), 10u);
}

}  // namespace
}  // namespace xaiselect::data

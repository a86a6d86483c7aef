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


#include "xaiselect/hyperparameters.h"

#include <gtest/gtest.h>

#include "xaiselect/common.h"

namespace xaiselect {
namespace {

HyperparameterSpace Space() {
  return HyperparameterSpace({ParamDescriptor::Categorical("kernel", {"gaussian", "linear"}, "gaussian"),
                              ParamDescriptor::Continuous("sigma", 0.01, 100.0, 2.0, true),
                              ParamDescriptor::Integer("k", 1, 20, 8)});
}

TEST(HyperparameterSpaceTest, DefaultsAreInDomain) {
  const auto space = Space();
  const Assignment d = space.Defaults();
  EXPECT_NO_THROW(space.Check(d));
  EXPECT_EQ(d.Choice("kernel"), "gaussian");
  EXPECT_DOUBLE_EQ(d.Real("sigma"), 2.0);
  EXPECT_EQ(d.Int("k"), 8);
}

TEST(HyperparameterSpaceTest, CheckRejectsOutOfDomainValues) {
  const auto space = Space();
  Assignment a = space.Defaults();
  a.Set("k", std::int64_t{21});
  EXPECT_THROW(space.Check(a), InvalidInput);
  a = space.Defaults();
  a.Set("k", 3.0);
  EXPECT_THROW(space.Check(a), InvalidInput);
  a = space.Defaults();
  a.Set("kernel", std::string("poly"));
  EXPECT_THROW(space.Check(a), InvalidInput);
  a = space.Defaults();
  a.Set("extra", std::int64_t{1});
  EXPECT_THROW(space.Check(a), InvalidInput);
}

TEST(HyperparameterSpaceTest, ConstructorRejectsMalformedDescriptors) {
  EXPECT_THROW(HyperparameterSpace({ParamDescriptor::Integer("k", 1, 5, 8)}), InvalidInput);
  EXPECT_THROW(HyperparameterSpace({ParamDescriptor::Continuous("s", 0.0, 1.0, 0.5, true)}), InvalidInput);
  EXPECT_THROW(HyperparameterSpace({ParamDescriptor::Integer("k", 1, 5, 2), ParamDescriptor::Integer("k", 1, 5, 2)}),
               InvalidInput);
  EXPECT_THROW(HyperparameterSpace({ParamDescriptor::Categorical("c", {}, "")}), InvalidInput);
  EXPECT_THROW(HyperparameterSpace({ParamDescriptor::Integer("k", 5, 5, 5)}), InvalidInput);
}

TEST(HyperparameterSpaceTest, ParseFillsDefaultsAndValidates) {
  const auto space = Space();
  const Assignment a = space.Parse("k=3,kernel=linear");
  EXPECT_EQ(a.Int("k"), 3);
  EXPECT_EQ(a.Choice("kernel"), "linear");
  EXPECT_DOUBLE_EQ(a.Real("sigma"), 2.0);
  EXPECT_EQ(a.entries()[0].first, "kernel");
  EXPECT_EQ(space.Parse(""), space.Defaults());
  EXPECT_THROW(space.Parse("k=0"), InvalidInput);
  EXPECT_THROW(space.Parse("k=two"), InvalidInput);
  EXPECT_THROW(space.Parse("gamma=1"), InvalidInput);
  EXPECT_THROW(space.Parse("k"), InvalidInput);
  EXPECT_THROW(space.Parse("sigma=1e9"), InvalidInput);
}

TEST(FormatTest, ValuesJoinInSpaceOrder) {
  const auto space = Space();
  EXPECT_EQ(FormatValues(space.Parse("sigma=11.9,k=11")), "gaussian;11.90;11");
  EXPECT_EQ(FormatValue(ParamValue{std::int64_t{5392}}), "5392");
}

TEST(FormatTest, DomainStrings) {
  const auto space = Space();
  EXPECT_EQ(space.Find("k").DomainString(), "integer[1, 20]");
  EXPECT_EQ(space.Find("kernel").DomainString(), "categorical{gaussian, linear}");
  EXPECT_EQ(space.Find("sigma").DomainString(), "continuous[0.01, 100] log");
}

}  // namespace
}  // namespace xaiselect

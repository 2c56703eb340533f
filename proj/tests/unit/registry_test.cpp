// Copyright 2026 The LayerBFT Authors
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

#include <gtest/gtest.h>

#include <random>

#include "layerbft/registry/workflow.hpp"

namespace layerbft {
namespace {

class RegistryTest : public ::testing::Test
{
protected:
  Registry      registry_ = MakeSupplyChainRegistry();
  AppState      state_;
  std::uint64_t nonce_ = 0;

  ServiceResponse Run(ServiceRequest const &req)
  {
    auto ex = registry_.Execute(req, state_);
    state_  = ex.state;
    return ex.response;
  }

  std::string Start(std::string const &pkg, std::uint64_t n = 1)
  {
    EXPECT_TRUE(Run(CreatePackageRequest("c", ++nonce_, pkg, {"x", "y"})).ok());
    auto req       = StartSessionRequest("c", ++nonce_, pkg);
    req.session_id = MakeSessionId("l2-0", n);
    EXPECT_TRUE(Run(req).ok());
    return *req.session_id;
  }

  ServiceResponse Step(std::string_view route, std::string const &sid)
  {
    return Run(StageRequest(route, "c", ++nonce_, sid));
  }
};

TEST_F(RegistryTest, FullWorkflowReachesLabeled)
{
  auto sid = Start("pkg-1");
  for (std::size_t i = 1; i < kWorkflowSteps.size(); ++i)
  {
    auto r = Step(kWorkflowSteps[i].first, sid);
    ASSERT_TRUE(r.ok()) << kWorkflowSteps[i].first;
    EXPECT_EQ(state_.FindSession(sid)->stage, kWorkflowSteps[i].second);
  }
  auto const *s = state_.FindSession(sid);
  EXPECT_EQ(s->operation_count, 5u);
  EXPECT_EQ(state_.courier_assignments.at(sid), AssignCourier(sid, WorkflowConfig{}.couriers));
  EXPECT_FALSE(s->label.empty());
}

TEST_F(RegistryTest, LabelBeforeScanIsStageOrderViolation)
{
  auto sid    = Start("pkg-1");
  auto before = state_;
  auto r      = Step(kRouteLabel, sid);
  EXPECT_EQ(r.error(), ErrorCode::kStageOrder);
  EXPECT_EQ(r.body.at("stage").AsString(), "Started");
  EXPECT_EQ(state_, before);
}

TEST_F(RegistryTest, ReplayedNonceIsRejected)
{
  auto sid = Start("pkg-1");
  auto req = StageRequest(kRouteScan, "c", ++nonce_, sid);
  EXPECT_TRUE(Run(req).ok());
  req.route = std::string{kRouteValidate};
  EXPECT_EQ(Run(req).error(), ErrorCode::kReplay);
}

TEST_F(RegistryTest, ForgedOriginSignatureFailsValidation)
{
  auto bad = CreatePackageRequest("c", ++nonce_, "pkg-f", {"x"}, "supplier-1",
                                  SignPackage("supplier-1", "pkg-f", {"y"}));
  ASSERT_TRUE(Run(bad).ok());
  auto start       = StartSessionRequest("c", ++nonce_, "pkg-f");
  start.session_id = MakeSessionId("l2-0", 1);
  ASSERT_TRUE(Run(start).ok());
  ASSERT_TRUE(Step(kRouteScan, *start.session_id).ok());
  EXPECT_EQ(Step(kRouteValidate, *start.session_id).error(), ErrorCode::kInvalidSignature);

  auto unknown = CreatePackageRequest("c", ++nonce_, "pkg-u", {"x"}, "supplier-9");
  ASSERT_TRUE(Run(unknown).ok());
  start            = StartSessionRequest("c", ++nonce_, "pkg-u");
  start.session_id = MakeSessionId("l2-0", 2);
  ASSERT_TRUE(Run(start).ok());
  ASSERT_TRUE(Step(kRouteScan, *start.session_id).ok());
  EXPECT_EQ(Step(kRouteValidate, *start.session_id).error(), ErrorCode::kInvalidSignature);
}

TEST_F(RegistryTest, PreconditionErrors)
{
  EXPECT_TRUE(Run(CreatePackageRequest("c", 1, "pkg-1", {"x"})).ok());
  EXPECT_EQ(Run(CreatePackageRequest("c", 2, "pkg-1", {"x"})).error(), ErrorCode::kDuplicate);

  auto orphan       = StartSessionRequest("c", 3, "pkg-none");
  orphan.session_id = "l2-0#9";
  EXPECT_EQ(Run(orphan).error(), ErrorCode::kNotFound);

  EXPECT_EQ(Run(StartSessionRequest("c", 4, "pkg-1")).error(), ErrorCode::kBadRequest);
  EXPECT_EQ(Step(kRouteScan, "l2-0#404").error(), ErrorCode::kNotFound);

  ServiceRequest missing;
  missing.route = std::string{kRouteCreatePackage};
  EXPECT_EQ(Run(missing).error(), ErrorCode::kBadRequest);

  ServiceRequest nowhere;
  nowhere.route = "/nowhere";
  EXPECT_EQ(Run(nowhere).error(), ErrorCode::kNotFound);
}

TEST_F(RegistryTest, InactiveSessionRejectsStages)
{
  auto sid = Start("pkg-1");
  auto rec = *state_.FindSession(sid);
  rec.status = SessionStatus::kAborted;
  ApplyWrite(state_, {SessionKey(sid), ToValue(rec)});
  EXPECT_EQ(Step(kRouteScan, sid).error(), ErrorCode::kSessionInactive);
}

TEST(Registry, DuplicateRouteRegistrationThrows)
{
  auto r = MakeSupplyChainRegistry();
  EXPECT_THROW(r.Register(std::string{kRouteScan}, Handler{"x@1", {}, false}), RegistryError);
  EXPECT_THROW(r.Resolve("/missing"), RouteNotFound);
  EXPECT_EQ(r.size(), 6u);
  EXPECT_EQ(Encode(r.RouteTable()), Encode(MakeSupplyChainRegistry().RouteTable()));
}

// Random walks over valid and invalid requests. For every (request, state)
// pair: execution is repeatable, OK results equal state + delta, rejections
// leave state untouched, and stages only ever move forward by one.
TEST(RegistryProperties, DeterminismPurityAndMonotoneStages)
{
  auto            registry = MakeSupplyChainRegistry();
  std::mt19937_64 rng(1000);
  AppState        state;
  std::vector<std::string> sessions;
  std::uint64_t   nonce = 0;
  int             pairs = 0;
  int             oks   = 0;

  std::array<std::string_view, 4> const stages = {kRouteScan, kRouteValidate, kRouteQualityCheck,
                                                  kRouteLabel};
  while (pairs < 1000)
  {
    ServiceRequest req;
    auto           pick = rng() % 10;
    auto           pkg  = "pkg-" + std::to_string(rng() % 40);
    if (pick < 2)
    {
      req = CreatePackageRequest("c", ++nonce, pkg, {"a"});
    }
    else if (pick < 4)
    {
      req            = StartSessionRequest("c", ++nonce, pkg);
      req.session_id = MakeSessionId("l2-" + std::to_string(rng() % 2), rng() % 60);
    }
    else if (!sessions.empty())
    {
      auto sid   = sessions[rng() % sessions.size()];
      auto route = stages[rng() % stages.size()];
      // Occasionally reuse an old nonce.
      auto n = rng() % 8 == 0 ? nonce / 2 : ++nonce;
      req    = StageRequest(route, "c", n, sid);
    }
    else
    {
      continue;
    }
    ++pairs;

    auto a = registry.Execute(req, state);
    auto b = registry.Execute(req, state);
    ASSERT_EQ(a.response, b.response);
    ASSERT_EQ(a.state, b.state);
    if (!a.response.ok())
    {
      ASSERT_TRUE(a.response.state_delta.empty());
      ASSERT_EQ(a.state, state);
      continue;
    }
    ++oks;
    ASSERT_EQ(a.state, ApplyDelta(state, a.response.state_delta));
    if (req.session_id && req.route != kRouteStartSession)
    {
      auto before = static_cast<int>(state.FindSession(*req.session_id)->stage);
      auto after  = static_cast<int>(a.state.FindSession(*req.session_id)->stage);
      ASSERT_EQ(after, before + 1);
    }
    if (req.route == kRouteStartSession)
    {
      sessions.push_back(*req.session_id);
    }
    state = std::move(a.state);
  }
  EXPECT_GT(oks, 100);
}

}  // namespace
}  // namespace layerbft

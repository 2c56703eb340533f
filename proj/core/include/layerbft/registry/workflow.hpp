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

#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "layerbft/registry/registry.hpp"

namespace layerbft {

// Route templates of the supply-chain application. Session-scoped routes
// carry the session id in ServiceRequest::session_id, not in the route.
inline constexpr std::string_view kRouteCreatePackage = "/packages";
inline constexpr std::string_view kRouteStartSession  = "/sessions";
inline constexpr std::string_view kRouteScan          = "/sessions/{id}/scan";
inline constexpr std::string_view kRouteValidate      = "/sessions/{id}/validate";
inline constexpr std::string_view kRouteQualityCheck  = "/sessions/{id}/quality-check";
inline constexpr std::string_view kRouteLabel         = "/sessions/{id}/label";

/// The five session stages in order, as (route, stage reached).
inline constexpr std::array<std::pair<std::string_view, Stage>, 5> kWorkflowSteps = {{
    {kRouteStartSession, Stage::kStarted},
    {kRouteScan, Stage::kScanned},
    {kRouteValidate, Stage::kValidated},
    {kRouteQualityCheck, Stage::kQualityChecked},
    {kRouteLabel, Stage::kLabeled},
}};

struct WorkflowConfig
{
  /// Suppliers whose keys (SupplierKey) are trusted for origin signatures.
  std::set<std::string, std::less<>> suppliers = {"supplier-1", "supplier-2"};
  std::vector<std::string>           couriers  = {"courier-north", "courier-south",
                                                  "courier-east", "courier-west"};
};

/// Registers the six supply-chain handlers. Every node must build its
/// registry from an equal WorkflowConfig.
Registry MakeSupplyChainRegistry(WorkflowConfig const &config = {});

/// Deterministic courier choice: first 8 bytes of SHA-256(session_id), big
/// endian, modulo the courier count.
std::string AssignCourier(std::string_view session_id, std::vector<std::string> const &couriers);

// Request builders used by clients, the bench harness and tests.
ServiceRequest CreatePackageRequest(std::string client_id, std::uint64_t nonce,
                                    std::string package_id, std::vector<std::string> contents,
                                    std::string supplier_id = "supplier-1",
                                    std::optional<Authenticator> signature = std::nullopt);
ServiceRequest StartSessionRequest(std::string client_id, std::uint64_t nonce,
                                   std::string package_id);
ServiceRequest StageRequest(std::string_view route, std::string client_id, std::uint64_t nonce,
                            std::string session_id, Document body = {});

}  // namespace layerbft

// Copyright 2026 The imsibc Authors
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

#include "imsibc/core/errors.h"

#include <array>
#include <string>
#include <utility>

#include "absl/strings/cord.h"

namespace imsibc {
namespace {

constexpr char kReasonPayloadUrl[] = "type.imsibc/error-reason";

constexpr std::array<std::pair<ErrorReason, std::string_view>, 23> kNames = {{
    {ErrorReason::kNone, "none"},
    {ErrorReason::kInvalidArgument, "invalid-argument"},
    {ErrorReason::kMalformedInput, "malformed-input"},
    {ErrorReason::kConfigInvalid, "config-invalid"},
    {ErrorReason::kInjectionOutOfRange, "injection-out-of-range"},
    {ErrorReason::kRngFailure, "rng-failure"},
    {ErrorReason::kKeyMissing, "key-missing"},
    {ErrorReason::kIdentityPoint, "identity-point"},
    {ErrorReason::kEmptyBatch, "empty-batch"},
    {ErrorReason::kSignatureInvalid, "signature-invalid"},
    {ErrorReason::kUnwrapFailed, "unwrap-failed"},
    {ErrorReason::kDecryptFailed, "decrypt-failed"},
    {ErrorReason::kUnknownCouple, "unknown-couple"},
    {ErrorReason::kDuplicateCouple, "duplicate-couple"},
    {ErrorReason::kReplay, "replay"},
    {ErrorReason::kRandMismatch, "rand-mismatch"},
    {ErrorReason::kBadState, "bad-state"},
    {ErrorReason::kUnknownBtid, "unknown-btid"},
    {ErrorReason::kNafNotAuthorized, "naf-not-authorized"},
    {ErrorReason::kServiceDenied, "service-denied"},
    {ErrorReason::kGbaNotSupported, "gba-not-supported"},
    {ErrorReason::kTransport, "transport"},
    {ErrorReason::kIo, "io"},
}};

absl::StatusCode CodeFor(ErrorReason reason) {
  switch (CategoryOf(reason)) {
    case ErrorCategory::kNone:
      return absl::StatusCode::kOk;
    case ErrorCategory::kUsage:
      return absl::StatusCode::kInvalidArgument;
    case ErrorCategory::kCrypto:
      return absl::StatusCode::kUnauthenticated;
    case ErrorCategory::kProtocol:
      return absl::StatusCode::kPermissionDenied;
    case ErrorCategory::kTransport:
      return absl::StatusCode::kUnavailable;
    case ErrorCategory::kIo:
      return absl::StatusCode::kNotFound;
  }
  return absl::StatusCode::kUnknown;
}

}  // namespace

std::string_view ReasonName(ErrorReason reason) {
  for (const auto& [r, name] : kNames) {
    if (r == reason) return name;
  }
  return "unknown";
}

std::optional<ErrorReason> ReasonFromName(std::string_view name) {
  for (const auto& [r, n] : kNames) {
    if (n == name) return r;
  }
  return std::nullopt;
}

ErrorCategory CategoryOf(ErrorReason reason) {
  switch (reason) {
    case ErrorReason::kNone:
      return ErrorCategory::kNone;
    case ErrorReason::kInvalidArgument:
    case ErrorReason::kMalformedInput:
    case ErrorReason::kConfigInvalid:
    case ErrorReason::kInjectionOutOfRange:
      return ErrorCategory::kUsage;
    case ErrorReason::kRngFailure:
    case ErrorReason::kKeyMissing:
    case ErrorReason::kIdentityPoint:
    case ErrorReason::kEmptyBatch:
    case ErrorReason::kSignatureInvalid:
    case ErrorReason::kUnwrapFailed:
    case ErrorReason::kDecryptFailed:
      return ErrorCategory::kCrypto;
    case ErrorReason::kUnknownCouple:
    case ErrorReason::kDuplicateCouple:
    case ErrorReason::kReplay:
    case ErrorReason::kRandMismatch:
    case ErrorReason::kBadState:
    case ErrorReason::kUnknownBtid:
    case ErrorReason::kNafNotAuthorized:
    case ErrorReason::kServiceDenied:
    case ErrorReason::kGbaNotSupported:
      return ErrorCategory::kProtocol;
    case ErrorReason::kTransport:
      return ErrorCategory::kTransport;
    case ErrorReason::kIo:
      return ErrorCategory::kIo;
  }
  return ErrorCategory::kUsage;
}

absl::Status MakeError(ErrorReason reason, std::string_view message) {
  absl::Status status(CodeFor(reason),
                      std::string(ReasonName(reason)) + ": " +
                          std::string(message));
  const std::string_view name = ReasonName(reason);
  status.SetPayload(kReasonPayloadUrl,
                    absl::Cord(absl::string_view(name.data(), name.size())));
  return status;
}

ErrorReason ReasonOf(const absl::Status& status) {
  if (status.ok()) return ErrorReason::kNone;
  const auto payload = status.GetPayload(kReasonPayloadUrl);
  if (!payload.has_value()) return ErrorReason::kInvalidArgument;
  return ReasonFromName(std::string(*payload))
      .value_or(ErrorReason::kInvalidArgument);
}

}  // namespace imsibc

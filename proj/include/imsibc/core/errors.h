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

// Error taxonomy shared by every layer. Errors travel as absl::Status; the
// machine-readable reason rides along as a status payload so that protocol
// outcomes, simulator reports and CLI exit codes can all be derived from it.

#ifndef IMSIBC_CORE_ERRORS_H_
#define IMSIBC_CORE_ERRORS_H_

#include <optional>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace imsibc {

enum class ErrorReason {
  kNone,
  // Input validation.
  kInvalidArgument,
  kMalformedInput,
  kConfigInvalid,
  kInjectionOutOfRange,
  // Cryptographic failures. Never retried.
  kRngFailure,
  kKeyMissing,
  kIdentityPoint,
  kEmptyBatch,
  kSignatureInvalid,
  kUnwrapFailed,
  kDecryptFailed,
  // Protocol failures.
  kUnknownCouple,
  kDuplicateCouple,
  kReplay,
  kRandMismatch,
  kBadState,
  kUnknownBtid,
  kNafNotAuthorized,
  kServiceDenied,
  kGbaNotSupported,
  // Environment.
  kTransport,
  kIo,
};

// Coarse grouping used for exit codes and retry policy.
enum class ErrorCategory { kNone, kUsage, kCrypto, kProtocol, kTransport, kIo };

// Stable kebab-case identifier, e.g. "unknown-couple".
std::string_view ReasonName(ErrorReason reason);
std::optional<ErrorReason> ReasonFromName(std::string_view name);
ErrorCategory CategoryOf(ErrorReason reason);

absl::Status MakeError(ErrorReason reason, std::string_view message);

// kNone for OK statuses, kInvalidArgument for statuses that carry no reason.
ErrorReason ReasonOf(const absl::Status& status);

template <typename T>
ErrorReason ReasonOf(const absl::StatusOr<T>& result) {
  return ReasonOf(result.status());
}

}  // namespace imsibc

#define IMSIBC_STATUS_CONCAT_INNER_(a, b) a##b
#define IMSIBC_STATUS_CONCAT_(a, b) IMSIBC_STATUS_CONCAT_INNER_(a, b)

#define IMSIBC_RETURN_IF_ERROR(expr)            \
  do {                                          \
    const ::absl::Status _imsibc_st = (expr);   \
    if (!_imsibc_st.ok()) return _imsibc_st;    \
  } while (0)

#define IMSIBC_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                  \
  if (!tmp.ok()) return tmp.status();                 \
  lhs = std::move(*tmp)

#define IMSIBC_ASSIGN_OR_RETURN(lhs, expr) \
  IMSIBC_ASSIGN_OR_RETURN_IMPL_(           \
      IMSIBC_STATUS_CONCAT_(_imsibc_or_, __LINE__), lhs, expr)

#endif  // IMSIBC_CORE_ERRORS_H_

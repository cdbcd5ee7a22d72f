// Copyright 2026 The AuthCred Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace authcred {

// Machine-readable failure codes shared by every module. The string form
// (ErrorCodeName) is the `code` field of HTTP error bodies and CLI output.
enum class ErrorCode {
  // crypto
  kBadSeedLength,
  kBadKeyLength,
  kBadSignatureLength,
  kBadSaltLength,
  kZeroScalar,
  kMalformedElementEncoding,
  kBadEncoding,
  kParseFailure,
  // identity
  kDuplicateDid,
  kInconsistentDocument,
  kNotFound,
  kAnchorMismatch,
  kMalformedDid,
  // credentials
  kUnknownIssuerDid,
  kIssuerKeyMismatch,
  kDuplicateClaimName,
  kBadClaimName,
  kEmptyClaims,
  kBadValidity,
  kInvalidSignature,
  kDuplicateAnchor,
  kUnknownClaimName,
  kChallengeMismatch,
  kCommitmentOpenFailure,
  kStaleCredential,
  kInvalidIssuerSignature,
  kInvalidHolderSignature,
  kUnknownSubjectDid,
  // registry
  kUniquenessViolation,
  kEmptyBatch,
  kBatchTooLarge,
  kEntryNotFound,
  kBlockNotFound,
  kCorruptLedger,
  kIoError,
  // workflow
  kInvalidAuthorCredential,
  kUnresolvableCoauthor,
  kDuplicateCoauthor,
  kUnknownRole,
  kNotACoauthor,
  kBadConsentSignature,
  kWrongState,
  kPastDeadline,
  kAlreadyResolved,
  kAlertNotFound,
  kReviewerIsAuthor,
  kMissingExpertiseClaim,
  kTranscriptInvalid,
  kCoiNotClear,
  kNoReviews,
  kUnknownSubmission,
  kUnknownAssignment,
  // coi
  kEmptyElement,
  kConflictSetTooLarge,
  kEmptyJournalSet,
  kSaltReuse,
  kIncompleteTranscript,
  // publication
  kNotAccepted,
  kMissingConsentRef,
  // node
  kCorruptLedgerAtStartup,
  kPortInUse,
  kInvalidConfig,
  kWalletLocked,
  kUnknownWalletDid,
  kBadRequest,
};

std::string_view ErrorCodeName(ErrorCode code);
std::optional<ErrorCode> ErrorCodeFromName(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        detail_(message) {}
  explicit Error(ErrorCode code) : Error(code, std::string(ErrorCodeName(code))) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

#define AUTHCRED_ENFORCE(cond, code, msg) \
  do {                                    \
    if (!(cond)) {                        \
      throw ::authcred::Error((code), (msg)); \
    }                                     \
  } while (false)

}  // namespace authcred

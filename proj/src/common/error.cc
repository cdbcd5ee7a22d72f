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

#include "authcred/common/error.h"

#include <utility>

namespace authcred {

namespace {

constexpr std::pair<ErrorCode, std::string_view> kNames[] = {
    {ErrorCode::kBadSeedLength, "BadSeedLength"},
    {ErrorCode::kBadKeyLength, "BadKeyLength"},
    {ErrorCode::kBadSignatureLength, "BadSignatureLength"},
    {ErrorCode::kBadSaltLength, "BadSaltLength"},
    {ErrorCode::kZeroScalar, "ZeroScalar"},
    {ErrorCode::kMalformedElementEncoding, "MalformedElementEncoding"},
    {ErrorCode::kBadEncoding, "BadEncoding"},
    {ErrorCode::kParseFailure, "ParseFailure"},
    {ErrorCode::kDuplicateDid, "DuplicateDid"},
    {ErrorCode::kInconsistentDocument, "InconsistentDocument"},
    {ErrorCode::kNotFound, "NotFound"},
    {ErrorCode::kAnchorMismatch, "AnchorMismatch"},
    {ErrorCode::kMalformedDid, "MalformedDid"},
    {ErrorCode::kUnknownIssuerDid, "UnknownIssuerDid"},
    {ErrorCode::kIssuerKeyMismatch, "IssuerKeyMismatch"},
    {ErrorCode::kDuplicateClaimName, "DuplicateClaimName"},
    {ErrorCode::kBadClaimName, "BadClaimName"},
    {ErrorCode::kEmptyClaims, "EmptyClaims"},
    {ErrorCode::kBadValidity, "BadValidity"},
    {ErrorCode::kInvalidSignature, "InvalidSignature"},
    {ErrorCode::kDuplicateAnchor, "DuplicateAnchor"},
    {ErrorCode::kUnknownClaimName, "UnknownClaimName"},
    {ErrorCode::kChallengeMismatch, "ChallengeMismatch"},
    {ErrorCode::kCommitmentOpenFailure, "CommitmentOpenFailure"},
    {ErrorCode::kStaleCredential, "StaleCredential"},
    {ErrorCode::kInvalidIssuerSignature, "InvalidIssuerSignature"},
    {ErrorCode::kInvalidHolderSignature, "InvalidHolderSignature"},
    {ErrorCode::kUnknownSubjectDid, "UnknownSubjectDid"},
    {ErrorCode::kUniquenessViolation, "UniquenessViolation"},
    {ErrorCode::kEmptyBatch, "EmptyBatch"},
    {ErrorCode::kBatchTooLarge, "BatchTooLarge"},
    {ErrorCode::kEntryNotFound, "EntryNotFound"},
    {ErrorCode::kBlockNotFound, "BlockNotFound"},
    {ErrorCode::kCorruptLedger, "CorruptLedger"},
    {ErrorCode::kIoError, "IoError"},
    {ErrorCode::kInvalidAuthorCredential, "InvalidAuthorCredential"},
    {ErrorCode::kUnresolvableCoauthor, "UnresolvableCoauthor"},
    {ErrorCode::kDuplicateCoauthor, "DuplicateCoauthor"},
    {ErrorCode::kUnknownRole, "UnknownRole"},
    {ErrorCode::kNotACoauthor, "NotACoauthor"},
    {ErrorCode::kBadConsentSignature, "BadConsentSignature"},
    {ErrorCode::kWrongState, "WrongState"},
    {ErrorCode::kPastDeadline, "PastDeadline"},
    {ErrorCode::kAlreadyResolved, "AlreadyResolved"},
    {ErrorCode::kAlertNotFound, "AlertNotFound"},
    {ErrorCode::kReviewerIsAuthor, "ReviewerIsAuthor"},
    {ErrorCode::kMissingExpertiseClaim, "MissingExpertiseClaim"},
    {ErrorCode::kTranscriptInvalid, "TranscriptInvalid"},
    {ErrorCode::kCoiNotClear, "CoiNotClear"},
    {ErrorCode::kNoReviews, "NoReviews"},
    {ErrorCode::kUnknownSubmission, "UnknownSubmission"},
    {ErrorCode::kUnknownAssignment, "UnknownAssignment"},
    {ErrorCode::kEmptyElement, "EmptyElement"},
    {ErrorCode::kConflictSetTooLarge, "ConflictSetTooLarge"},
    {ErrorCode::kEmptyJournalSet, "EmptyJournalSet"},
    {ErrorCode::kSaltReuse, "SaltReuse"},
    {ErrorCode::kIncompleteTranscript, "IncompleteTranscript"},
    {ErrorCode::kNotAccepted, "NotAccepted"},
    {ErrorCode::kMissingConsentRef, "MissingConsentRef"},
    {ErrorCode::kCorruptLedgerAtStartup, "CorruptLedgerAtStartup"},
    {ErrorCode::kPortInUse, "PortInUse"},
    {ErrorCode::kInvalidConfig, "InvalidConfig"},
    {ErrorCode::kWalletLocked, "WalletLocked"},
    {ErrorCode::kUnknownWalletDid, "UnknownWalletDid"},
    {ErrorCode::kBadRequest, "BadRequest"},
};

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "Unknown";
}

std::optional<ErrorCode> ErrorCodeFromName(std::string_view name) {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

}  // namespace authcred

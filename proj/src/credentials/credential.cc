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

#include "authcred/credentials/credential.h"

#include "authcred/common/error.h"

namespace authcred::credentials {

using identity::Did;
using registry::EntryKind;

namespace {

Bytes ClaimEncoding(std::string_view name, std::string_view value) {
  Bytes out(name.begin(), name.end());
  out.push_back(0x00);
  out.insert(out.end(), value.begin(), value.end());
  return out;
}

bool ValidClaimName(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

Bytes Tagged(std::string_view tag, const Json& payload) {
  std::string text = Canonicalize(payload);
  Bytes out(tag.begin(), tag.end());
  out.insert(out.end(), text.begin(), text.end());
  return out;
}

Json CommitmentsJson(const std::vector<crypto::Commitment>& commitments) {
  Json list = Json::array();
  for (const auto& c : commitments) list.push_back(Base64Encode(c.digest.span()));
  return list;
}

std::vector<crypto::Commitment> CommitmentsFromJson(const Json& list) {
  std::vector<crypto::Commitment> out;
  for (const auto& c : list) {
    out.push_back({crypto::Digest::FromBytes(Base64Decode(c.get<std::string>()))});
  }
  return out;
}

Json PayloadJson(const Did& issuer, const Did& subject,
                 const std::vector<crypto::Commitment>& commitments,
                 int64_t issued_at, int64_t expires_at) {
  return {{"issuer", issuer.ToString()},
          {"subject", subject.ToString()},
          {"commitments", CommitmentsJson(commitments)},
          {"issued_at", issued_at},
          {"expires_at", expires_at}};
}

template <typename Fn>
auto Parsing(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseFailure, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseFailure) throw;
    throw Error(ErrorCode::kParseFailure, e.detail());
  }
}

bool SignatureValid(const identity::DidDirectory& directory, const Did& signer,
                    ByteSpan message, const crypto::Signature& sig) {
  try {
    identity::DidDocument doc = directory.Resolve(signer);
    return crypto::Verify(doc.verification_key, message, sig);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

crypto::Commitment Claim::Commitment() const {
  return crypto::Commit(ClaimEncoding(name, value), salt);
}

Json VerifiableCredential::SignedPayloadJson() const {
  return PayloadJson(issuer_did, subject_did, claim_commitments, issued_at,
                     expires_at);
}

Json VerifiableCredential::SkeletonJson() const {
  Json j = SignedPayloadJson();
  j["issuer_signature"] = Base64Encode(issuer_signature.span());
  return j;
}

Json VerifiableCredential::ToJson() const {
  Json j = SkeletonJson();
  Json list = Json::array();
  for (const auto& c : claims) {
    list.push_back({{"name", c.name}, {"value", c.value}, {"salt", Base64Encode(c.salt)}});
  }
  j["claims"] = std::move(list);
  return j;
}

VerifiableCredential VerifiableCredential::FromJson(const Json& j) {
  return Parsing([&] {
    VerifiableCredential vc;
    vc.issuer_did = Did::Parse(j.at("issuer").get<std::string>());
    vc.subject_did = Did::Parse(j.at("subject").get<std::string>());
    vc.claim_commitments = CommitmentsFromJson(j.at("commitments"));
    vc.issued_at = j.at("issued_at").get<int64_t>();
    vc.expires_at = j.at("expires_at").get<int64_t>();
    vc.issuer_signature = crypto::Signature::FromBytes(
        Base64Decode(j.at("issuer_signature").get<std::string>()));
    if (j.contains("claims")) {
      for (const auto& c : j.at("claims")) {
        vc.claims.push_back({c.at("name").get<std::string>(),
                             c.at("value").get<std::string>(),
                             crypto::SaltFromBytes(
                                 Base64Decode(c.at("salt").get<std::string>()))});
      }
    }
    return vc;
  });
}

crypto::Digest VerifiableCredential::AnchorDigest() const {
  return crypto::TaggedHash(crypto::tags::kCredential, Canonicalize(SkeletonJson()));
}

VerifiableCredential IssueCredential(
    const identity::DidDirectory& directory, const crypto::KeyPair& issuer_keypair,
    const Did& issuer_did, const Did& subject_did,
    const std::vector<std::pair<std::string, std::string>>& claims,
    Validity validity, Rng& rng) {
  AUTHCRED_ENFORCE(!claims.empty(), ErrorCode::kEmptyClaims, "no claims");
  AUTHCRED_ENFORCE(validity.expires_at > validity.issued_at, ErrorCode::kBadValidity,
                   "expires_at must follow issued_at");
  std::set<std::string> names;
  for (const auto& [name, value] : claims) {
    AUTHCRED_ENFORCE(ValidClaimName(name), ErrorCode::kBadClaimName,
                     "claim name '" + name + "' must match [a-z0-9_-]+");
    AUTHCRED_ENFORCE(names.insert(name).second, ErrorCode::kDuplicateClaimName,
                     "claim '" + name + "' appears twice");
  }
  identity::DidDocument issuer_doc;
  try {
    issuer_doc = directory.Resolve(issuer_did);
  } catch (const Error& e) {
    throw Error(ErrorCode::kUnknownIssuerDid, e.detail());
  }
  AUTHCRED_ENFORCE(issuer_doc.verification_key == issuer_keypair.public_key,
                   ErrorCode::kIssuerKeyMismatch,
                   "signing key is not the key registered for " + issuer_did.ToString());

  VerifiableCredential vc;
  vc.issuer_did = issuer_did;
  vc.subject_did = subject_did;
  vc.issued_at = validity.issued_at;
  vc.expires_at = validity.expires_at;
  for (const auto& [name, value] : claims) {
    Claim claim{name, value, rng.RandomArray<32>()};
    vc.claim_commitments.push_back(claim.Commitment());
    vc.claims.push_back(std::move(claim));
  }
  vc.issuer_signature = crypto::Sign(
      issuer_keypair.private_key,
      Tagged(crypto::tags::kCredentialSig, vc.SignedPayloadJson()));
  return vc;
}

bool IssuerSignatureValid(const identity::DidDirectory& directory,
                          const VerifiableCredential& vc) {
  return SignatureValid(directory, vc.issuer_did,
                        Tagged(crypto::tags::kCredentialSig, vc.SignedPayloadJson()),
                        vc.issuer_signature);
}

bool IsAnchored(const registry::Registry& registry, const crypto::Digest& digest) {
  for (const auto& [entry, block] :
       registry.Query(EntryKind::kCredentialAnchor, digest.ToHex())) {
    if (entry.payload_digest == digest) return true;
  }
  return false;
}

registry::LedgerReceipt AnchorCredential(registry::Registry& registry,
                                         const identity::DidDirectory& directory,
                                         const VerifiableCredential& vc) {
  AUTHCRED_ENFORCE(IssuerSignatureValid(directory, vc), ErrorCode::kInvalidSignature,
                   "issuer signature does not verify");
  crypto::Digest digest = vc.AnchorDigest();
  AUTHCRED_ENFORCE(!IsAnchored(registry, digest), ErrorCode::kDuplicateAnchor,
                   "credential " + digest.ToHex() + " already anchored");
  return registry.AppendOne({EntryKind::kCredentialAnchor, digest.ToHex(), digest});
}

Json VerificationReport::ToJson() const {
  return {{"issuer_resolvable", issuer_resolvable},
          {"signature_valid", signature_valid},
          {"anchored", anchored},
          {"within_validity", within_validity},
          {"claims_open", claims_open},
          {"ok", ok()}};
}

VerificationReport VerifyCredential(const registry::Registry& registry,
                                    const identity::DidDirectory& directory,
                                    const VerifiableCredential& vc, int64_t now) {
  VerificationReport report;
  try {
    directory.Resolve(vc.issuer_did);
    report.issuer_resolvable = true;
  } catch (const Error&) {
  }
  report.signature_valid = report.issuer_resolvable && IssuerSignatureValid(directory, vc);
  report.anchored = IsAnchored(registry, vc.AnchorDigest());
  report.within_validity =
      vc.expires_at > vc.issued_at && now >= vc.issued_at && now <= vc.expires_at;
  report.claims_open = !vc.claims.empty() &&
                       vc.claims.size() == vc.claim_commitments.size();
  for (size_t i = 0; report.claims_open && i < vc.claims.size(); ++i) {
    report.claims_open = crypto::OpenCommitment(
        vc.claim_commitments[i], ClaimEncoding(vc.claims[i].name, vc.claims[i].value),
        vc.claims[i].salt);
  }
  return report;
}

Json Presentation::HolderPayloadJson() const {
  Json credential = PayloadJson(issuer_did, subject_did, commitments, issued_at, expires_at);
  credential["issuer_signature"] = Base64Encode(issuer_signature.span());
  Json list = Json::array();
  for (const auto& d : disclosed) {
    list.push_back({{"index", d.index},
                    {"name", d.name},
                    {"value", d.value},
                    {"salt", Base64Encode(d.salt)}});
  }
  return {{"credential", std::move(credential)},
          {"disclosed", std::move(list)},
          {"challenge", Base64Encode(challenge)}};
}

Json Presentation::ToJson() const {
  Json j = HolderPayloadJson();
  j["holder_signature"] = Base64Encode(holder_signature.span());
  return j;
}

Presentation Presentation::FromJson(const Json& j) {
  return Parsing([&] {
    Presentation p;
    VerifiableCredential skeleton = VerifiableCredential::FromJson(j.at("credential"));
    p.issuer_did = skeleton.issuer_did;
    p.subject_did = skeleton.subject_did;
    p.commitments = skeleton.claim_commitments;
    p.issued_at = skeleton.issued_at;
    p.expires_at = skeleton.expires_at;
    p.issuer_signature = skeleton.issuer_signature;
    for (const auto& d : j.at("disclosed")) {
      p.disclosed.push_back(
          {d.at("index").get<size_t>(), d.at("name").get<std::string>(),
           d.at("value").get<std::string>(),
           crypto::SaltFromBytes(Base64Decode(d.at("salt").get<std::string>()))});
    }
    Bytes challenge = Base64Decode(j.at("challenge").get<std::string>());
    AUTHCRED_ENFORCE(challenge.size() == 32, ErrorCode::kParseFailure,
                     "challenge must be 32 bytes");
    std::copy(challenge.begin(), challenge.end(), p.challenge.begin());
    p.holder_signature = crypto::Signature::FromBytes(
        Base64Decode(j.at("holder_signature").get<std::string>()));
    return p;
  });
}

crypto::Digest Presentation::CredentialDigest() const {
  return crypto::TaggedHash(crypto::tags::kCredential,
                            Canonicalize(HolderPayloadJson().at("credential")));
}

Presentation CreatePresentation(const VerifiableCredential& vc,
                                const std::set<std::string>& disclose,
                                const crypto::KeyPair& holder_keypair,
                                const Challenge& challenge) {
  std::set<std::string> known;
  for (const auto& c : vc.claims) known.insert(c.name);
  for (const auto& name : disclose) {
    AUTHCRED_ENFORCE(known.contains(name), ErrorCode::kUnknownClaimName,
                     "credential has no claim '" + name + "'");
  }
  Presentation p;
  p.issuer_did = vc.issuer_did;
  p.subject_did = vc.subject_did;
  p.commitments = vc.claim_commitments;
  p.issued_at = vc.issued_at;
  p.expires_at = vc.expires_at;
  p.issuer_signature = vc.issuer_signature;
  for (size_t i = 0; i < vc.claims.size(); ++i) {
    const Claim& c = vc.claims[i];
    if (disclose.contains(c.name)) p.disclosed.push_back({i, c.name, c.value, c.salt});
  }
  p.challenge = challenge;
  p.holder_signature = crypto::Sign(
      holder_keypair.private_key, Tagged(crypto::tags::kPresentation, p.HolderPayloadJson()));
  return p;
}

DisclosedClaims VerifyPresentation(const identity::DidDirectory& directory,
                                   const Presentation& p,
                                   const Challenge& expected_challenge, int64_t now) {
  AUTHCRED_ENFORCE(p.challenge == expected_challenge, ErrorCode::kChallengeMismatch,
                   "presentation was made for a different challenge");
  identity::DidDocument issuer;
  try {
    issuer = directory.Resolve(p.issuer_did);
  } catch (const Error& e) {
    throw Error(ErrorCode::kUnknownIssuerDid, e.detail());
  }
  Bytes issuer_message = Tagged(
      crypto::tags::kCredentialSig,
      PayloadJson(p.issuer_did, p.subject_did, p.commitments, p.issued_at, p.expires_at));
  AUTHCRED_ENFORCE(crypto::Verify(issuer.verification_key, issuer_message, p.issuer_signature),
                   ErrorCode::kInvalidIssuerSignature,
                   "issuer signature over the credential skeleton does not verify");
  identity::DidDocument holder;
  try {
    holder = directory.Resolve(p.subject_did);
  } catch (const Error& e) {
    throw Error(ErrorCode::kUnknownSubjectDid, e.detail());
  }
  AUTHCRED_ENFORCE(
      crypto::Verify(holder.verification_key,
                     Tagged(crypto::tags::kPresentation, p.HolderPayloadJson()),
                     p.holder_signature),
      ErrorCode::kInvalidHolderSignature, "holder signature does not verify");
  AUTHCRED_ENFORCE(now >= p.issued_at && now <= p.expires_at, ErrorCode::kStaleCredential,
                   "credential not valid at " + std::to_string(now));

  DisclosedClaims out;
  std::set<size_t> seen;
  for (const auto& d : p.disclosed) {
    AUTHCRED_ENFORCE(d.index < p.commitments.size() && seen.insert(d.index).second,
                     ErrorCode::kCommitmentOpenFailure,
                     "disclosed index " + std::to_string(d.index) + " is invalid");
    AUTHCRED_ENFORCE(crypto::OpenCommitment(p.commitments[d.index],
                                            ClaimEncoding(d.name, d.value), d.salt),
                     ErrorCode::kCommitmentOpenFailure,
                     "claim '" + d.name + "' does not open its commitment");
    AUTHCRED_ENFORCE(out.emplace(d.name, d.value).second, ErrorCode::kCommitmentOpenFailure,
                     "claim '" + d.name + "' disclosed twice");
  }
  return out;
}

}  // namespace authcred::credentials

#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace trisect {

using json = nlohmann::json;

/// Thrown for contract violations: bad indices, genus mismatch, invalid
/// certificates, inputs outside a classified range.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Status { Verified, Refuted, Unknown };

inline std::string_view to_string(Status s) {
  switch (s) {
  case Status::Verified:
    return "verified";
  case Status::Refuted:
    return "refuted";
  case Status::Unknown:
    return "unknown";
  }
  return "unknown";
}

inline Status status_from_string(std::string_view s) {
  if (s == "verified")
    return Status::Verified;
  if (s == "refuted")
    return Status::Refuted;
  if (s == "unknown")
    return Status::Unknown;
  throw Error("unknown verdict status '" + std::string(s) + "'");
}

/// Three-valued answer for properties that are only semi-decidable from
/// diagram data. Verified and Refuted verdicts carry a self-contained
/// witness that `replay_witness` can re-check; Unknown carries a reason.
struct Verdict {
  Status status = Status::Unknown;
  std::string reason;
  json witness;

  static Verdict verified(std::string reason, json witness) {
    return {Status::Verified, std::move(reason), std::move(witness)};
  }
  static Verdict refuted(std::string reason, json witness) {
    return {Status::Refuted, std::move(reason), std::move(witness)};
  }
  static Verdict unknown(std::string reason, json witness = nullptr) {
    return {Status::Unknown, std::move(reason), std::move(witness)};
  }

  bool is_verified() const { return status == Status::Verified; }
  bool is_refuted() const { return status == Status::Refuted; }
  bool is_unknown() const { return status == Status::Unknown; }
};

/// Refuted beats Unknown beats Verified.
inline Status weakest(Status a, Status b) {
  auto rank = [](Status s) {
    return s == Status::Refuted ? 0 : s == Status::Unknown ? 1 : 2;
  };
  return rank(a) <= rank(b) ? a : b;
}

} // namespace trisect

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "json.hpp"

namespace rankspan {

using json = nlohmann::json;

inline constexpr std::string_view kVersion = "0.3.0";

enum class Status { Pass, Fail, Vacuous, ExceptionRegime, HypothesisNotMet, BudgetExceeded };

std::string_view to_string(Status s);
Status status_from_string(std::string_view s);

/// Outcome of a check or a suite together with the data needed to re-check it.
///
/// FAIL always carries a "counterexample" object in `witness` that
/// `reproduce_failure` (suites.hpp) can replay.
struct Verdict {
  std::string suite;
  Status status = Status::Pass;
  json params = json::object();
  std::uint64_t seed = 0;
  std::map<std::string, std::uint64_t> counts;
  json witness = json::object();
  std::uint64_t elapsed_ms = 0;

  bool ok() const noexcept { return status == Status::Pass || status == Status::ExceptionRegime; }

  /// Keys are emitted in sorted order, so equal verdicts serialize identically.
  json to_json() const;
  static Verdict from_json(const json& j);
};

}  // namespace rankspan

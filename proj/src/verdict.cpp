#include "rankspan/verdict.hpp"

#include <array>
#include <utility>

#include "rankspan/error.hpp"

namespace rankspan {

namespace {

constexpr std::array<std::pair<Status, std::string_view>, 6> kNames{{
    {Status::Pass, "PASS"},
    {Status::Fail, "FAIL"},
    {Status::Vacuous, "VACUOUS"},
    {Status::ExceptionRegime, "EXCEPTION_REGIME"},
    {Status::HypothesisNotMet, "HYPOTHESIS_NOT_MET"},
    {Status::BudgetExceeded, "BUDGET_EXCEEDED"},
}};

}  // namespace

std::string_view to_string(Status s) {
  for (auto [st, name] : kNames)
    if (st == s) return name;
  return "UNKNOWN";
}

Status status_from_string(std::string_view s) {
  for (auto [st, name] : kNames)
    if (name == s) return st;
  throw InvalidArgument("unknown verdict status '" + std::string(s) + "'");
}

json Verdict::to_json() const {
  json j;
  j["suite"] = suite;
  j["status"] = std::string(to_string(status));
  j["params"] = params;
  j["seed"] = seed;
  j["counts"] = counts;
  j["witness"] = witness;
  j["elapsed_ms"] = elapsed_ms;
  j["version"] = std::string(kVersion);
  return j;
}

Verdict Verdict::from_json(const json& j) {
  Verdict v;
  v.suite = j.at("suite").get<std::string>();
  v.status = status_from_string(j.at("status").get<std::string>());
  v.params = j.value("params", json::object());
  v.seed = j.value("seed", std::uint64_t{0});
  v.counts = j.value("counts", std::map<std::string, std::uint64_t>{});
  v.witness = j.value("witness", json::object());
  v.elapsed_ms = j.value("elapsed_ms", std::uint64_t{0});
  return v;
}

}  // namespace rankspan

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "rmrun/reconstruct.hpp"
#include "rmrun/verify.hpp"

namespace rmrun {

inline constexpr const char* kToolVersion = "1.0.0";

nlohmann::json to_json(const ExperimentReport& rep);
nlohmann::json to_json(const ConditionReport& rep);
nlohmann::json to_json(const Table1Report& rep);

/// Envelope around a command payload: tool version, command echo, seed,
/// ISO-8601 timestamp. Dyadic values inside payloads are canonical
/// "num/den" text.
nlohmann::json make_envelope(const std::string& command, std::optional<std::uint64_t> seed,
                             nlohmann::json payload);

/// Per-trial CSV rows for an experiment report (header included).
std::string experiment_csv(const ExperimentReport& rep);

/// One row per condition margin (header included).
std::string condition_csv(const ConditionReport& rep);

}  // namespace rmrun

#pragma once

// JSON mapping for the public value types. Field names are the stable
// vocabulary of the CLI reports.

#include <json.hpp>

#include "isoconst/spaces.hpp"

namespace isoconst {

nlohmann::json space_to_json(const SpaceSpec& space);
// Strict: unknown keys and keys foreign to the family are rejected.
SpaceSpec space_from_json(const nlohmann::json& doc);

nlohmann::json vector_to_json(const Vector& v);

}  // namespace isoconst

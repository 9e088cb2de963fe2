#pragma once

#include <string>

#include "json.hpp"
#include "minkbill/polytope.hpp"

namespace minkbill {

using Json = nlohmann::ordered_json;

// Rationals travel as strings "p/q" (or "p"); integer JSON numbers are also
// accepted on input. Floating-point numbers are rejected: nothing in the
// pipeline is allowed to round.
Rat rat_from_json(const Json& j);
Json rat_to_json(const Rat& x);

Vec point_from_json(const Json& j);
Json point_to_json(const Vec& v);

// Body files: { "dim": n, "role": "table"|"norm-body",
//              "hrep": [ {"a": [...], "b": ...}, ... ], "vrep": [ [...], ... ] }
// with hrep, vrep, or both present. The reader validates all polytope
// invariants and synchronizes the two representations.
Body body_from_json(const Json& j, BodyRole default_role = BodyRole::table);
Json body_to_json(const Body& b);

Body load_body_file(const std::string& path, BodyRole default_role = BodyRole::table);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace minkbill

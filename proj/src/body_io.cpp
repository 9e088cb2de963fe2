#include "minkbill/body_io.hpp"

#include <fstream>
#include <sstream>

#include "minkbill/error.hpp"

namespace minkbill {

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer() || j.is_number_unsigned())
    return rat_from_string(j.dump());  // exact: dump of an integer is its digits
  fail_input("expected a rational as \"p/q\" string or integer, got: " + j.dump());
}

Json rat_to_json(const Rat& x) { return rat_to_string(x); }

Vec point_from_json(const Json& j) {
  if (!j.is_array()) fail_input("expected a coordinate array, got: " + j.dump());
  Vec v;
  for (const auto& c : j) v.push_back(rat_from_json(c));
  return v;
}

Json point_to_json(const Vec& v) {
  Json j = Json::array();
  for (const Rat& c : v) j.push_back(rat_to_json(c));
  return j;
}

Body body_from_json(const Json& j, BodyRole default_role) {
  if (!j.is_object()) fail_input("body file must contain a JSON object");
  if (!j.contains("dim")) fail_input("body file missing \"dim\"");
  if (!j["dim"].is_number_integer()) fail_input("\"dim\" must be an integer");
  int dim = j["dim"].get<int>();
  BodyRole role = default_role;
  if (j.contains("role")) {
    std::string r = j["role"].get<std::string>();
    if (r == "table")
      role = BodyRole::table;
    else if (r == "norm-body")
      role = BodyRole::norm_body;
    else
      fail_input("unknown role: " + r);
  }
  bool has_h = j.contains("hrep"), has_v = j.contains("vrep");
  if (!has_h && !has_v) fail_input("body file needs \"hrep\" and/or \"vrep\"");
  HPolytope h;
  if (has_h) {
    h.dim = dim;
    for (const auto& row : j["hrep"]) {
      if (!row.is_object() || !row.contains("a") || !row.contains("b"))
        fail_input("hrep rows must look like {\"a\": [...], \"b\": ...}");
      Halfspace hs;
      hs.a = point_from_json(row["a"]);
      hs.b = rat_from_json(row["b"]);
      if (static_cast<int>(hs.a.size()) != dim) fail_input("hrep row has wrong dimension");
      h.rows.push_back(std::move(hs));
    }
  }
  VPolytope v;
  if (has_v) {
    v.dim = dim;
    for (const auto& pt : j["vrep"]) {
      Vec q = point_from_json(pt);
      if (static_cast<int>(q.size()) != dim) fail_input("vrep point has wrong dimension");
      v.vertices.push_back(std::move(q));
    }
  }
  if (has_h && has_v) return Body::from_both(std::move(h), std::move(v), role);
  if (has_h) return Body::from_hrep(std::move(h), role);
  return Body::from_vrep(std::move(v), role);
}

Json body_to_json(const Body& b) {
  Json j;
  j["dim"] = b.dim();
  j["role"] = b.role == BodyRole::table ? "table" : "norm-body";
  Json hrep = Json::array();
  for (const auto& r : b.facets()) {
    Json row;
    row["a"] = point_to_json(r.a);
    row["b"] = rat_to_json(r.b);
    hrep.push_back(std::move(row));
  }
  j["hrep"] = std::move(hrep);
  Json vrep = Json::array();
  for (const auto& q : b.vertices()) vrep.push_back(point_to_json(q));
  j["vrep"] = std::move(vrep);
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_input("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_input("cannot write file: " + path);
  out << content;
}

Body load_body_file(const std::string& path, BodyRole default_role) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    fail_input("JSON parse error in " + path + ": " + e.what());
  }
  return body_from_json(j, default_role);
}

}  // namespace minkbill

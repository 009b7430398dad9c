#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace torsionlab {

/// One certified inequality: `lhs relation rhs`.
struct Check {
  std::string name;
  double lhs = 0.0;
  std::string relation;  // "<=", ">=", "<", ">"
  double rhs = 0.0;
  bool pass = false;
  std::string where;  // optional context, e.g. "n=16"
};

inline Check check_le(std::string name, double lhs, double rhs, std::string where = {}) {
  return {std::move(name), lhs, "<=", rhs, lhs <= rhs, std::move(where)};
}
inline Check check_ge(std::string name, double lhs, double rhs, std::string where = {}) {
  return {std::move(name), lhs, ">=", rhs, lhs >= rhs, std::move(where)};
}
inline Check check_gt(std::string name, double lhs, double rhs, std::string where = {}) {
  return {std::move(name), lhs, ">", rhs, lhs > rhs, std::move(where)};
}
inline Check check_lt(std::string name, double lhs, double rhs, std::string where = {}) {
  return {std::move(name), lhs, "<", rhs, lhs < rhs, std::move(where)};
}

inline void to_json(nlohmann::json& j, const Check& c) {
  j = nlohmann::json{{"name", c.name}, {"lhs", c.lhs}, {"relation", c.relation},
                     {"rhs", c.rhs}, {"pass", c.pass}};
  if (!c.where.empty()) j["where"] = c.where;
}

}  // namespace torsionlab

#pragma once

// JSON encoding of permutations and groups. A permutation is
// {"degree": n, "cycles": "(1 2)(3 4 5)"} with 1-based points.

#include <string>
#include <vector>

#include "group.hpp"
#include "json.hpp"

namespace mindim {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json perm_to_json(const Permutation &p) {
  return {{"degree", p.degree()}, {"cycles", format_cycles(p)}};
}

inline Permutation perm_from_json(const json &j) {
  auto n = j.at("degree").get<std::size_t>();
  return parse_cycles(j.at("cycles").get<std::string>(), n);
}

inline json perms_to_json(const std::vector<Permutation> &v) {
  json a = json::array();
  for (const auto &p : v) a.push_back(perm_to_json(p));
  return a;
}

inline std::vector<Permutation> perms_from_json(const json &a) {
  std::vector<Permutation> v;
  for (const auto &e : a) v.push_back(perm_from_json(e));
  return v;
}

inline json bigint_to_json(const BigInt &x) { return x.str(); }

} // namespace mindim
